// Dyon charges, constants presets, unified field packing, potential containers.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "dyonwave/constants.hpp"
#include "dyonwave/dyon.hpp"
#include "dyonwave/random.hpp"

using namespace dyonwave;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Schwinger quantization examples") {
    const auto a = schwingerQuantum({1, 0}, {0, 0.5});
    REQUIRE(a.n);
    CHECK(*a.n == 1);
    CHECK(a.mu == 0.5);

    const auto b = schwingerQuantum({2, 1}, {1, 2});
    CHECK(b.mu == 3.0);
    REQUIRE(b.n);
    CHECK(*b.n == 6);

    const auto c = schwingerQuantum({1.3, 0.7}, {1.3, 0.7});
    CHECK(c.mu == 0.0);
    CHECK_FALSE(c.quantized());

    CHECK_FALSE(schwingerQuantum({1, 0}, {0, 0.3}).quantized());
    // negative orientation is not a positive integer
    CHECK_FALSE(schwingerQuantum({0, 0.5}, {1, 0}).quantized());
}

TEST_CASE("Schwinger form is antisymmetric") {
    Rng r(11);
    for (int n = 0; n < 1000; ++n) {
        const DyonCharge a{r.uniform(-5, 5), r.uniform(-5, 5)}, b{r.uniform(-5, 5), r.uniform(-5, 5)};
        CHECK(schwingerQuantum(a, b).mu == -schwingerQuantum(b, a).mu);
    }
}

TEST_CASE("Bogomolny mass") {
    CHECK(bogomolnyMass({0, 0}, 3.0) == 0.0);
    CHECK(bogomolnyMass({3, 4}, 1.0) == 5.0);
    CHECK_THAT(bogomolnyMass({1, 1}, 2.0), WithinRel(2.0 * std::sqrt(2.0), 1e-15));
    CHECK_THROWS_AS(bogomolnyMass({1, 1}, -1.0), ContractViolation);

    Rng r(12);
    for (int n = 0; n < 500; ++n) {
        const DyonCharge d{r.uniform(-4, 4), r.uniform(-4, 4)};
        const double u = r.uniform(0, 3);
        CHECK_THAT(bogomolnyMass(d, u), WithinAbs(u * std::abs(std::complex<double>(d.e, d.g)), 1e-14 * (1 + u * 6)));
        const double theta = r.uniform(-3.2, 3.2);
        CHECK_THAT(bogomolnyMass(dualityRotate(d, theta), u), WithinRel(bogomolnyMass(d, u), 1e-14));
    }
}

TEST_CASE("constants presets") {
    const auto n = PhysicalConstants::preset("natural");
    CHECK(n.c == 1.0);
    CHECK(n.hbar == 1.0);
    CHECK(n.eps0 == 1.0);
    CHECK(n.mu0 == 1.0);
    const auto si = PhysicalConstants::preset("si");
    CHECK(si.c == 299792458.0);
    CHECK_THAT(si.eps0 * si.mu0 * si.c * si.c, WithinRel(1.0, 1e-14));
    CHECK_THROWS_AS(PhysicalConstants::preset("gaussian"), ContractViolation);
    CHECK_THROWS_AS(PhysicalConstants(1.0, 1.0, 2.0, 1.0), ContractViolation);
}

TEST_CASE("unified field packing") {
    const Grid g({4, 3, 2}, 0.5);
    const RealVector zero(g, Stagger::collocated);
    CHECK(maxAbs(packUnified(zero, zero).omega) == 0.0);

    Rng r(13);
    RealVector E(g, Stagger::collocated), H(g, Stagger::collocated);
    for (int a = 0; a < 3; ++a)
        for (std::size_t i = 0; i < g.size(); ++i) {
            E[a][i] = r.normal();
            H[a][i] = r.normal();
        }
    const auto [E2, H2] = unpackUnified(packUnified(E, H));
    for (int a = 0; a < 3; ++a) {
        CHECK(E2[a] == E[a]);
        CHECK(H2[a] == H[a]);
    }
    const auto w = packUnified(E, E);
    for (int a = 0; a < 3; ++a)
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(w.omega[a][i] == std::complex<double>(1, 1) * E[a][i]);

    CHECK_THROWS_AS(packUnified(RealVector(g, Stagger::edge), RealVector(g, Stagger::face)), ContractViolation);
}

TEST_CASE("potential containers carry the dual-lattice placements") {
    const Grid g({4, 4, 4}, 0.25);
    const auto p = GeneralizedPotential<double>::zeros(g, true);
    CHECK(p.A.stagger() == Stagger::edge);
    CHECK(p.phiE.stagger() == Stagger::node);
    CHECK(p.B.stagger() == Stagger::face);
    CHECK(p.phiM.stagger() == Stagger::cell);
    CHECK(p.hasDerivatives());
    CHECK_FALSE(GeneralizedPotential<double>::zeros(g, true, false).hasDerivatives());
    const auto c = GeneralizedCurrent<double>::zeros(g, false);
    CHECK(c.J.stagger() == Stagger::collocated);
    CHECK(c.rhoM.stagger() == Stagger::collocated);
}
