// Linked currents, massive gauge condition, torque continuity and screening.

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dyonwave/dyon_qed.hpp"
#include "dyonwave/random.hpp"

using namespace dyonwave;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;
const PhysicalConstants kNatural{};
// c = 2 with eps0 mu0 c^2 = 1 and hbar != 1
const PhysicalConstants kScaled{2.0, 0.5, 0.25, 1.0, 1.0};

double minOrder(const std::vector<double>& e) {
    const auto o = observedOrders(e);
    return *std::min_element(o.begin(), o.end());
}

RealScalar randomScalar(Rng& r, const Grid& g, Stagger s, bool zeroMean = false) {
    RealScalar f(g, s);
    for (auto& x : f.data()) x = r.uniform(-1, 1);
    if (zeroMean) {
        double m = 0.0;
        for (double x : f.data()) m += x;
        m /= static_cast<double>(f.size());
        for (auto& x : f.data()) x -= m;
    }
    return f;
}

RealVector randomVector(Rng& r, const Grid& g, Stagger s) {
    RealVector v(g, s);
    for (int a = 0; a < 3; ++a)
        for (auto& x : v[a]) x = r.uniform(-1, 1);
    return v;
}

GeneralizedPotential<double> randomPotential(Rng& r, const Grid& g) {
    auto p = GeneralizedPotential<double>::zeros(g, true);
    p.A = randomVector(r, g, Stagger::edge);
    p.B = randomVector(r, g, Stagger::face);
    p.phiE = randomScalar(r, g, Stagger::node, true);
    p.phiM = randomScalar(r, g, Stagger::cell, true);
    *p.dA = randomVector(r, g, Stagger::edge);
    *p.dB = randomVector(r, g, Stagger::face);
    *p.dPhiE = randomScalar(r, g, Stagger::node);
    *p.dPhiM = randomScalar(r, g, Stagger::cell);
    return p;
}

/// Replaces the scalar-potential velocities so both massive Lorenz residuals vanish.
void makeGaugeExact(GeneralizedPotential<double>& p, double m0, const PhysicalConstants& k) {
    const Grid& g = p.grid();
    const double mass = 2.0 * m0 / k.hbar;
    *p.dPhiE = lorenzResidual(p.A, p.phiE, RealScalar(g, Stagger::node), k.c, mass);
    *p.dPhiE *= -k.c * k.c;
    *p.dPhiM = lorenzResidual(p.B, p.phiM, RealScalar(g, Stagger::cell), k.c, mass);
    *p.dPhiM *= -k.c * k.c;
}

} // namespace

TEST_CASE("linkage coefficients") {
    const QuantumLinkage one(1.0, kNatural);
    CHECK(one.kappa() == 1.0);
    CHECK(one.kappaRhoE() == 1.0);
    CHECK(one.gamma() == 1.0);
    const QuantumLinkage two(2.0, kNatural);
    CHECK(two.kappa() == 4.0);
    const QuantumLinkage s(0.3, kScaled);
    // m0^2 c^2 / (mu0 hbar^2) = 0.09 * 4 / 0.25
    CHECK_THAT(s.kappa(), WithinRel(1.44, 1e-14));
    CHECK_THAT(s.kappaRhoE() * 4.0, WithinRel(s.kappa(), 1e-14));
    CHECK_THROWS_AS(QuantumLinkage(-1.0, kNatural), ContractViolation);
    const auto si = PhysicalConstants::si();
    const QuantumLinkage e(9.109e-31, si);
    CHECK_THAT(e.kappaRhoE() * si.c * si.c, WithinRel(e.kappa(), 1e-12));
}

TEST_CASE("currents are proportional to the potentials") {
    const Grid g({6, 6, 6}, 0.2);
    const QuantumLinkage link(1.0, kNatural);
    const auto z = currentFromPotential(GeneralizedPotential<double>::zeros(g, true), link);
    CHECK(maxAbs(z.J) == 0.0);
    CHECK(maxAbs(z.rhoM) == 0.0);

    auto p = GeneralizedPotential<double>::zeros(g, false, false);
    for (auto& x : p.A[0]) x = 1.0;
    const auto c = currentFromPotential(p, link);
    for (double x : c.J[0]) CHECK(x == -1.0);
    CHECK(std::all_of(c.J[1].begin(), c.J[1].end(), [](double x) { return x == 0.0; }));
    CHECK_FALSE(c.dJ);

    Rng r(41);
    const QuantumLinkage heavy(1.7, kScaled);
    const auto p1 = randomPotential(r, g), p2 = randomPotential(r, g);
    auto sum = p1;
    sum.A += p2.A;
    sum.phiM += p2.phiM;
    const auto cs = currentFromPotential(sum, heavy);
    const auto c1 = currentFromPotential(p1, heavy), c2 = currentFromPotential(p2, heavy);
    CHECK(maxAbs(cs.J - (c1.J + c2.J)) <= 1e-12 * heavy.kappa());
    CHECK(maxAbs(cs.rhoM - (c1.rhoM + c2.rhoM)) <= 1e-12 * heavy.kappa());
}

TEST_CASE("massive gauge residual") {
    Rng r(42);
    const Grid g({6, 5, 4}, 0.3);
    const auto p = randomPotential(r, g);
    const auto q = gaugeResidualQuantum(p, 0.0, kNatural);
    const auto c = gaugeResidualClassical(p, MediumParams{0.0, 0.0, kNatural});
    CHECK(q.first == c.first);
    CHECK(q.second == c.second);

    auto s = GeneralizedPotential<double>::zeros(g, true);
    for (auto& x : s.phiE.data()) x = 3.0;
    const auto rs = gaugeResidualQuantum(s, 0.5, kNatural);
    for (double x : rs.first.data()) CHECK(x == 3.0);  // 2 m0 phi / hbar
    CHECK(maxAbs(rs.second) == 0.0);

    auto noDerivatives = GeneralizedPotential<double>::zeros(g, true, false);
    CHECK_THROWS_AS(gaugeResidualQuantum(noDerivatives, 1.0, kNatural), ContractViolation);
}

TEST_CASE("massive gauge residual of a manufactured pair converges") {
    // A = x a cos(x - w t), phi chosen so div A + phi_t + 2 m0 phi = 0 analytically:
    // phi = P cos(x - w t) + S sin(x - w t) with the 2x2 system solved below
    const double m0 = 0.4, t = 0.7, w = 1.3, a = 0.8;
    // div A = -a sin(theta); phi_t = P w sin - S w cos; need (-a + P w + 2 m0 S) sin + (-S w + 2 m0 P) cos = 0
    const double det = w * w + 4 * m0 * m0;
    const double P = a * w / det, S = 2 * m0 * a / det;
    std::vector<double> err;
    for (int n : {16, 32, 64}) {
        const Grid g = Grid::line(n, 2 * kPi / n);
        auto p = GeneralizedPotential<double>::zeros(g, true);
        p.A = sampleVector<double>(g, Stagger::edge, [&](double x, double, double) {
            return Vec3<double>{a * std::cos(x - w * t), 0, 0};
        });
        p.phiE = sampleScalar<double>(g, Stagger::node, [&](double x, double, double) {
            return P * std::cos(x - w * t) + S * std::sin(x - w * t);
        });
        *p.dPhiE = sampleScalar<double>(g, Stagger::node, [&](double x, double, double) {
            return P * w * std::sin(x - w * t) - S * w * std::cos(x - w * t);
        });
        err.push_back(maxAbs(gaugeResidualQuantum(p, m0, kNatural).first));
    }
    CHECK(err.back() < 1e-3);
    CHECK(minOrder(err) >= 1.9);
}

TEST_CASE("gauge transformation") {
    Rng r(43);
    const Grid g({8, 8, 8}, 0.25);
    const auto p = randomPotential(r, g);
    const RealScalar zero(g, Stagger::node);
    const auto same = gaugeTransform(p, TimeLevels<RealScalar>{zero, zero, zero, 0.1});
    CHECK(same.A == p.A);
    CHECK(same.phiE == p.phiE);
    CHECK(*same.dPhiE == *p.dPhiE);

    // a static gauge function moves the residual by +div grad L
    const auto L = randomScalar(r, g, Stagger::node);
    const auto before = gaugeResidualQuantum(p, 0.7, kNatural);
    const auto moved = gaugeResidualQuantum(gaugeTransform(p, TimeLevels<RealScalar>{L, L, L, 0.1}), 0.7, kNatural);
    CHECK(maxAbs(moved.first - before.first - div(grad(L))) <= 1e-12);
    CHECK(moved.second == before.second);

    CHECK_THROWS_AS(gaugeTransform(p, TimeLevels<RealScalar>{L, L, L, 0.1}, GaugeSector::magnetic),
                    ContractViolation);
}

TEST_CASE("stepped gauge functions leave the massive residual unchanged") {
    const Grid g({24, 24, 1}, 2 * kPi / 24);
    Rng r(44);
    const double m0 = 0.6, dt = 0.25 * g.h;
    for (const auto& k : {kNatural, kScaled}) {
        const double step = std::min(dt, 0.25 * g.h / k.c);
        GaugeFunction<double> L{sampleScalar<double>(g, Stagger::node, [](double x, double y, double) {
                                    return std::cos(x) * std::sin(2 * y);
                                }),
                                RealScalar(g, Stagger::node), 0.0};
        std::vector<RealScalar> lv;
        for (int s = 0; s < 12; ++s) {
            lv.push_back(L.lambda);
            L = stepGaugeFunction(std::move(L), m0, k, step);
        }
        const TimeLevels<RealScalar> levels{lv[9], lv[10], lv[11], step};
        CHECK(maxAbs(gaugeResidualChange(levels, m0, k)) <= 1e-10);
        const auto p = randomPotential(r, g);
        const auto before = gaugeResidualQuantum(p, m0, k);
        const auto after = gaugeResidualQuantum(gaugeTransform(p, levels), m0, k);
        CHECK(maxAbs(after.first - before.first) <= 1e-10);
    }
}

TEST_CASE("continuity with torque density") {
    const Grid g({6, 6, 6}, 0.2);
    auto c = GeneralizedCurrent<double>::zeros(g, true);
    c.dRhoE = RealScalar(g, Stagger::node);
    c.dRhoM = RealScalar(g, Stagger::cell);
    for (auto& x : c.rhoE.data()) x = 1.0;
    for (auto& x : c.rhoM.data()) x = 1.0;
    const QuantumLinkage link(1.0, kScaled);
    const auto rep = continuityResidual(c, link);
    // Te = -2 m0 c^2 rhoE / hbar = -16, Tm = -2 m0 rhoM / hbar = -4
    for (double x : rep.torque.Te.data()) CHECK(x == -16.0);
    for (double x : rep.torque.Tm.data()) CHECK(x == -4.0);
    for (double x : rep.re.data()) CHECK(x == 16.0);

    const auto massless = continuityResidual(c, QuantumLinkage(0.0, kScaled));
    CHECK(maxAbs(massless.re) == 0.0);
    CHECK(maxAbs(massless.rm) == 0.0);

    c.dRhoE.reset();
    CHECK_THROWS_AS(continuityResidual(c, link), ContractViolation);
}

TEST_CASE("linked currents satisfy continuity exactly when the potentials are gauge-exact") {
    Rng r(45);
    const Grid g({10, 8, 6}, 0.3);
    for (const auto& k : {kNatural, kScaled}) {
        const double m0 = 0.8;
        const QuantumLinkage link(m0, k);
        auto p = randomPotential(r, g);

        // on arbitrary potentials: re = -kappa_e c^2 L_e, rm = -kappa L_m
        const auto c0 = currentFromPotential(p, link);
        const auto rep0 = continuityResidual(c0, link);
        const auto L = gaugeResidualQuantum(p, m0, k);
        auto expectE = L.first;
        expectE *= -link.kappaRhoE() * k.c * k.c;
        auto expectM = L.second;
        expectM *= -link.kappa();
        CHECK(maxAbs(rep0.re - expectE) <= 1e-12 * maxAbs(expectE));
        CHECK(maxAbs(rep0.rm - expectM) <= 1e-12 * maxAbs(expectM));

        makeGaugeExact(p, m0, k);
        const auto c = currentFromPotential(p, link);
        const auto rep = continuityResidual(c, link);
        const double scale = std::max(maxAbs(div(c.J)), maxAbs(div(c.K)));
        CHECK(maxAbs(rep.re) <= 1e-12 * scale);
        CHECK(maxAbs(rep.rm) <= 1e-12 * scale);

        const auto eff = effectiveCurrent(c, rep.torque);
        RealScalar ce = div(eff.J) + *c.dRhoE;
        RealScalar cm = div(eff.K);
        cm.axpy(1.0 / (k.c * k.c), *c.dRhoM);
        CHECK(maxAbs(ce) <= 1e-8 * scale);
        CHECK(maxAbs(cm) <= 1e-8 * scale);
    }
}

TEST_CASE("effective current polarization") {
    const Grid g({6, 6, 6}, 0.2);
    auto c = GeneralizedCurrent<double>::zeros(g, true);
    Rng r(46);
    c.J = randomVector(r, g, Stagger::edge);
    const TorqueDensity<double> none{RealScalar(g, Stagger::node), RealScalar(g, Stagger::cell)};
    const auto same = effectiveCurrent(c, none);
    CHECK(same.J == c.J);
    CHECK(same.K == c.K);

    // single Fourier mode: chi = (L/2pi)^2 sin(2 pi x/L), P = (L/2pi) cos(2 pi x/L)
    std::vector<double> err;
    for (int n : {32, 64, 128}) {
        const double L = 3.0, q = 2 * kPi / L;
        const Grid gl = Grid::line(n, L / n);
        auto cl = GeneralizedCurrent<double>::zeros(gl, true);
        TorqueDensity<double> t{sampleScalar<double>(gl, Stagger::node, [&](double x, double, double) {
                                    return std::sin(q * x);
                                }),
                                RealScalar(gl, Stagger::cell)};
        const auto eff = effectiveCurrent(cl, t);
        const auto P = sampleVector<double>(gl, Stagger::edge, [&](double x, double, double) {
            return Vec3<double>{std::cos(q * x) / q, 0, 0};
        });
        err.push_back(maxAbs(eff.J - P) * q);
    }
    CHECK(err[0] < 1e-2);
    CHECK(minOrder(err) >= 1.9);

    TorqueDensity<double> bad{RealScalar(g, Stagger::node), RealScalar(g, Stagger::cell)};
    for (auto& x : bad.Te.data()) x = 1.0;
    CHECK_THROWS_AS(effectiveCurrent(c, bad), ContractViolation);
}

TEST_CASE("screening length of the London relaxation") {
    const auto one = londonExperiment(1.0);
    CHECK(one.lambdaTheory == 1.0);
    CHECK_THAT(one.lambdaFit, WithinRel(1.0, 0.02));
    CHECK(one.nPoints >= 10);
    CHECK(one.H.front() == 1.0);
    CHECK(one.H.back() == 0.0);
    const auto two = londonExperiment(2.0);
    CHECK_THAT(two.lambdaFit, WithinRel(0.5 * one.lambdaFit, 0.02));
    for (std::size_t i = 1; i < one.H.size(); ++i) REQUIRE(one.H[i] <= one.H[i - 1]);
    CHECK_THROWS_AS(londonExperiment(0.0), ContractViolation);
    CHECK_THROWS_AS(londonExperiment(-1.0), ContractViolation);
    LondonConfig shortDomain;
    shortDomain.cells = 20;
    CHECK_THROWS_AS(londonExperiment(0.5, shortDomain), ContractViolation);
    LondonConfig capped;
    capped.maxIterations = 10;
    CHECK_THROWS_AS(londonExperiment(1.0, capped), NonConvergence);
}

TEST_CASE("linked currents obey the massive damped wave equation") {
    // S = exp(-gamma t) cos(k (t - x)) solves S_tt - S_xx + 2 gamma S_t + gamma^2 S = 0 (c = hbar = 1)
    const double m0 = 0.7;
    const QuantumLinkage link(m0, kNatural);
    auto S = [&](double x, double t) { return std::exp(-m0 * t) * std::cos(t - x); };
    std::vector<double> linked, unlinked;
    for (int n : {32, 64, 128}) {
        const Grid g = Grid::line(n, 2 * kPi / n);
        const double dt = 0.25 * g.h, t = 0.4;
        std::vector<GeneralizedCurrent<double>> cs;
        for (int lvl = -1; lvl <= 1; ++lvl) {
            const double tl = t + lvl * dt;
            auto p = GeneralizedPotential<double>::zeros(g, true, false);
            p.A = sampleVector<double>(g, Stagger::edge, [&](double x, double, double) {
                return Vec3<double>{0, S(x, tl), 0.5 * S(x, tl)};
            });
            p.B = sampleVector<double>(g, Stagger::face, [&](double x, double, double) {
                return Vec3<double>{0, -S(x, tl), 0};
            });
            p.phiE = sampleScalar<double>(g, Stagger::node, [&](double x, double, double) { return S(x, tl); });
            p.phiM = sampleScalar<double>(g, Stagger::cell, [&](double x, double, double) { return 2 * S(x, tl); });
            cs.push_back(currentFromPotential(p, link));
        }
        const TimeLevels<GeneralizedCurrent<double>> lv{cs[0], cs[1], cs[2], dt};
        const auto res = currentWaveResidual(lv, m0, kNatural);
        linked.push_back(std::max({maxAbs(res.J), maxAbs(res.K), maxAbs(res.rhoE), maxAbs(res.rhoM)}));
        const auto wrong = currentWaveResidual(lv, 2 * m0, kNatural);
        unlinked.push_back(maxAbs(wrong.J));
    }
    CHECK(minOrder(linked) >= 1.9);
    CHECK(linked.back() < 1e-3 * link.kappa());
    CHECK(unlinked.back() > 1e2 * linked.back());

    const Grid g({6, 6, 6}, 0.5);
    const auto z = GeneralizedCurrent<double>::zeros(g, true);
    const auto rz = currentWaveResidual(TimeLevels<GeneralizedCurrent<double>>{z, z, z, 0.1}, m0, kNatural);
    CHECK(maxAbs(rz.J) == 0.0);
    CHECK(maxAbs(rz.rhoM) == 0.0);
}

TEST_CASE("London-type relation table") {
    const QuantumLinkage link(1.3, kScaled);
    const auto rows = londonTableReport(link);
    REQUIRE(rows.size() == 7);
    CHECK_FALSE(rows[0].coefficient);
    CHECK_FALSE(rows[0].residualNorm);
    const double kappa = 1.3 * 1.3 * 4.0 / 0.25;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].coefficient);
        CHECK_THAT(*rows[i].coefficient, WithinRel(kappa, 1e-12));
    }
    CHECK(*rows[3].residualNorm <= 1e-12);
    CHECK(*rows[4].residualNorm <= 1e-12);
    CHECK(*rows[5].residualNorm == 0.0);
    CHECK(*rows[6].residualNorm == 0.0);

    LondonTableOptions fine;
    fine.dt *= 0.5;
    fine.steps *= 2;
    const auto rows2 = londonTableReport(link, fine);
    for (std::size_t i : {1u, 2u}) CHECK(std::log2(*rows[i].residualNorm / *rows2[i].residualNorm) >= 1.9);
}
