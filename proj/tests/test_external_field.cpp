// Minimal coupling to external dyonic potentials.

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dyonwave/external_field.hpp"
#include "dyonwave/fit.hpp"
#include "dyonwave/random.hpp"

using namespace dyonwave;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPi = std::numbers::pi;
const PhysicalConstants kNatural{};
const cd I{0.0, 1.0};

double minOrder(const std::vector<double>& e) {
    const auto o = observedOrders(e);
    return *std::min_element(o.begin(), o.end());
}

ComplexScalar randomScalar(Rng& r, const Grid& g) {
    ComplexScalar f(g, Stagger::collocated);
    for (auto& x : f.data()) x = {r.uniform(-1, 1), r.uniform(-1, 1)};
    return f;
}

ComplexVector randomVector(Rng& r, const Grid& g) {
    ComplexVector v(g, Stagger::collocated);
    for (int a = 0; a < 3; ++a)
        for (auto& x : v[a]) x = {r.uniform(-1, 1), r.uniform(-1, 1)};
    return v;
}

CoupledConfig coupling(const Grid& g, cd Q, const ComplexVector& V, const ComplexScalar& Phi) {
    auto cfg = CoupledConfig::uncoupled(g, kNatural);
    cfg.Q = Q;
    cfg.V = V;
    cfg.Phi = Phi;
    return cfg;
}

WaveState<cd> randomWave(Rng& r, const Grid& g, double m0) {
    auto w = WaveState<cd>::zeros(g, m0, kNatural);
    w.psi = randomVector(r, g);
    w.psi0 = randomScalar(r, g);
    w.dpsi = randomVector(r, g);
    w.dpsi0 = randomScalar(r, g);
    return w;
}

} // namespace

TEST_CASE("uncoupled operators are the plain derivatives") {
    Rng r(51);
    const Grid g({6, 6, 6}, 0.3);
    const auto u = randomScalar(r, g), du = randomScalar(r, g);
    const auto op = minimalCoupleOperators(CoupledConfig::uncoupled(g));
    CHECK(op.gradient(u) == grad(u));
    CHECK(op.timeDerivative(u, du) == du);

    // Q = 0 with non-zero potentials is still uncoupled
    const auto zeroQ = minimalCoupleOperators(coupling(g, 0.0, randomVector(r, g), randomScalar(r, g)));
    CHECK(zeroQ.gradient(u) == grad(u));
}

TEST_CASE("coupled operators are affine in the charge") {
    Rng r(52);
    const Grid g({6, 6, 6}, 0.3);
    const auto V = randomVector(r, g);
    const auto Phi = randomScalar(r, g);
    const auto u = randomScalar(r, g), du = randomScalar(r, g);
    const cd q1{0.4, -0.2}, q2{-0.1, 0.9};
    auto shiftG = [&](cd q) { return minimalCoupleOperators(coupling(g, q, V, Phi)).gradient(u) - grad(u); };
    auto shiftT = [&](cd q) { return minimalCoupleOperators(coupling(g, q, V, Phi)).timeDerivative(u, du) - du; };
    CHECK(maxAbs(shiftG(q1 + q2) - (shiftG(q1) + shiftG(q2))) <= 1e-14);
    CHECK(maxAbs(shiftT(q1 + q2) - (shiftT(q1) + shiftT(q2))) <= 1e-14);

    // the shifts are -(Q/(i hbar)) V u and +(Q/(i hbar)) Phi u, sample by sample
    const auto dG = shiftG(q1);
    const auto dT = shiftT(q1);
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (int a = 0; a < 3; ++a) CHECK(std::abs(dG[a][i] + q1 / I * V[a][i] * u[i]) <= 1e-14);
        CHECK(std::abs(dT[i] - q1 / I * Phi[i] * u[i]) <= 1e-14);
    }
}

TEST_CASE("coupled gradient of a plane wave in a uniform potential") {
    // u = exp(-i k x): (grad - (Q/(i hbar)) V) u = (-i k - (Q/i) V) u
    const cd Q{0.5, 0.3};
    const Vec3<cd> V0{0.3, 0.2 * I, -0.1};
    std::vector<double> err;
    for (int n : {16, 32, 64}) {
        const Grid g = Grid::line(n, 2 * kPi / n);
        const auto u = sampleScalar<cd>(g, Stagger::collocated, [](double x, double, double) { return std::exp(-I * x); });
        const auto V = sampleVector<cd>(g, Stagger::collocated, [&](double, double, double) { return V0; });
        const auto op = minimalCoupleOperators(coupling(g, Q, V, ComplexScalar(g, Stagger::collocated)));
        const auto exact = sampleVector<cd>(g, Stagger::collocated, [&](double x, double, double) {
            const cd ux = std::exp(-I * x);
            return Vec3<cd>{(-I - Q / I * V0[0]) * ux, -Q / I * V0[1] * ux, -Q / I * V0[2] * ux};
        });
        err.push_back(maxAbs(op.gradient(u) - exact));
    }
    CHECK(minOrder(err) >= 1.9);
}

TEST_CASE("algebraic constraint is bilinear") {
    Rng r(53);
    const Grid g({5, 5, 5}, 0.3);
    const auto w = randomWave(r, g, 0.5);
    const auto V = randomVector(r, g);
    const auto Phi = randomScalar(r, g);
    const cd Q{0.2, 0.1};
    const auto base = coupledFirstOrderResiduals(w, coupling(g, Q, V, Phi)).r85;
    const auto twice = coupledFirstOrderResiduals(w, coupling(g, Q, cd(2.0) * V, cd(2.0) * Phi)).r85;
    CHECK(maxAbs(twice - cd(2.0) * base) <= 1e-14);
    auto w2 = w;
    w2.psi *= cd(0, 3);
    w2.psi0 *= cd(0, 3);
    const auto scaled = coupledFirstOrderResiduals(w2, coupling(g, Q, V, Phi)).r85;
    CHECK(maxAbs(scaled - cd(0, 3) * base) <= 1e-13);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const cd vp = V[0][i] * w.psi[0][i] + V[1][i] * w.psi[1][i] + V[2][i] * w.psi[2][i];
        CHECK(std::abs(base[i] - (Phi[i] * w.psi0[i] + vp)) <= 1e-14);
    }
}

TEST_CASE("uncoupled first-order residuals reduce to the free ones") {
    Rng r(54);
    const Grid g({5, 5, 5}, 0.3);
    const auto w = randomWave(r, g, 0.5);
    const auto free = firstOrderResiduals(w);
    const auto c = coupledFirstOrderResiduals(w, CoupledConfig::uncoupled(g));
    CHECK(c.r82 == free.scalar);
    CHECK(c.r83 == free.vector);
    CHECK(c.r84 == free.curl);
    CHECK(maxAbs(c.r85) == 0.0);
}

TEST_CASE("constructive manufactured state satisfies the coupled first-order system") {
    const int n = 24;
    const Grid g({n, n, 1}, 2 * kPi / n);
    auto w = WaveState<cd>::zeros(g, 0.8, kNatural);
    w.psi = sampleVector<cd>(g, Stagger::collocated, [](double x, double y, double) {
        return Vec3<cd>{std::cos(x) + I * std::sin(y), 0.4 * std::sin(x - y), 0.3 * I};
    });
    w.psi0 = sampleScalar<cd>(g, Stagger::collocated, [](double x, double y, double) {
        return 1.5 + 0.5 * std::sin(x) * std::cos(y) + I * 0.2 * std::cos(x + y);
    });
    auto cfg = CoupledConfig::uncoupled(g);
    cfg.Q = {0.7, -0.4};
    cfg.V = sampleVector<cd>(g, Stagger::collocated, [](double x, double y, double) {
        return Vec3<cd>{0.2 * std::sin(y), 0.1 + I * 0.3 * std::cos(x), -0.2};
    });
    const auto sol = solveScalarPotential(cfg.V, w.psi, w.psi0, 1.0);
    CHECK(sol.maskedCount == 0);
    cfg.Phi = sol.Phi;
    cfg.curlSource = coupledFirstOrderResiduals(w, cfg).r84;
    const auto r = coupledFirstOrderResiduals(w, cfg);
    CHECK(maxAbs(r.r85) <= 1e-12);
    CHECK(maxAbs(r.r84) <= 1e-12);
    const auto ids = gammaDivergenceIdentity(cfg, GammaIdentityInput{w.psi, w.psi0, std::nullopt});
    REQUIRE(ids.size() == 2);
    CHECK(ids[1].identity == "curl_projection");
    CHECK(ids[1].residualNorm <= 1e-10);
}

TEST_CASE("scalar potential solve masks vanishing samples") {
    const Grid g = Grid::line(8, 0.5);
    ComplexVector V(g, Stagger::collocated, 1.0), psi(g, Stagger::collocated, 1.0);
    ComplexScalar psi0(g, Stagger::collocated, 2.0);
    psi0[3] = 0.0;
    psi0[5] = 1e-12;
    const auto s = solveScalarPotential(V, psi, psi0, 2.0);
    CHECK(s.maskedCount == 2);
    CHECK(s.masked[3]);
    CHECK(s.masked[5]);
    CHECK(s.Phi[3] == 0.0);
    // -c^2 V.Psi / Psi0 = -4 * 3 / 2
    CHECK(s.Phi[0] == -6.0);
}

TEST_CASE("coupled wave residuals reduce to the damped ones") {
    Rng r(55);
    const Grid g({6, 6, 6}, 0.2);
    const auto a = randomWave(r, g, 0.9), b = randomWave(r, g, 0.9), c = randomWave(r, g, 0.9);
    const TimeLevels<WaveState<cd>> lv{a, b, c, 0.02};
    const auto damped = dampedWaveResidual(lv);
    const auto q0 = coupledWaveResiduals(lv, CoupledConfig::uncoupled(g));
    CHECK(q0.rVec == damped.vector);
    CHECK(q0.rScal == damped.scalar);

    // Q != 0 but V = 0: Gamma vanishes
    auto cfg = CoupledConfig::uncoupled(g);
    cfg.Q = {0.3, 0.3};
    const auto noGamma = coupledWaveResiduals(lv, cfg);
    CHECK(maxAbs(noGamma.rVec - damped.vector) == 0.0);
    CHECK(maxAbs(noGamma.rScal - damped.scalar) == 0.0);
}

TEST_CASE("coupled wave residual of a plane wave converges at second order") {
    // single-axis plane wave exp(i(w t - x)) in the uniform potential V0
    const double m0 = 0.6;
    const cd Q{-0.4, 0.7}, omega{0.9, 0.3}, a0{0.5, 0.5};
    const Vec3<cd> amp{0.2, 1.0, -0.5 * I};
    const Vec3<cd> V0{0.1 * I, 0.4, 0.3};
    std::vector<double> errV, errS, tau;
    for (int n : {32, 64, 128}) {
        const Grid g = Grid::line(n, 2 * kPi / n);
        const double dt = 0.25 * g.h, t1 = 0.5;
        auto state = [&](double t) {
            auto w = WaveState<cd>::zeros(g, m0, kNatural);
            w.psi = sampleVector<cd>(g, Stagger::collocated, [&](double x, double, double) {
                return scale(std::exp(I * (omega * t - x)), amp);
            });
            w.psi0 = sampleScalar<cd>(g, Stagger::collocated, [&](double x, double, double) {
                return a0 * std::exp(I * (omega * t - x));
            });
            w.t = t;
            return w;
        };
        auto cfg = CoupledConfig::uncoupled(g);
        cfg.Q = Q;
        cfg.V = sampleVector<cd>(g, Stagger::collocated, [&](double, double, double) { return V0; });
        const auto res = coupledWaveResiduals(TimeLevels<WaveState<cd>>{state(t1 - dt), state(t1), state(t1 + dt), dt}, cfg);

        // Gamma = V0 x amp e; d/dt -> i w, d/dx -> -i
        const Vec3<cd> G = cross(V0, amp);
        const cd free = -1.0 + omega * omega - 2.0 * m0 * I * omega - m0 * m0;
        const cd gv = Q * I * omega + m0 * Q;
        const cd divG = -I * G[0];
        const auto eV = sampleVector<cd>(g, Stagger::collocated, [&](double x, double, double) {
            const cd e = std::exp(I * (omega * t1 - x));
            return scale(e, scale(free, amp) + scale(gv, G));
        });
        const auto eS = sampleScalar<cd>(g, Stagger::collocated, [&](double x, double, double) {
            return std::exp(I * (omega * t1 - x)) * (free * a0 + Q * divG);
        });
        errV.push_back(maxAbs(res.rVec - eV));
        errS.push_back(maxAbs(res.rScal - eS));
        tau.push_back(res.consistency);
    }
    CHECK(minOrder(errV) >= 1.9);
    CHECK(minOrder(errS) >= 1.9);
    CHECK(minOrder(tau) >= 1.9);
}

TEST_CASE("divergence identity for Gamma") {
    Rng r(56);
    // constant V commutes with the difference operators: exact to roundoff
    const Grid g({8, 8, 8}, 0.3);
    auto cfg = CoupledConfig::uncoupled(g);
    cfg.Q = {0.2, 0.0};
    cfg.V = sampleVector<cd>(g, Stagger::collocated, [](double, double, double) {
        return Vec3<cd>{0.3, -0.2 * I, 1.1};
    });
    const auto psi = randomVector(r, g);
    CHECK(gammaDivergenceIdentity(cfg, GammaIdentityInput{psi, std::nullopt, std::nullopt})[0].residualNorm <= 1e-12);

    std::vector<double> err;
    for (int n : {32, 64, 128}) {
        const Grid gl({n, n, 1}, 2 * kPi / n);
        auto c = CoupledConfig::uncoupled(gl);
        c.Q = {0.2, 0.0};
        c.V = sampleVector<cd>(gl, Stagger::collocated, [](double x, double y, double) {
            return Vec3<cd>{std::sin(y), I * std::cos(x), std::sin(x + y)};
        });
        const auto p = sampleVector<cd>(gl, Stagger::collocated, [](double x, double y, double) {
            return Vec3<cd>{std::cos(x - y), 0.5, I * std::sin(2 * x)};
        });
        const auto ids = gammaDivergenceIdentity(c, GammaIdentityInput{p, std::nullopt, std::nullopt});
        REQUIRE(ids.size() == 1);
        err.push_back(ids[0].residualNorm);
    }
    CHECK(minOrder(err) >= 1.9);
}
