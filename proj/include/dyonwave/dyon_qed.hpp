// dyon_qed.hpp - potentials, currents and charges of massive dyons
//
// Currents and charge densities are proportional to the potentials,
//
//   J = -kappa A,  K = -kappa B,  rhoE = -kappa_e phiE,  rhoM = -kappa_m phiM,
//
// with kappa = m0^2 c^2/(mu0 hbar^2), kappa_e = m0^2/(mu0 hbar^2) and
// kappa_m = kappa. The massive Lorenz condition carries an extra 2 m0 phi/hbar.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dyonwave/classical.hpp"
#include "dyonwave/constants.hpp"
#include "dyonwave/dyon.hpp"
#include "dyonwave/fit.hpp"
#include "dyonwave/grid.hpp"
#include "dyonwave/operators.hpp"
#include "dyonwave/poisson.hpp"
#include "dyonwave/quantum_wave.hpp"
#include "dyonwave/wave_stepper.hpp"

namespace dyonwave {

struct QuantumLinkage {
    double m0 = 0.0;
    PhysicalConstants constants;

    QuantumLinkage() = default;
    QuantumLinkage(double mass, const PhysicalConstants& k) : m0(mass), constants(k) {
        require(m0 >= 0.0, "mass must be non-negative");
        constants.validate();
        const double tol = 1e-12 * std::max(kappa(), 1e-300);
        require(std::abs(kappa() - kappaRhoE() * constants.c * constants.c) <= tol,
                "linkage constants inconsistent: kappa != kappa_e c^2");
        require(std::abs(k0() * k0() - constants.mu0 * kappa()) <= 1e-12 * std::max(k0() * k0(), 1e-300),
                "linkage constants inconsistent: k0^2 != mu0 kappa");
    }

    double kappa() const {
        const auto& k = constants;
        return m0 * m0 * k.c * k.c / (k.mu0 * k.hbar * k.hbar);
    }
    double kappaRhoE() const {
        const auto& k = constants;
        return m0 * m0 / (k.mu0 * k.hbar * k.hbar);
    }
    double kappaRhoM() const { return kappa(); }
    /// m0 c / hbar
    double k0() const { return m0 * constants.c / constants.hbar; }
    /// m0 c^2 / hbar
    double gamma() const { return m0 * constants.c * constants.c / constants.hbar; }
};

template <class T>
GeneralizedCurrent<T> currentFromPotential(const GeneralizedPotential<T>& p, const QuantumLinkage& link) {
    const T kA(-link.kappa());
    const T kE(-link.kappaRhoE());
    const T kM(-link.kappaRhoM());
    GeneralizedCurrent<T> c;
    c.J = kA * p.A;
    c.K = kA * p.B;
    c.rhoE = kE * p.phiE;
    c.rhoM = kM * p.phiM;
    if (p.dA) c.dJ = kA * *p.dA;
    if (p.dB) c.dK = kA * *p.dB;
    if (p.dPhiE) c.dRhoE = kE * *p.dPhiE;
    if (p.dPhiM) c.dRhoM = kM * *p.dPhiM;
    return c;
}

/// div A + phiE_t/c^2 + 2 m0 phiE/hbar and the magnetic counterpart.
template <class T>
std::pair<ScalarField<T>, ScalarField<T>> gaugeResidualQuantum(const GeneralizedPotential<T>& p,
                                                               double m0, const PhysicalConstants& k = {}) {
    require(p.hasDerivatives(), "gaugeResidualQuantum: time derivatives of the potentials are missing");
    const double mass = 2.0 * m0 / k.hbar;
    return {lorenzResidual(p.A, p.phiE, *p.dPhiE, k.c, mass),
            lorenzResidual(p.B, p.phiM, *p.dPhiM, k.c, mass)};
}

enum class GaugeSector { electric, magnetic, both };

/// A' = A + grad L, phi' = phi - L_t at the middle level of `lambda` (and the
/// matching shifts of the stored time derivatives). The gauge function must
/// sit on the scalar placement of the transformed sector.
template <class T>
GeneralizedPotential<T> gaugeTransform(GeneralizedPotential<T> p, const TimeLevels<ScalarField<T>>& lambda,
                                       GaugeSector sector = GaugeSector::electric) {
    const ScalarField<T>& L = lambda.cur;
    const ScalarField<T> Lt = lambda.d1();
    const ScalarField<T> Ltt = lambda.d2();
    const VectorField<T> gL = grad(L);
    const VectorField<T> gLt = grad(Lt);

    auto shift = [&](VectorField<T>& A, ScalarField<T>& phi, std::optional<VectorField<T>>& dA,
                     std::optional<ScalarField<T>>& dPhi, const char* what) {
        require(A.congruent(gL) && phi.congruent(L),
                std::string("gaugeTransform: gauge function placement does not match the ") + what +
                    " potentials (" + toString(L.stagger()) + " vs " + toString(phi.stagger()) + ")");
        A += gL;
        phi -= Lt;
        if (dA) *dA += gLt;
        if (dPhi) *dPhi -= Ltt;
    };
    if (sector != GaugeSector::magnetic) shift(p.A, p.phiE, p.dA, p.dPhiE, "electric");
    if (sector != GaugeSector::electric) shift(p.B, p.phiM, p.dB, p.dPhiM, "magnetic");
    return p;
}

/// Change of the massive Lorenz residual under gaugeTransform:
///   div grad L - L_tt/c^2 - (2 m0/hbar) L_t,
/// i.e. minus the left side of the gauge-function wave equation.
template <class T>
ScalarField<T> gaugeResidualChange(const TimeLevels<ScalarField<T>>& lambda, double m0,
                                   const PhysicalConstants& k = {}) {
    ScalarField<T> r = div(grad(lambda.cur));
    r.axpy(T(-1.0 / (k.c * k.c)), lambda.d2());
    r.axpy(T(-2.0 * m0 / k.hbar), lambda.d1());
    return r;
}

/// Gauge function L with its velocity, evolved under
///   L_tt/c^2 - Lap L + 2 (m0/hbar) L_t = 0.
template <class T>
struct GaugeFunction {
    ScalarField<T> lambda;
    ScalarField<T> dLambda;
    double t = 0.0;
};

template <class T>
GaugeFunction<T> stepGaugeFunction(GaugeFunction<T> g, double m0, const PhysicalConstants& k, double dt) {
    checkCfl(dt, g.lambda.grid().h, k.c, "stepGaugeFunction");
    const WaveCoefficients coef{k.c, m0 * k.c * k.c / k.hbar, 0.0};
    waveStep(g.lambda, g.dLambda, coef, dt);
    g.t += dt;
    if (!allFinite(g.lambda)) throw NumericalDivergence("stepGaugeFunction", 0);
    return g;
}

// ---------------------------------------------------------------------------
// Continuity with torque density

template <class T>
struct TorqueDensity {
    ScalarField<T> Te;
    ScalarField<T> Tm;
};

template <class T>
struct ContinuityReport {
    ScalarField<T> re;  // div J + rhoE_t - Te
    ScalarField<T> rm;  // div K + rhoM_t / c^2 - Tm
    TorqueDensity<T> torque;
};

/// Te = -(2 m0 c^2/hbar) rhoE, Tm = -(2 m0/hbar) rhoM.
template <class T>
TorqueDensity<T> torqueDensity(const GeneralizedCurrent<T>& c, const QuantumLinkage& link) {
    const auto& k = link.constants;
    TorqueDensity<T> t{c.rhoE, c.rhoM};
    t.Te *= T(-2.0 * link.m0 * k.c * k.c / k.hbar);
    t.Tm *= T(-2.0 * link.m0 / k.hbar);
    return t;
}

template <class T>
ContinuityReport<T> continuityResidual(const GeneralizedCurrent<T>& c, const QuantumLinkage& link) {
    require(c.dRhoE && c.dRhoM, "continuityResidual: charge-density time derivatives are missing");
    const auto& k = link.constants;
    ContinuityReport<T> r;
    r.torque = torqueDensity(c, link);
    r.re = div(c.J);
    r.re += *c.dRhoE;
    if (link.m0 != 0.0) r.re -= r.torque.Te;
    r.rm = div(c.K);
    r.rm.axpy(T(1.0 / (k.c * k.c)), *c.dRhoM);
    if (link.m0 != 0.0) r.rm -= r.torque.Tm;
    return r;
}

/// J_eff = J + P_e, K_eff = K + P_m with P = grad chi and div grad chi = -T,
/// the curl-free polarization carrying the torque density.
inline GeneralizedCurrent<double> effectiveCurrent(const GeneralizedCurrent<double>& c,
                                                   const TorqueDensity<double>& torque,
                                                   const PoissonOptions& opt = {}) {
    GeneralizedCurrent<double> out = c;
    auto polarization = [&](const RealScalar& T) {
        if (maxAbs(T) == 0.0) return grad(RealScalar(T.grid(), T.stagger()));
        return grad(solvePoisson(-T, opt).chi);
    };
    out.J += polarization(torque.Te);
    out.K += polarization(torque.Tm);
    return out;
}

// ---------------------------------------------------------------------------
// Wave residual of currents and charges

template <class T>
struct CurrentWaveResidual {
    VectorField<T> J;
    VectorField<T> K;
    ScalarField<T> rhoE;
    ScalarField<T> rhoM;
};

/// S_tt/c^2 - Lap S + 2 (m0/hbar) S_t + (m0 c/hbar)^2 S for S in (J, K, rhoE, rhoM).
template <class T>
CurrentWaveResidual<T> currentWaveResidual(const TimeLevels<GeneralizedCurrent<T>>& c, double m0,
                                           const PhysicalConstants& k = {}) {
    auto op = [&](const auto& a, const auto& b, const auto& d) {
        using F = std::decay_t<decltype(a)>;
        return -dampedWaveOperator(TimeLevels<F>{a, b, d, c.dt}, m0, k);
    };
    return {op(c.prev.J, c.cur.J, c.next.J), op(c.prev.K, c.cur.K, c.next.K),
            op(c.prev.rhoE, c.cur.rhoE, c.next.rhoE), op(c.prev.rhoM, c.cur.rhoM, c.next.rhoM)};
}

// ---------------------------------------------------------------------------
// Screening (Meissner analogue)

struct LondonConfig {
    int cells = 400;            // nodes x_i = i h, i = 0..cells
    double h = 0.05;
    double H0 = 1.0;
    double relaxation = 0.9;    // Jacobi damping factor
    double tolerance = 1e-10;   // on max update, relative to H0
    std::size_t maxIterations = 1000000;
    PhysicalConstants constants;
};

struct LondonReport {
    double m0 = 0.0;
    double lambdaTheory = 0.0;  // hbar/(m0 c)
    double lambdaFit = 0.0;
    double relError = 0.0;
    std::size_t nPoints = 0;    // samples used by the fit
    std::size_t iterations = 0;
    std::vector<double> x;
    std::vector<double> H;
};

/// Relaxes -H'' + (m0 c/hbar)^2 H = 0 on [0, L] with H(0) = H0, H(L) = 0 and
/// fits log H over the region H > 1e-3 H0, x <= L/2.
inline LondonReport londonExperiment(double m0, const LondonConfig& cfg = {}) {
    require(m0 > 0.0, "londonExperiment: no screening for m0 <= 0");
    require(cfg.cells >= 4 && cfg.h > 0.0, "londonExperiment: invalid grid");
    require(cfg.relaxation > 0.0 && cfg.relaxation <= 1.0, "londonExperiment: relaxation must be in (0, 1]");
    const auto& k = cfg.constants;
    const double lambda = k.hbar / (m0 * k.c);
    const double L = cfg.cells * cfg.h;
    require(L >= 10.0 * lambda, "londonExperiment: domain shorter than 10 penetration depths (L=" +
                                    std::to_string(L) + ", lambda=" + std::to_string(lambda) + ")");

    const std::size_t n = static_cast<std::size_t>(cfg.cells) + 1;
    const double h2 = cfg.h * cfg.h;
    const double diag = 2.0 + h2 / (lambda * lambda);
    std::vector<double> H(n, 0.0), next(n, 0.0);
    H[0] = next[0] = cfg.H0;

    LondonReport rep;
    std::size_t it = 0;
    for (;; ++it) {
        if (it == cfg.maxIterations)
            throw NonConvergence("londonExperiment: no convergence after " + std::to_string(it) + " iterations");
        double change = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double jacobi = (H[i - 1] + H[i + 1]) / diag;
            next[i] = H[i] + cfg.relaxation * (jacobi - H[i]);
            change = std::max(change, std::abs(next[i] - H[i]));
        }
        std::swap(H, next);
        if (change <= cfg.tolerance * std::abs(cfg.H0)) break;
    }

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) * cfg.h;
        if (x > 0.5 * L || !(H[i] > 1e-3 * cfg.H0)) continue;
        xs.push_back(x);
        ys.push_back(std::log(H[i]));
    }
    require(xs.size() >= 2, "londonExperiment: too few samples in the fit window");
    const auto fit = linearFit(xs, ys);
    require(fit.slope < 0.0, "londonExperiment: profile does not decay");

    rep.m0 = m0;
    rep.lambdaTheory = lambda;
    rep.lambdaFit = -1.0 / fit.slope;
    rep.relError = std::abs(rep.lambdaFit - lambda) / lambda;
    rep.nPoints = xs.size();
    rep.iterations = it + 1;
    rep.H = std::move(H);
    rep.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) rep.x[i] = static_cast<double>(i) * cfg.h;
    return rep;
}

struct LondonTableRow {
    std::string relation;
    std::optional<double> coefficient;  // empty for the classical placeholder
    std::optional<double> residualNorm;
};

struct LondonTableOptions {
    int cells = 64;       // periodic line of length 2 pi
    double dt = 0.02;
    std::size_t steps = 50;
};

/// Coefficients of the London-type relations for each family plus on-grid
/// checks. The time-derivative rows integrate phi under the damped equation
/// and A from A_t = -grad phi, then compare dJ/dt with kappa grad phi.
inline std::vector<LondonTableRow> londonTableReport(const QuantumLinkage& link,
                                                     const LondonTableOptions& opt = {}) {
    const auto& k = link.constants;
    const double kappa = link.kappa();
    const double L = 2.0 * std::numbers::pi;
    const Grid g = Grid::line(opt.cells, L / opt.cells);
    const double gam = link.gamma();
    const WaveCoefficients coef{k.c, gam, gam * gam};
    require(opt.steps >= 2, "londonTableReport: at least two steps required");

    // Returns max |dJ/dt - kappa grad phi| at the middle level and the final A.
    auto linkedRate = [&](Stagger sPhi, double phase) {
        RealScalar phi = sampleScalar<double>(g, sPhi, [&](double x, double, double) {
            return std::sin(x + phase) + 0.3 * std::cos(2.0 * x);
        });
        RealScalar dphi(g, sPhi);
        RealVector A = sampleVector<double>(g, sPhi == Stagger::node ? Stagger::edge : Stagger::face,
                                            [](double x, double, double) {
                                                return Vec3<double>{0.0, std::cos(x), 0.2 * std::sin(x)};
                                            });
        std::vector<RealVector> Js;
        std::vector<RealScalar> phis;
        for (std::size_t s = 0; s <= opt.steps; ++s) {
            Js.push_back(-kappa * A);
            phis.push_back(phi);
            if (s == opt.steps) break;
            const RealVector g0 = grad(phi);
            waveStep(phi, dphi, coef, opt.dt);
            A.axpy(-0.5 * opt.dt, g0);
            A.axpy(-0.5 * opt.dt, grad(phi));
        }
        const std::size_t mid = opt.steps / 2;
        RealVector rate = Js[mid + 1];
        rate -= Js[mid - 1];
        rate *= 0.5 / opt.dt;
        rate.axpy(-kappa, grad(phis[mid]));
        return std::make_pair(maxAbs(rate), A);
    };

    const auto [rateE, A] = linkedRate(Stagger::node, 0.0);
    const auto [rateM, B] = linkedRate(Stagger::cell, 0.7);

    auto curlCheck = [&](const RealVector& P) {
        RealVector lhs = curl(-kappa * P);
        const RealVector rhs = -kappa * curl(P);
        const double scale = std::max(maxAbs(rhs), 1e-300);
        lhs -= rhs;
        return maxAbs(lhs) / scale;
    };
    auto proportionCheck = [&](const RealVector& P) {
        RealVector J = -kappa * P;
        J.axpy(kappa, P);
        return maxAbs(J);
    };

    return {
        {"classical: dJs/dt = (n_s e^2/m_e) E", std::nullopt, std::nullopt},
        {"dJ/dt = kappa E_l", kappa, rateE},
        {"dK/dt = kappa H_l", kappa, rateM},
        {"curl J = -kappa curl A", kappa, curlCheck(A)},
        {"curl K = -kappa curl B", kappa, curlCheck(B)},
        {"J = -kappa A", kappa, proportionCheck(A)},
        {"K = -kappa B", kappa, proportionCheck(B)},
    };
}

} // namespace dyonwave
