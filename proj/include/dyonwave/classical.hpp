// classical.hpp - dual-source (dyonic) Maxwell fields on the Yee lattice
//
//   div E  = rhoE / eps0          curl E = -H_t - mu0 K
//   div H  = mu0 rhoM             curl H = E_t / c^2 + mu0 J
//
// E lives on edges and H on faces (or the reverse after a duality map);
// charges sit on the scalar placement reached by div of the matching field.
// Conducting media add the currents sigmaE E to J and c^2 sigmaM H to K, so
// E relaxes at the rate mu0 c^2 sigmaE and H at mu0 c^2 sigmaM.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dyonwave/constants.hpp"
#include "dyonwave/dyon.hpp"
#include "dyonwave/errors.hpp"
#include "dyonwave/grid.hpp"
#include "dyonwave/operators.hpp"
#include "dyonwave/wave_stepper.hpp"

namespace dyonwave {

struct MediumParams {
    double sigmaE = 0.0;
    double sigmaM = 0.0;
    PhysicalConstants constants;

    void validate() const {
        require(sigmaE >= 0.0 && sigmaM >= 0.0, "conductivities must be non-negative");
        constants.validate();
    }
    double rateE() const { return constants.mu0 * constants.c * constants.c * sigmaE; }
    double rateM() const { return constants.mu0 * constants.c * constants.c * sigmaM; }
};

/// External currents J (placed with E) and K (placed with H). Either static
/// fields or a function of time; an empty source means zero.
struct CurrentSource {
    std::function<std::pair<RealVector, RealVector>(double)> fn;
    std::optional<RealVector> J;
    std::optional<RealVector> K;

    bool empty() const { return !fn && !J && !K; }

    std::pair<RealVector, RealVector> at(double t, const Grid& g, Stagger sE, Stagger sH) const {
        if (fn) {
            auto jk = fn(t);
            expectStagger(jk.first, sE, "J");
            expectStagger(jk.second, sH, "K");
            return jk;
        }
        RealVector j = J ? *J : RealVector(g, sE);
        RealVector k = K ? *K : RealVector(g, sH);
        expectStagger(j, sE, "J");
        expectStagger(k, sH, "K");
        return {std::move(j), std::move(k)};
    }
};

struct EMState {
    RealVector E;
    RealVector H;
    RealScalar rhoE;  // at div(E) placement
    RealScalar rhoM;  // at div(H) placement
    double tE = 0.0;
    double tH = 0.0;
    std::size_t step = 0;
    CurrentSource sources;

    const Grid& grid() const { return E.grid(); }

    /// Yee placement, E at t and H at t - dt/2, no charges.
    static EMState yee(const Grid& g, double t, double dt) {
        EMState s;
        s.E = RealVector(g, Stagger::edge);
        s.H = RealVector(g, Stagger::face);
        s.rhoE = RealScalar(g, Stagger::node);
        s.rhoM = RealScalar(g, Stagger::cell);
        s.tE = t;
        s.tH = t - 0.5 * dt;
        return s;
    }

    void validate() const {
        require(E.grid() == H.grid(), "E and H live on different grids");
        require((E.stagger() == Stagger::edge && H.stagger() == Stagger::face) ||
                    (E.stagger() == Stagger::face && H.stagger() == Stagger::edge),
                std::string("E/H placement must be edge/face or face/edge, got ") +
                    toString(E.stagger()) + "/" + toString(H.stagger()));
        expectStagger(rhoE, E.stagger() == Stagger::edge ? Stagger::node : Stagger::cell, "rhoE");
        expectStagger(rhoM, H.stagger() == Stagger::edge ? Stagger::node : Stagger::cell, "rhoM");
    }

    bool finite() const { return allFinite(E) && allFinite(H) && allFinite(rhoE) && allFinite(rhoM); }
};

namespace detail {

/// Exponential integrator weights: x+ = decay x + gain rhs for x' = -rate x + rhs.
inline std::pair<double, double> relaxation(double rate, double dt) {
    if (rate == 0.0) return {1.0, dt};
    const double decay = std::exp(-rate * dt);
    return {decay, -std::expm1(-rate * dt) / rate};
}

} // namespace detail

/// One leapfrog step of the dual-source equations. The field that lags in time
/// is advanced first, so both the usual (H behind) and the duality-mapped
/// (E behind) phases are handled. Charges are advanced by the discrete
/// continuity equation, which keeps div E - rhoE/eps0 and div H - mu0 rhoM at
/// their initial values.
inline EMState stepGDM(EMState s, const MediumParams& m, double dt) {
    s.validate();
    m.validate();
    const auto& k = m.constants;
    checkCfl(dt, s.grid().h, k.c, "stepGDM");
    require(std::abs(std::abs(s.tE - s.tH) - 0.5 * dt) <= 1e-9 * dt,
            "stepGDM: E and H must be staggered by dt/2 in time");

    const double c2 = k.c * k.c;
    const Grid& g = s.grid();

    auto advanceH = [&] {
        const double tMid = s.tH + 0.5 * dt;
        auto jk = s.sources.at(tMid, g, s.E.stagger(), s.H.stagger());
        RealVector rhs = curl(s.E);
        rhs *= -1.0;
        rhs.axpy(-k.mu0, jk.second);
        const auto [decay, gain] = detail::relaxation(m.rateM(), dt);
        s.H *= decay;
        s.H.axpy(gain, rhs);
        // rhoM_t = -div K - mu0 c^2 sigmaM rhoM
        RealScalar divK = div(jk.second);
        s.rhoM *= decay;
        s.rhoM.axpy(-gain, divK);
        s.tH += dt;
    };
    auto advanceE = [&] {
        const double tMid = s.tE + 0.5 * dt;
        auto jk = s.sources.at(tMid, g, s.E.stagger(), s.H.stagger());
        RealVector rhs = curl(s.H);
        rhs *= c2;
        rhs.axpy(-k.mu0 * c2, jk.first);
        const auto [decay, gain] = detail::relaxation(m.rateE(), dt);
        s.E *= decay;
        s.E.axpy(gain, rhs);
        RealScalar divJ = div(jk.first);
        s.rhoE *= decay;
        s.rhoE.axpy(-gain, divJ);
        s.tE += dt;
    };

    if (s.tH < s.tE) {
        advanceH();
        advanceE();
    } else {
        advanceE();
        advanceH();
    }
    ++s.step;
    if (!s.finite()) throw NumericalDivergence("stepGDM", s.step);
    return s;
}

inline EMState stepGDM(EMState s, const MediumParams& m, double dt, std::size_t steps) {
    for (std::size_t i = 0; i < steps; ++i) s = stepGDM(std::move(s), m, dt);
    return s;
}

/// Duality map E -> H, H -> -E, rhoE -> rhoM, rhoM -> -rhoE, J -> K, K -> -J.
/// Placements move with the fields.
inline EMState dualityMap(const EMState& s) {
    EMState d;
    d.E = s.H;
    d.H = -s.E;
    d.rhoE = s.rhoM;
    d.rhoM = -s.rhoE;
    d.tE = s.tH;
    d.tH = s.tE;
    d.step = s.step;
    const CurrentSource src = s.sources;
    if (!src.empty()) {
        d.sources.fn = [src, g = s.grid(), sE = s.E.stagger(), sH = s.H.stagger()](double t) {
            auto jk = src.at(t, g, sE, sH);
            return std::make_pair(std::move(jk.second), -jk.first);
        };
    }
    return d;
}

inline MediumParams dualityMap(const MediumParams& m) {
    MediumParams d = m;
    std::swap(d.sigmaE, d.sigmaM);
    return d;
}

/// 1/2 sum(E.E + H_old.H_new) h^3: the quadratic form conserved by the
/// vacuum leapfrog when H is sampled on both sides of E's time level.
inline double leapfrogEnergy(const RealVector& E, const RealVector& Hbefore, const RealVector& Hafter) {
    Hbefore.checkCongruent(Hafter);
    double s = 0.0;
    for (int a = 0; a < 3; ++a) {
        for (double x : E[a]) s += x * x;
        for (std::size_t i = 0; i < Hbefore.size(); ++i) s += Hbefore[a][i] * Hafter[a][i];
    }
    const double h = E.grid().h;
    return 0.5 * s * h * h * h;
}

// ---------------------------------------------------------------------------
// Potentials

/// E = -grad phiE - A_t - curl B,  H = -grad phiM - B_t + curl A.
template <class T>
std::pair<VectorField<T>, VectorField<T>> fieldsFromPotentials(const GeneralizedPotential<T>& p) {
    require(p.hasDerivatives(), "fieldsFromPotentials: time derivatives of the potentials are missing");
    VectorField<T> E = grad(p.phiE);
    E *= T(-1);
    E -= *p.dA;
    E -= curl(p.B);
    VectorField<T> H = grad(p.phiM);
    H *= T(-1);
    H -= *p.dB;
    H += curl(p.A);
    return {std::move(E), std::move(H)};
}

/// div A + phi_t / c^2 + k phi
template <class T>
ScalarField<T> lorenzResidual(const VectorField<T>& A, const ScalarField<T>& phi,
                              const ScalarField<T>& dPhi, double c, double k) {
    ScalarField<T> r = div(A);
    r.axpy(T(1.0 / (c * c)), dPhi);
    if (k != 0.0) r.axpy(T(k), phi);
    return r;
}

/// Lorenz-gauge residuals in a conducting medium (sigma = 0 gives the vacuum form).
template <class T>
std::pair<ScalarField<T>, ScalarField<T>> gaugeResidualClassical(const GeneralizedPotential<T>& p,
                                                                 const MediumParams& m) {
    require(p.hasDerivatives(), "gaugeResidualClassical: time derivatives of the potentials are missing");
    const auto& k = m.constants;
    return {lorenzResidual(p.A, p.phiE, *p.dPhiE, k.c, k.mu0 * m.sigmaE),
            lorenzResidual(p.B, p.phiM, *p.dPhiM, k.c, k.mu0 * m.sigmaM)};
}

struct PotentialStepDiagnostics {
    double gaugeResidualIn = 0.0;  // max |L| over both sectors at the start of the step
    bool gaugeWarning = false;
};

/// Advances both four-potentials by dt (velocities in dA, dPhiE, ...).
///
///   A_tt   + mu0 c^2 sigmaE A_t   = c^2 (Lap A - grad L + mu0 J)
///   phi_tt + mu0 c^2 sigmaE phi_t = c^2 (Lap phi + rhoE/eps0)
///
/// and the magnetic mirror with sigmaM, K and mu0 rhoM. L is the conducting
/// Lorenz residual, evaluated from the current fields at both ends of the
/// step. The scalar equations are taken in their Lorenz-reduced form.
/// Sources refer to the start of the step; when dJ etc. are present they are
/// extrapolated linearly to the end.
template <class T>
GeneralizedPotential<T> evolvePotentialWave(GeneralizedPotential<T> p, const GeneralizedCurrent<T>& src,
                                            const MediumParams& m, double dt,
                                            PotentialStepDiagnostics* diag = nullptr,
                                            double gaugeWarnThreshold = 1e-6) {
    require(p.hasDerivatives(), "evolvePotentialWave: potential velocities are missing");
    m.validate();
    const auto& k = m.constants;
    checkCfl(dt, p.grid().h, k.c, "evolvePotentialWave");
    const double c2 = k.c * k.c;

    auto sectorStep = [&](VectorField<T>& A, VectorField<T>& dA, ScalarField<T>& phi,
                          ScalarField<T>& dPhi, const VectorField<T>& J,
                          const std::optional<VectorField<T>>& dJ, const ScalarField<T>& rho,
                          const std::optional<ScalarField<T>>& dRho, double sigma, double rhoScale) {
        const double damping = k.mu0 * sigma;
        const WaveCoefficients coef{k.c, 0.5 * c2 * damping, 0.0};

        ScalarField<T> fPhi = rho;
        fPhi *= T(c2 * rhoScale);
        ScalarField<T> fPhiNext = fPhi;
        if (dRho) fPhiNext.axpy(T(c2 * rhoScale * dt), *dRho);
        VectorField<T> fA = J;
        fA *= T(c2 * k.mu0);
        VectorField<T> fANext = fA;
        if (dJ) fANext.axpy(T(c2 * k.mu0 * dt), *dJ);

        const ScalarField<T> L0 = lorenzResidual(A, phi, dPhi, k.c, damping);
        const double l0 = maxAbs(L0);

        ScalarField<T> accPhi = waveAcceleration(phi, coef, &fPhi);
        waveFirstHalf(phi, dPhi, accPhi, coef, dt);
        waveSecondHalf(dPhi, waveAcceleration(phi, coef, &fPhiNext), coef, dt);

        VectorField<T> gradL = grad(L0);
        VectorField<T> accA = waveAcceleration(A, coef, &fA);
        accA.axpy(T(-c2), gradL);
        waveFirstHalf(A, dA, accA, coef, dt);
        const ScalarField<T> L1 = lorenzResidual(A, phi, dPhi, k.c, damping);
        VectorField<T> accANext = waveAcceleration(A, coef, &fANext);
        accANext.axpy(T(-c2), grad(L1));
        waveSecondHalf(dA, accANext, coef, dt);
        return l0;
    };

    const double le = sectorStep(p.A, *p.dA, p.phiE, *p.dPhiE, src.J, src.dJ, src.rhoE, src.dRhoE,
                                 m.sigmaE, 1.0 / k.eps0);
    const double lm = sectorStep(p.B, *p.dB, p.phiM, *p.dPhiM, src.K, src.dK, src.rhoM, src.dRhoM,
                                 m.sigmaM, k.mu0);
    const double l = std::max(le, lm);
    if (diag) {
        diag->gaugeResidualIn = l;
        diag->gaugeWarning = l > gaugeWarnThreshold;
    }
    if (!(allFinite(p.A) && allFinite(p.B) && allFinite(p.phiE) && allFinite(p.phiM)))
        throw NumericalDivergence("evolvePotentialWave", 0);
    return p;
}

// ---------------------------------------------------------------------------
// Conducting-medium wave residuals on stored trajectories

/// Residuals at history[index] (1 <= index <= size-2, default the middle):
///   rE = E_tt/c^2 - Lap E + mu0 sigmaE E_t + grad(rhoE/eps0)
///   rH = H_tt/c^2 - Lap H + mu0 sigmaM H_t + grad(mu0 rhoM)
/// The five-point Laplacian is used so the residual measures truncation error.
/// Without external currents these vanish for each sector whose partner
/// conductivity is zero.
inline std::pair<RealVector, RealVector> conductingFieldWaveResidual(const std::vector<EMState>& history,
                                                                     const MediumParams& m,
                                                                     std::optional<std::size_t> index = {}) {
    require(history.size() >= 3, "conductingFieldWaveResidual: at least 3 time levels are required");
    const std::size_t i = index.value_or(history.size() / 2);
    require(i >= 1 && i + 1 < history.size(), "conductingFieldWaveResidual: index needs neighbours");
    const auto& a = history[i - 1];
    const auto& b = history[i];
    const auto& c = history[i + 1];
    const double dt = b.tE - a.tE;
    require(dt > 0.0 && std::abs((c.tE - b.tE) - dt) <= 1e-9 * dt,
            "conductingFieldWaveResidual: time levels must be equally spaced");
    const auto& k = m.constants;

    auto residual = [&](const RealVector& u0, const RealVector& u1, const RealVector& u2,
                        const RealScalar& rho, double rhoScale, double sigma) {
        TimeLevels<RealVector> lv{u0, u1, u2, dt};
        RealVector r = lv.d2();
        r *= 1.0 / (k.c * k.c);
        r -= laplacian4(u1);
        if (sigma != 0.0) r.axpy(k.mu0 * sigma, lv.d1());
        r.axpy(rhoScale, grad(rho));
        return r;
    };
    return {residual(a.E, b.E, c.E, b.rhoE, 1.0 / k.eps0, m.sigmaE),
            residual(a.H, b.H, c.H, b.rhoM, k.mu0, m.sigmaM)};
}

} // namespace dyonwave
