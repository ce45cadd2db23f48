// external_field.hpp - wave function minimally coupled to dyonic potentials
//
// Coupling: grad -> grad - (Q/(i hbar)) V,  d/dt -> d/dt + (Q/(i hbar)) Phi,
// with Q = e + ig, V = A + iB and Phi = phiE + i phiM. Products of complex
// vectors are bilinear (no conjugation). Gamma = V x Psi.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dyonwave/constants.hpp"
#include "dyonwave/grid.hpp"
#include "dyonwave/operators.hpp"
#include "dyonwave/quantum_wave.hpp"
#include "dyonwave/wave_stepper.hpp"

namespace dyonwave {

using cd = std::complex<double>;

struct CoupledConfig {
    cd Q{0.0, 0.0};
    ComplexVector V;
    ComplexScalar Phi;
    std::optional<ComplexVector> dV;          // V_t, needed by the field decomposition check
    std::optional<ComplexVector> curlSource;  // S subtracted from the curl equation (manufactured states)
    PhysicalConstants constants;

    bool coupled() const { return Q != cd{0.0, 0.0}; }

    void validate(const Grid& g) const {
        require(V.grid() == g && Phi.grid() == g, "coupling potentials must share the wave-function grid");
        expectStagger(V, Stagger::collocated, "V");
        expectStagger(Phi, Stagger::collocated, "Phi");
    }

    static CoupledConfig uncoupled(const Grid& g, const PhysicalConstants& k = {}) {
        CoupledConfig c;
        c.V = ComplexVector(g, Stagger::collocated);
        c.Phi = ComplexScalar(g, Stagger::collocated);
        c.constants = k;
        return c;
    }
};

struct CoupledOperators {
    std::function<ComplexVector(const ComplexScalar&)> gradient;
    /// (u, u_t) -> shifted time derivative
    std::function<ComplexScalar(const ComplexScalar&, const ComplexScalar&)> timeDerivative;
};

inline CoupledOperators minimalCoupleOperators(const CoupledConfig& cfg) {
    CoupledOperators op;
    if (!cfg.coupled()) {
        op.gradient = [](const ComplexScalar& u) { return grad(u); };
        op.timeDerivative = [](const ComplexScalar&, const ComplexScalar& du) { return du; };
        return op;
    }
    const cd shift = cfg.Q / (cd{0.0, 1.0} * cfg.constants.hbar);
    op.gradient = [V = cfg.V, shift](const ComplexScalar& u) {
        ComplexVector g = grad(u);
        g.axpy(-shift, mulField(u, V));
        return g;
    };
    op.timeDerivative = [Phi = cfg.Phi, shift](const ComplexScalar& u, const ComplexScalar& du) {
        ComplexScalar d = du;
        d.axpy(shift, mulField(Phi, u));
        return d;
    };
    return op;
}

struct CoupledFirstOrder {
    ComplexScalar r82;  // div Psi - Psi0_t/c^2 - (m0/hbar) Psi0
    ComplexVector r83;  // grad Psi0 - Psi_t + (Qc/hbar) V x Psi - gamma Psi
    ComplexVector r84;  // curl Psi - (Qc/hbar)(Phi Psi + V Psi0) [- S]
    ComplexScalar r85;  // Phi Psi0 + c^2 V.Psi
};

inline CoupledFirstOrder coupledFirstOrderResiduals(const WaveState<cd>& w, const CoupledConfig& cfg) {
    cfg.validate(w.grid());
    const auto& k = w.constants;
    auto base = firstOrderResiduals(w);
    CoupledFirstOrder r{std::move(base.scalar), std::move(base.vector), std::move(base.curl), {}};
    if (cfg.coupled()) {
        const cd q = cfg.Q * k.c / k.hbar;
        r.r83.axpy(q, crossField(cfg.V, w.psi));
        ComplexVector src = mulField(cfg.Phi, w.psi);
        src += mulField(w.psi0, cfg.V);
        r.r84.axpy(-q, src);
    }
    if (cfg.curlSource) r.r84 -= *cfg.curlSource;
    r.r85 = mulField(cfg.Phi, w.psi0);
    r.r85.axpy(cd(k.c * k.c), dotField(cfg.V, w.psi));
    return r;
}

/// Phi = -c^2 (V.Psi) / Psi0 wherever |Psi0| > threshold; other samples are
/// set to zero and flagged in `masked`.
struct ScalarPotentialSolution {
    ComplexScalar Phi;
    std::vector<bool> masked;
    std::size_t maskedCount = 0;
};

inline ScalarPotentialSolution solveScalarPotential(const ComplexVector& V, const ComplexVector& psi,
                                                    const ComplexScalar& psi0, double c,
                                                    double threshold = 1e-8) {
    const ComplexScalar vp = dotField(V, psi);
    ScalarPotentialSolution s{ComplexScalar(psi0.grid(), Stagger::collocated),
                              std::vector<bool>(psi0.size(), false), 0};
    for (std::size_t i = 0; i < psi0.size(); ++i) {
        if (std::abs(psi0[i]) > threshold) {
            s.Phi[i] = -c * c * vp[i] / psi0[i];
        } else {
            s.masked[i] = true;
            ++s.maskedCount;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Second-order forms

struct CoupledWaveResidual {
    ComplexVector rVec;     // t-form vector equation
    ComplexScalar rScal;    // t-form scalar equation
    ComplexVector rVecTau;  // exponentially weighted (tau) form
    ComplexScalar rScalTau;
    double consistency = 0.0;  // max difference between the two forms
};

namespace detail {

/// V at the three levels, linear in time when V_t is supplied.
inline std::array<ComplexVector, 3> potentialLevels(const CoupledConfig& cfg, double dt) {
    std::array<ComplexVector, 3> v{cfg.V, cfg.V, cfg.V};
    if (cfg.dV) {
        v[0].axpy(cd(-dt), *cfg.dV);
        v[2].axpy(cd(dt), *cfg.dV);
    }
    return v;
}

} // namespace detail

/// Residuals at the middle of three consecutive states:
///   Lap Psi - Psi_tt/c^2 + (Q/(hbar c)) Gamma_t - 2 (m0/hbar) Psi_t
///       + (m0 Q c/hbar^2) Gamma - (m0 c/hbar)^2 Psi
///   Lap Psi0 - Psi0_tt/c^2 + (Qc/hbar) div Gamma - 2 (m0/hbar) Psi0_t - (m0 c/hbar)^2 Psi0
/// and the compact forms with d/dtau = d/dt + m0 c^2/hbar, discretised as
/// exp(-gamma t) d/dt exp(gamma t). Without coupling the t-forms are the
/// damped-wave residuals.
inline CoupledWaveResidual coupledWaveResiduals(const TimeLevels<WaveState<cd>>& w, const CoupledConfig& cfg) {
    const auto& mid = w.cur;
    cfg.validate(mid.grid());
    const auto& k = mid.constants;
    const double c2 = k.c * k.c;
    const double gam = mid.gamma();
    const double dt = w.dt;

    const auto psi = vectorLevels(w.prev, w.cur, w.next, dt);
    const auto psi0 = scalarLevels(w.prev, w.cur, w.next, dt);

    CoupledWaveResidual r;
    r.rVec = dampedWaveOperator(psi, mid.m0, k);
    r.rScal = dampedWaveOperator(psi0, mid.m0, k);

    // tau forms
    const double ep = std::exp(gam * dt), em = std::exp(-gam * dt);
    auto tauSecond = [&](const auto& lv) {
        auto d = lv.next;
        d *= cd(ep);
        d.axpy(cd(-2.0), lv.cur);
        d.axpy(cd(em), lv.prev);
        d *= cd(1.0 / (dt * dt));
        return d;
    };
    r.rVecTau = laplacian4(psi.cur);
    r.rVecTau.axpy(cd(-1.0 / c2), tauSecond(psi));
    r.rScalTau = laplacian4(psi0.cur);
    r.rScalTau.axpy(cd(-1.0 / c2), tauSecond(psi0));

    if (cfg.coupled()) {
        const auto V = detail::potentialLevels(cfg, dt);
        TimeLevels<ComplexVector> G{crossField(V[0], psi.prev), crossField(V[1], psi.cur),
                                    crossField(V[2], psi.next), dt};
        const cd qVec = cfg.Q / (k.hbar * k.c);
        const cd qScal = cfg.Q * k.c / k.hbar;
        r.rVec.axpy(qVec, G.d1());
        r.rVec.axpy(mid.m0 * cfg.Q * k.c / (k.hbar * k.hbar), G.cur);
        const ComplexScalar divG = div(G.cur);
        r.rScal.axpy(qScal, divG);

        ComplexVector tauG = G.next;
        tauG *= cd(ep);
        tauG.axpy(cd(-em), G.prev);
        tauG *= cd(0.5 / dt);
        r.rVecTau.axpy(qVec, tauG);
        r.rScalTau.axpy(qScal, divG);
    }
    r.consistency = std::max(maxAbs(r.rVec - r.rVecTau), maxAbs(r.rScal - r.rScalTau));
    return r;
}

// ---------------------------------------------------------------------------
// Identities for Gamma

struct IdentityCheck {
    std::string identity;
    double h = 0.0;
    double residualNorm = 0.0;   // max over the grid
    std::optional<double> printedMismatch;  // decomposition as printed, when different
};

struct GammaIdentityInput {
    ComplexVector psi;
    std::optional<ComplexScalar> psi0;   // enables the curl-projection check
    std::optional<ComplexVector> omega;  // E + iH; with cfg.dV enables the decomposition check
};

/// div(V x Psi) = Psi.curl V - V.curl Psi; for states obeying the curl
/// equation V.curl Psi = (Qc/hbar)(V.V - Phi^2/c^2) Psi0 (+ V.S); and with
/// Omega = E + iH built from the same potentials, curl V = -i (Omega + grad Phi + V_t).
inline std::vector<IdentityCheck> gammaDivergenceIdentity(const CoupledConfig& cfg, const GammaIdentityInput& in) {
    const Grid& g = in.psi.grid();
    cfg.validate(g);
    const auto& k = cfg.constants;
    std::vector<IdentityCheck> out;

    const ComplexVector curlV = curl(cfg.V);
    const ComplexVector curlPsi = curl(in.psi);
    const ComplexScalar vCurlPsi = dotField(cfg.V, curlPsi);
    const ComplexScalar psiCurlV = dotField(in.psi, curlV);
    {
        ComplexScalar lhs = div(crossField(cfg.V, in.psi));
        lhs -= psiCurlV;
        lhs += vCurlPsi;
        out.push_back({"div_gamma", g.h, maxAbs(lhs), std::nullopt});
    }
    if (in.psi0) {
        const cd q = cfg.Q * k.c / k.hbar;
        ComplexScalar v2 = dotField(cfg.V, cfg.V);
        ComplexScalar phi2 = mulField(cfg.Phi, cfg.Phi);
        v2.axpy(cd(-1.0 / (k.c * k.c)), phi2);
        ComplexScalar rhs = mulField(v2, *in.psi0);
        rhs *= q;
        if (cfg.curlSource) rhs += dotField(cfg.V, *cfg.curlSource);
        ComplexScalar d = vCurlPsi;
        d -= rhs;
        out.push_back({"curl_projection", g.h, maxAbs(d), std::nullopt});
    }
    if (in.omega && cfg.dV) {
        const cd I{0.0, 1.0};
        const ComplexScalar pOmega = dotField(in.psi, *in.omega);
        const ComplexScalar pGradPhi = dotField(in.psi, grad(cfg.Phi));
        const ComplexScalar pVt = dotField(in.psi, *cfg.dV);

        ComplexScalar derived = pOmega;
        derived += pGradPhi;
        derived += pVt;
        derived *= -I;
        derived -= psiCurlV;
        derived *= cd(-1.0);

        ComplexScalar printed = pOmega;
        printed *= I;
        printed += pGradPhi;
        printed += pVt;
        printed -= psiCurlV;
        out.push_back({"field_decomposition", g.h, maxAbs(derived), maxAbs(printed)});
    }
    return out;
}

} // namespace dyonwave
