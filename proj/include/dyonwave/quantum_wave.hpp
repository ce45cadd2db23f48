// quantum_wave.hpp - quaternionic wave function of a massive particle
//
// State: vector part Psi, scalar part Psi0 (both collocated, complex by
// default) and their time derivatives. With gamma = m0 c^2 / hbar:
//
//   first-order system   div Psi - Psi0_t / c^2 - (m0/hbar) Psi0 = 0
//                        grad Psi0 - Psi_t - gamma Psi            = 0
//                        curl Psi                                  = 0
//   damped wave          Lap u - u_tt / c^2 - 2 (m0/hbar) u_t - (m0 c/hbar)^2 u = 0
//
// Plane waves exp(i(w t - k x)) have w = +-c k + i gamma, so every Fourier
// mode decays as exp(-gamma t). The substitution u = exp(-gamma t) Phi turns
// the damped equation into Phi_tt = c^2 Lap(Phi) exactly.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>

#include "dyonwave/constants.hpp"
#include "dyonwave/grid.hpp"
#include "dyonwave/operators.hpp"
#include "dyonwave/wave_stepper.hpp"

namespace dyonwave {

template <class T = std::complex<double>>
struct WaveState {
    VectorField<T> psi;
    ScalarField<T> psi0;
    VectorField<T> dpsi;
    ScalarField<T> dpsi0;
    double t = 0.0;
    double m0 = 0.0;
    PhysicalConstants constants;
    std::size_t step = 0;

    static WaveState zeros(const Grid& g, double m0, const PhysicalConstants& k = {}) {
        WaveState w;
        w.psi = VectorField<T>(g, Stagger::collocated);
        w.psi0 = ScalarField<T>(g, Stagger::collocated);
        w.dpsi = w.psi;
        w.dpsi0 = w.psi0;
        w.m0 = m0;
        w.constants = k;
        return w;
    }

    const Grid& grid() const { return psi.grid(); }

    /// m0 c^2 / hbar
    double gamma() const { return m0 * constants.c * constants.c / constants.hbar; }

    void validate() const {
        require(m0 >= 0.0, "mass must be non-negative");
        expectStagger(psi, Stagger::collocated, "wave function");
        psi.checkCongruent(dpsi);
        psi0.checkCongruent(dpsi0);
        require(psi.grid() == psi0.grid(), "wave function parts on different grids");
        expectStagger(psi0, Stagger::collocated, "wave function scalar part");
    }

    bool finite() const {
        return allFinite(psi) && allFinite(psi0) && allFinite(dpsi) && allFinite(dpsi0);
    }

    friend WaveState operator+(WaveState a, const WaveState& b) {
        a.psi += b.psi;
        a.psi0 += b.psi0;
        a.dpsi += b.dpsi;
        a.dpsi0 += b.dpsi0;
        return a;
    }
    friend WaveState operator*(const T& s, WaveState a) {
        a.psi *= s;
        a.psi0 *= s;
        a.dpsi *= s;
        a.dpsi0 *= s;
        return a;
    }
};

// ---------------------------------------------------------------------------
// First-order residuals

template <class T>
struct FirstOrderResiduals {
    ScalarField<T> scalar;  // div Psi - Psi0_t/c^2 - (m0/hbar) Psi0
    VectorField<T> vector;  // grad Psi0 - Psi_t - gamma Psi
    VectorField<T> curl;    // curl Psi
};

template <class T>
FirstOrderResiduals<T> firstOrderResiduals(const WaveState<T>& w) {
    w.validate();
    const auto& k = w.constants;
    FirstOrderResiduals<T> r;
    r.scalar = div(w.psi);
    r.scalar.axpy(T(-1.0 / (k.c * k.c)), w.dpsi0);
    r.scalar.axpy(T(-w.m0 / k.hbar), w.psi0);
    r.vector = grad(w.psi0);
    r.vector -= w.dpsi;
    r.vector.axpy(T(-w.gamma()), w.psi);
    r.curl = dyonwave::curl(w.psi);
    return r;
}

/// Biquaternion-valued field: complex scalar part and complex vector part.
struct QuaternionField {
    ComplexScalar s;
    ComplexVector v;
};

/// Applies P Psi - m0 c Psi with the quaternion product
///   (x0, x)(y0, y) = (x0 y0 - x.y, x0 y + x y0 + x cross y),
/// P = (p, (i/c) E), Psi = (Psi, (i/c) Psi0), p -> -i hbar grad and
/// E -> i hbar d/dt. Expands to (i hbar r_s, (hbar/c) r_v - i hbar r_c) in
/// terms of the first-order residuals.
inline QuaternionField momentumEigenApply(const WaveState<std::complex<double>>& w) {
    using C = std::complex<double>;
    w.validate();
    const auto& k = w.constants;
    const C I{0.0, 1.0};
    const C minusIHbar = -I * k.hbar;
    const C iHbar = I * k.hbar;
    const C iOverC = I / k.c;

    // momentum and energy operators acting on each part
    ComplexVector pPsi0 = grad(w.psi0);
    pPsi0 *= minusIHbar;
    ComplexScalar pDotPsi = div(w.psi);
    pDotPsi *= minusIHbar;
    ComplexVector pCrossPsi = curl(w.psi);
    pCrossPsi *= minusIHbar;
    ComplexVector ePsi = w.dpsi;
    ePsi *= iHbar;
    ComplexScalar ePsi0 = w.dpsi0;
    ePsi0 *= iHbar;

    QuaternionField out;
    // vector part: x0 y + x y0 + x cross y - m0 c Psi
    out.v = ePsi;
    out.v *= iOverC;
    out.v.axpy(iOverC, pPsi0);
    out.v += pCrossPsi;
    out.v.axpy(C(-w.m0 * k.c), w.psi);
    // scalar part: x0 y0 - x.y - m0 c (i/c) Psi0
    out.s = ePsi0;
    out.s *= iOverC * iOverC;
    out.s -= pDotPsi;
    out.s.axpy(-C(w.m0 * k.c) * iOverC, w.psi0);
    return out;
}

// ---------------------------------------------------------------------------
// Time stepping

inline double dampingBound(double m0, const PhysicalConstants& k) {
    return m0 > 0.0 ? 0.1 * k.hbar / (m0 * k.c * k.c) : std::numeric_limits<double>::infinity();
}

template <class T>
void checkWaveStep(const WaveState<T>& w, double dt, const char* who) {
    checkCfl(dt, w.grid().h, w.constants.c, who);
    const double bound = dampingBound(w.m0, w.constants);
    if (dt > bound) throw CflViolation(std::string(who) + ": damping not resolved", dt, bound);
}

template <class T>
WaveCoefficients dampedCoefficients(const WaveState<T>& w) {
    const double g = w.gamma();
    return {w.constants.c, g, g * g};
}

template <class T>
void checkFinite(const WaveState<T>& w, const char* who) {
    if (!w.finite()) throw NumericalDivergence(who, w.step);
}

/// Plain wave equation u_tt = c^2 Lap(u) on both parts; mass ignored.
template <class T>
WaveState<T> stepWave(WaveState<T> w, double dt) {
    checkCfl(dt, w.grid().h, w.constants.c, "stepWave");
    const WaveCoefficients k{w.constants.c, 0.0, 0.0};
    waveStep(w.psi, w.dpsi, k, dt);
    waveStep(w.psi0, w.dpsi0, k, dt);
    w.t += dt;
    ++w.step;
    checkFinite(w, "stepWave");
    return w;
}

/// Damped massive wave equation, damping term centred in time.
template <class T>
WaveState<T> stepDampedWave(WaveState<T> w, double dt) {
    w.validate();
    checkWaveStep(w, dt, "stepDampedWave");
    const WaveCoefficients k = dampedCoefficients(w);
    waveStep(w.psi, w.dpsi, k, dt);
    waveStep(w.psi0, w.dpsi0, k, dt);
    w.t += dt;
    ++w.step;
    checkFinite(w, "stepDampedWave");
    return w;
}

template <class T>
WaveState<T> stepDampedWave(WaveState<T> w, double dt, std::size_t steps) {
    for (std::size_t s = 0; s < steps; ++s) w = stepDampedWave(std::move(w), dt);
    return w;
}

/// Integrating-factor evolution: Phi = exp(gamma (t - t_epoch)) u obeys the
/// undamped wave equation. The epoch is moved forward whenever
/// gamma (t - t_epoch) exceeds `rescaleAfter`, keeping Phi bounded.
template <class T>
WaveState<T> tauReducedEvolve(WaveState<T> w, double dt, std::size_t steps = 1,
                              double rescaleAfter = 300.0) {
    w.validate();
    checkWaveStep(w, dt, "tauReducedEvolve");
    const double g = w.gamma();
    const WaveCoefficients plain{w.constants.c, 0.0, 0.0};

    // Phi = u, Phi_t = u_t + gamma u at the starting epoch
    auto phi = w.psi;
    auto dphi = w.dpsi;
    dphi.axpy(T(g), w.psi);
    auto phi0 = w.psi0;
    auto dphi0 = w.dpsi0;
    dphi0.axpy(T(g), w.psi0);
    double elapsed = 0.0;  // t - t_epoch

    for (std::size_t s = 0; s < steps; ++s) {
        waveStep(phi, dphi, plain, dt);
        waveStep(phi0, dphi0, plain, dt);
        elapsed += dt;
        ++w.step;
        if (g * elapsed > rescaleAfter) {
            const T f(std::exp(-g * elapsed));
            phi *= f;
            dphi *= f;
            phi0 *= f;
            dphi0 *= f;
            elapsed = 0.0;
        }
    }
    w.t += dt * static_cast<double>(steps);

    // u = exp(-gamma (t - t_epoch)) Phi, u_t = exp(...) (Phi_t - gamma Phi)
    const T f(std::exp(-g * elapsed));
    w.psi = phi;
    w.psi *= f;
    w.dpsi = dphi;
    w.dpsi.axpy(T(-g), phi);
    w.dpsi *= f;
    w.psi0 = phi0;
    w.psi0 *= f;
    w.dpsi0 = dphi0;
    w.dpsi0.axpy(T(-g), phi0);
    w.dpsi0 *= f;
    checkFinite(w, "tauReducedEvolve");
    return w;
}

// ---------------------------------------------------------------------------
// Dispersion

struct DispersionRoots {
    std::complex<double> omegaPlus;
    std::complex<double> omegaMinus;
    double k = 0.0;
};

/// Roots of w^2 - 2i (m0 c^2/hbar) w - (m0^2 c^4/hbar^2 + c^2 k^2) = 0, from
/// the cancellation-free form of the quadratic formula. omegaPlus carries the
/// non-negative real part.
inline DispersionRoots dispersionRoots(double m0, double k, const PhysicalConstants& K = {}) {
    require(k >= 0.0, "wavenumber must be non-negative");
    require(m0 >= 0.0, "mass must be non-negative");
    using C = std::complex<double>;
    const double g = m0 * K.c * K.c / K.hbar;
    const C b{0.0, -2.0 * g};
    const C c0{-(g * g + K.c * K.c * k * k), 0.0};
    const C disc = b * b - 4.0 * c0;
    C sq = std::sqrt(disc);
    if (std::real(std::conj(b) * sq) < 0.0) sq = -sq;
    const C q = -0.5 * (b + sq);
    C r1, r2;
    if (q == C{0.0, 0.0}) {
        r1 = r2 = C{0.0, 0.0};
    } else {
        r1 = q;
        r2 = c0 / q;
    }
    DispersionRoots out;
    out.k = k;
    if (r1.real() >= r2.real()) {
        out.omegaPlus = r1;
        out.omegaMinus = r2;
    } else {
        out.omegaPlus = r2;
        out.omegaMinus = r1;
    }
    return out;
}

/// |w^2 - 2i g w - (g^2 + c^2 k^2)| normalised by the sum of term magnitudes.
inline double dispersionQuadraticResidual(std::complex<double> w, double m0, double k,
                                          const PhysicalConstants& K = {}) {
    const double g = m0 * K.c * K.c / K.hbar;
    const double constant = g * g + K.c * K.c * k * k;
    const auto r = w * w - std::complex<double>(0.0, 2.0 * g) * w - constant;
    const double scale = std::norm(w) + 2.0 * g * std::abs(w) + constant;
    return scale == 0.0 ? 0.0 : std::abs(r) / scale;
}

/// Relative residual of hbar^2 |w|^2 = m0^2 c^4 + c^2 k^2 hbar^2.
inline double energyMomentumResidual(std::complex<double> w, double m0, double k,
                                     const PhysicalConstants& K = {}) {
    const double lhs = K.hbar * K.hbar * std::norm(w);
    const double c2 = K.c * K.c;
    const double rhs = m0 * m0 * c2 * c2 + c2 * k * k * K.hbar * K.hbar;
    if (rhs == 0.0) return std::abs(lhs);
    return std::abs(lhs - rhs) / rhs;
}

enum class Branch { plus, minus };

struct Velocities {
    double group = 0.0;
    std::optional<std::complex<double>> phase;  // undefined at k = 0
};

/// Group velocity d Re(w)/dk = +-c and phase velocity w/k = i m0 c^2/(hbar k) +- c.
inline Velocities groupPhaseVelocity(double m0, double k, const PhysicalConstants& K = {},
                                     Branch branch = Branch::plus) {
    const auto roots = dispersionRoots(m0, k, K);
    Velocities v;
    v.group = branch == Branch::plus ? K.c : -K.c;
    if (k > 0.0) v.phase = (branch == Branch::plus ? roots.omegaPlus : roots.omegaMinus) / k;
    return v;
}

// ---------------------------------------------------------------------------
// Second-order residuals on stored trajectories

template <class T>
struct WaveResidual {
    VectorField<T> vector;
    ScalarField<T> scalar;
};

/// Lap u - u_tt/c^2 - 2 (m0/hbar) u_t - (m0 c/hbar)^2 u at the middle level.
template <class F>
F dampedWaveOperator(const TimeLevels<F>& u, double m0, const PhysicalConstants& k) {
    using T = typename F::value_type;
    const double mu2 = (m0 * k.c / k.hbar) * (m0 * k.c / k.hbar);
    F r = laplacian4(u.cur);
    r.axpy(T(-1.0 / (k.c * k.c)), u.d2());
    r.axpy(T(-2.0 * m0 / k.hbar), u.d1());
    r.axpy(T(-mu2), u.cur);
    return r;
}

/// (Box - (m0 c/hbar)^2) u - 2 (m0/hbar) u_t with Box = Lap - d_tt/c^2. The
/// damping coefficient is 2 m0/hbar so this regrouping equals the damped-wave
/// form term by term.
template <class F>
F kleinGordonOperator(const TimeLevels<F>& u, double m0, const PhysicalConstants& k) {
    using T = typename F::value_type;
    const double mu2 = (m0 * k.c / k.hbar) * (m0 * k.c / k.hbar);
    F box = laplacian4(u.cur);
    box.axpy(T(-1.0 / (k.c * k.c)), u.d2());
    F lhs = box;
    lhs.axpy(T(-mu2), u.cur);
    F damping = u.d1();
    damping *= T(2.0 * m0 / k.hbar);
    lhs -= damping;
    return lhs;
}

template <class T>
TimeLevels<VectorField<T>> vectorLevels(const WaveState<T>& a, const WaveState<T>& b,
                                        const WaveState<T>& c, double dt) {
    return {a.psi, b.psi, c.psi, dt};
}

template <class T>
TimeLevels<ScalarField<T>> scalarLevels(const WaveState<T>& a, const WaveState<T>& b,
                                        const WaveState<T>& c, double dt) {
    return {a.psi0, b.psi0, c.psi0, dt};
}

/// Damped-wave residual of both parts from three consecutive states.
template <class T>
WaveResidual<T> dampedWaveResidual(const TimeLevels<WaveState<T>>& w) {
    const auto& mid = w.cur;
    return {dampedWaveOperator(vectorLevels(w.prev, w.cur, w.next, w.dt), mid.m0, mid.constants),
            dampedWaveOperator(scalarLevels(w.prev, w.cur, w.next, w.dt), mid.m0, mid.constants)};
}

template <class T>
WaveResidual<T> kleinGordonResidual(const TimeLevels<WaveState<T>>& w) {
    const auto& mid = w.cur;
    return {kleinGordonOperator(vectorLevels(w.prev, w.cur, w.next, w.dt), mid.m0, mid.constants),
            kleinGordonOperator(scalarLevels(w.prev, w.cur, w.next, w.dt), mid.m0, mid.constants)};
}

} // namespace dyonwave
