// wave_stepper.hpp - second-order integrator for damped, massive wave equations
//
//   u_tt + 2 a u_t + beta u = c^2 Lap(u) + f
//
// The scheme is the three-level leapfrog with the damping term centred in time,
//
//   (u+ - 2u + u-)/dt^2 + 2a (u+ - u-)/(2dt) + beta u = c^2 Lap(u) + f,
//
// carried in one-step form with a synchronized velocity v ~ u_t. With
// g = a dt and kick = dt/2 * (c^2 Lap(u) - beta u + f):
//
//   w      = v (1 - g^2) + kick g        (w = v_{n-1/2}(1-g) + kick)
//   v_half = (w + kick) / (1 + g)
//   u     += dt v_half
//   w'     = v_half (1 - g) + kick'
//   v      = (w' - kick' g) / (1 - g^2)
//
// For a = 0 this is plain velocity Verlet. Works on ScalarField / VectorField.

#pragma once

#include <cmath>
#include <optional>

#include "dyonwave/errors.hpp"
#include "dyonwave/operators.hpp"

namespace dyonwave {

struct WaveCoefficients {
    double c = 1.0;      // propagation speed
    double a = 0.0;      // half the damping rate
    double beta = 0.0;   // mass term
};

/// c^2 Lap(u) - beta u (+ forcing)
template <class F>
F waveAcceleration(const F& u, const WaveCoefficients& k, const F* forcing = nullptr) {
    using T = typename F::value_type;
    F acc = laplacian(u);
    acc *= T(k.c * k.c);
    if (k.beta != 0.0) acc.axpy(T(-k.beta), u);
    if (forcing) acc += *forcing;
    return acc;
}

/// Kick to the half step and drift u to the next level; v becomes v_{n+1/2}.
template <class F>
void waveFirstHalf(F& u, F& v, const F& accel, const WaveCoefficients& k, double dt) {
    using T = typename F::value_type;
    const double g = k.a * dt;
    F kick = accel;
    kick *= T(0.5 * dt);
    F w = v;
    w *= T(1.0 - g * g);
    w.axpy(T(g), kick);
    w += kick;
    w *= T(1.0 / (1.0 + g));
    v = std::move(w);
    u.axpy(T(dt), v);
}

/// Close the step with the acceleration at the new level; v becomes v_{n+1}.
template <class F>
void waveSecondHalf(F& v, const F& accelNext, const WaveCoefficients& k, double dt) {
    using T = typename F::value_type;
    const double g = k.a * dt;
    F kick = accelNext;
    kick *= T(0.5 * dt);
    F w = v;
    w *= T(1.0 - g);
    w += kick;
    w.axpy(T(-g), kick);
    w *= T(1.0 / (1.0 - g * g));
    v = std::move(w);
}

/// One full step without forcing.
template <class F>
void waveStep(F& u, F& v, const WaveCoefficients& k, double dt) {
    const F acc = waveAcceleration(u, k);
    waveFirstHalf(u, v, acc, k, dt);
    const F accNext = waveAcceleration(u, k);
    waveSecondHalf(v, accNext, k, dt);
}

/// 0.95 h / (c sqrt 3)
inline double cflBound(double h, double c) { return 0.95 * h / (c * std::sqrt(3.0)); }

inline void checkCfl(double dt, double h, double c, const char* who) {
    require(dt > 0.0, std::string(who) + ": dt must be positive");
    const double bound = cflBound(h, c);
    if (dt > bound) throw CflViolation(std::string(who) + ": CFL bound exceeded", dt, bound);
}

/// Three stored time levels of a field, equally spaced by dt.
template <class F>
struct TimeLevels {
    F prev;
    F cur;
    F next;
    double dt = 0.0;

    /// Centred first derivative at the middle level.
    F d1() const {
        using T = typename F::value_type;
        F d = next;
        d -= prev;
        d *= T(0.5 / dt);
        return d;
    }
    /// Centred second derivative at the middle level.
    F d2() const {
        using T = typename F::value_type;
        F d = next;
        d.axpy(T(-2.0), cur);
        d += prev;
        d *= T(1.0 / (dt * dt));
        return d;
    }
};

} // namespace dyonwave
