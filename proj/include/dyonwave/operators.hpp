// operators.hpp - second-order finite-difference grad / div / curl / Laplacian
//
// The output placement is fixed by the input placement:
//
//   grad : node -> edge (forward)    cell -> face (backward)    collocated -> collocated (centered)
//   div  : edge -> node (backward)   face -> cell (forward)     collocated -> collocated (centered)
//   curl : edge -> face (forward)    face -> edge (backward)    collocated -> collocated (centered)
//   laplacian: compact three-point stencil per axis, placement preserved
//
// On the staggered placements div(curl F) and curl(grad f) vanish identically
// and div(grad f) equals the compact Laplacian. Axes with a single sample are
// treated as invariant directions (derivative zero).

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dyonwave/grid.hpp"

namespace dyonwave {

enum class Difference { forward, backward, central, second, second4 };

namespace detail {

inline int minimumExtent(Difference d) {
    switch (d) {
        case Difference::forward:
        case Difference::backward: return 2;
        case Difference::central:
        case Difference::second: return 3;
        case Difference::second4: return 5;
    }
    return 3;
}

/// out (+)= coef * D_axis(in)
template <class T>
void applyDifference(const Grid& g, const std::vector<T>& in, std::vector<T>& out, int axis,
                     Difference kind, T coef, bool accumulate) {
    const int na = g.n[static_cast<std::size_t>(axis)];
    if (na == 1) {
        if (!accumulate) std::fill(out.begin(), out.end(), T{});
        return;
    }
    require(na >= minimumExtent(kind),
            "grid extent " + std::to_string(na) + " along axis " + std::to_string(axis) +
                " too small for the requested stencil");

    const std::size_t n0 = static_cast<std::size_t>(g.n[0]);
    const std::size_t n1 = static_cast<std::size_t>(g.n[1]);
    const std::size_t sa = g.stride(axis);
    const std::size_t lines = g.size() / static_cast<std::size_t>(na);
    const bool periodic = g.bc == Boundary::periodic;
    const double h = g.h;

    const T scaleFirst = coef * T(1.0 / h);
    const T scaleCentral = coef * T(0.5 / h);
    const T scaleSecond = coef * T(1.0 / (h * h));
    const T scaleSecond4 = coef * T(1.0 / (12.0 * h * h));

    parallelFor(lines, [&](std::size_t begin, std::size_t end) {
        for (std::size_t L = begin; L < end; ++L) {
            std::size_t base;
            if (axis == 0) base = L * n0;
            else if (axis == 1) base = (L % n0) + (L / n0) * n0 * n1;
            else base = L;

            auto get = [&](int m) -> T {
                if (periodic) {
                    m %= na;
                    if (m < 0) m += na;
                } else if (m < 0 || m >= na) {
                    return T{};
                }
                return in[base + static_cast<std::size_t>(m) * sa];
            };

            for (int m = 0; m < na; ++m) {
                T d{};
                switch (kind) {
                    case Difference::forward: d = scaleFirst * (get(m + 1) - get(m)); break;
                    case Difference::backward: d = scaleFirst * (get(m) - get(m - 1)); break;
                    case Difference::central: d = scaleCentral * (get(m + 1) - get(m - 1)); break;
                    case Difference::second:
                        d = scaleSecond * (get(m + 1) - T(2) * get(m) + get(m - 1));
                        break;
                    case Difference::second4:
                        d = scaleSecond4 * (T(16) * (get(m + 1) + get(m - 1)) - T(30) * get(m) -
                                            (get(m + 2) + get(m - 2)));
                        break;
                }
                const std::size_t idx = base + static_cast<std::size_t>(m) * sa;
                if (accumulate) out[idx] += d;
                else out[idx] = d;
            }
        }
    });
}

inline Difference firstDifferenceFor(Stagger in, bool towardsPrimal) {
    if (in == Stagger::collocated) return Difference::central;
    return towardsPrimal ? Difference::backward : Difference::forward;
}

} // namespace detail

template <class T>
VectorField<T> grad(const ScalarField<T>& f) {
    Stagger out;
    Difference d;
    switch (f.stagger()) {
        case Stagger::node: out = Stagger::edge; d = Difference::forward; break;
        case Stagger::cell: out = Stagger::face; d = Difference::backward; break;
        default: out = Stagger::collocated; d = Difference::central; break;
    }
    VectorField<T> g(f.grid(), out);
    for (int a = 0; a < 3; ++a) detail::applyDifference(f.grid(), f.data(), g[a], a, d, T(1), false);
    return g;
}

template <class T>
ScalarField<T> div(const VectorField<T>& F) {
    Stagger out;
    Difference d;
    switch (F.stagger()) {
        case Stagger::edge: out = Stagger::node; d = Difference::backward; break;
        case Stagger::face: out = Stagger::cell; d = Difference::forward; break;
        default: out = Stagger::collocated; d = Difference::central; break;
    }
    ScalarField<T> s(F.grid(), out);
    for (int a = 0; a < 3; ++a) detail::applyDifference(F.grid(), F[a], s.data(), a, d, T(1), true);
    return s;
}

template <class T>
VectorField<T> curl(const VectorField<T>& F) {
    Stagger out;
    Difference d;
    switch (F.stagger()) {
        case Stagger::edge: out = Stagger::face; d = Difference::forward; break;
        case Stagger::face: out = Stagger::edge; d = Difference::backward; break;
        default: out = Stagger::collocated; d = Difference::central; break;
    }
    const Grid& g = F.grid();
    VectorField<T> c(g, out);
    // (curl F)_a = d_b F_c - d_c F_b for cyclic (a, b, c)
    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3;
        const int e = (a + 2) % 3;
        detail::applyDifference(g, F[e], c[a], b, d, T(1), true);
        detail::applyDifference(g, F[b], c[a], e, d, T(-1), true);
    }
    return c;
}

template <class T>
ScalarField<T> laplacian(const ScalarField<T>& f) {
    ScalarField<T> out(f.grid(), f.stagger());
    for (int a = 0; a < 3; ++a)
        detail::applyDifference(f.grid(), f.data(), out.data(), a, Difference::second, T(1), true);
    return out;
}

template <class T>
VectorField<T> laplacian(const VectorField<T>& F) {
    VectorField<T> out(F.grid(), F.stagger());
    for (int c = 0; c < 3; ++c)
        for (int a = 0; a < 3; ++a)
            detail::applyDifference(F.grid(), F[c], out[c], a, Difference::second, T(1), true);
    return out;
}

/// Five-point (fourth-order) Laplacian. The trajectory residual evaluators use
/// it so that residuals report the stepper's truncation error instead of
/// cancelling against the stepper's own three-point stencil.
template <class T>
ScalarField<T> laplacian4(const ScalarField<T>& f) {
    ScalarField<T> out(f.grid(), f.stagger());
    for (int a = 0; a < 3; ++a)
        detail::applyDifference(f.grid(), f.data(), out.data(), a, Difference::second4, T(1), true);
    return out;
}

template <class T>
VectorField<T> laplacian4(const VectorField<T>& F) {
    VectorField<T> out(F.grid(), F.stagger());
    for (int c = 0; c < 3; ++c)
        for (int a = 0; a < 3; ++a)
            detail::applyDifference(F.grid(), F[c], out[c], a, Difference::second4, T(1), true);
    return out;
}

/// Contract check used by the solvers: a derived field must land on the
/// placement the caller expects.
template <class F>
void expectStagger(const F& field, Stagger expected, const char* what) {
    require(field.stagger() == expected, std::string(what) + ": expected " + toString(expected) +
                                             " placement, got " + toString(field.stagger()));
}

} // namespace dyonwave
