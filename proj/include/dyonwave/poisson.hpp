// poisson.hpp - div(grad chi) = f for the lattice operators in operators.hpp
//
// The operator is applied as the literal composition div(grad(.)), so the
// solution is consistent with whatever placement and boundary the fields use.
// That composition is symmetric negative semi-definite (div = -grad^T), which
// makes conjugate gradients applicable. Null-space components (constants on a
// periodic grid, plus the two-colour modes of the wide collocated stencil) are
// removed from the right-hand side check and from the solution.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dyonwave/errors.hpp"
#include "dyonwave/grid.hpp"
#include "dyonwave/operators.hpp"

namespace dyonwave {

struct PoissonOptions {
    double tolerance = 1e-11;  // relative to max|f|
    std::size_t maxIterations = 100000;
};

struct PoissonResult {
    RealScalar chi;
    std::size_t iterations = 0;
    double residual = 0.0;  // max |div grad chi - f|
};

namespace detail {

/// Class label of each sample in the null space of div(grad) on a periodic
/// grid: one class for the compact stencil, up to eight for the wide one.
inline std::vector<int> nullSpaceClasses(const Grid& g, Stagger s, int& count) {
    std::array<int, 3> split{1, 1, 1};
    if (s == Stagger::collocated)
        for (int a = 0; a < 3; ++a) split[static_cast<std::size_t>(a)] = (g.n[static_cast<std::size_t>(a)] % 2 == 0) ? 2 : 1;
    count = split[0] * split[1] * split[2];
    std::vector<int> label(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto ijk = g.unindex(i);
        label[i] = (ijk[0] % split[0]) + split[0] * ((ijk[1] % split[1]) + split[1] * (ijk[2] % split[2]));
    }
    return label;
}

inline std::vector<double> classMeans(const RealScalar& f, const std::vector<int>& label, int count) {
    std::vector<double> s(static_cast<std::size_t>(count), 0.0), n(static_cast<std::size_t>(count), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        s[static_cast<std::size_t>(label[i])] += f[i];
        n[static_cast<std::size_t>(label[i])] += 1.0;
    }
    for (std::size_t c = 0; c < s.size(); ++c) s[c] /= n[c];
    return s;
}

inline double dotProduct(const RealScalar& a, const RealScalar& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace detail

/// Solves div(grad chi) = f. On periodic grids f must have zero mean on every
/// null-space class; otherwise a ContractViolation explains the incompatibility.
inline PoissonResult solvePoisson(const RealScalar& f, const PoissonOptions& opt = {}) {
    const Grid& g = f.grid();
    const bool periodic = g.bc == Boundary::periodic;
    const double scale = std::max(maxAbs(f), 1e-300);

    int classes = 0;
    std::vector<int> label;
    if (periodic) {
        label = detail::nullSpaceClasses(g, f.stagger(), classes);
        const auto means = detail::classMeans(f, label, classes);
        for (double m : means)
            require(std::abs(m) <= 1e-10 * scale,
                    "Poisson problem incompatible on a periodic grid: source has non-zero mean (" +
                        std::to_string(m) + ")");
    }

    auto apply = [](const RealScalar& x) { return div(grad(x)); };

    // Conjugate gradients on -L chi = -f, with -L positive semi-definite.
    RealScalar x(g, f.stagger());
    RealScalar r = -f;
    RealScalar p = r;
    double rr = detail::dotProduct(r, r);
    const double target = opt.tolerance * scale;

    std::size_t it = 0;
    while (maxAbs(r) > target) {
        if (it == opt.maxIterations)
            throw NonConvergence("Poisson solve hit the iteration cap (" + std::to_string(it) +
                                 "), residual " + std::to_string(maxAbs(r)));
        RealScalar Ap = apply(p);
        Ap *= -1.0;
        const double pAp = detail::dotProduct(p, Ap);
        if (!(pAp > 0.0)) break;
        const double alpha = rr / pAp;
        x.axpy(alpha, p);
        r.axpy(-alpha, Ap);
        const double rrNew = detail::dotProduct(r, r);
        p *= rrNew / rr;
        p += r;
        rr = rrNew;
        ++it;
    }

    if (periodic) {
        const auto means = detail::classMeans(x, label, classes);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= means[static_cast<std::size_t>(label[i])];
    }
    RealScalar res = apply(x);
    res -= f;
    PoissonResult out;
    out.residual = maxAbs(res);
    out.iterations = it;
    if (out.residual > 100.0 * target)
        throw NonConvergence("Poisson solve stalled after " + std::to_string(it) +
                             " iterations, residual " + std::to_string(out.residual));
    out.chi = std::move(x);
    return out;
}

} // namespace dyonwave
