// grid.hpp - uniform 3D lattice and gridded scalar / vector fields
//
// Sample placement (h = spacing, (i,j,k) = array index):
//   node        (i, j, k) h
//   cell        (i+1/2, j+1/2, k+1/2) h          -- dual nodes
//   edge        component a shifted by h/2 along a
//   face        component a shifted by h/2 along the two other axes
//   collocated  every component at (i, j, k) h
//
// node/cell are scalar placements, edge/face vector placements of the
// staggered (Yee) lattice; collocated is the unstaggered placement used by the
// wave-function solvers. Arithmetic between fields requires identical grids
// and identical staggering.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "dyonwave/errors.hpp"
#include "dyonwave/parallel.hpp"
#include "dyonwave/quaternion.hpp"

namespace dyonwave {

enum class Boundary { periodic, dirichlet_zero };
enum class Stagger { node, cell, edge, face, collocated };

inline const char* toString(Stagger s) {
    switch (s) {
        case Stagger::node: return "node";
        case Stagger::cell: return "cell";
        case Stagger::edge: return "edge";
        case Stagger::face: return "face";
        case Stagger::collocated: return "collocated";
    }
    return "?";
}

inline const char* toString(Boundary b) {
    return b == Boundary::periodic ? "periodic" : "dirichlet-zero";
}

inline bool isScalarStagger(Stagger s) {
    return s == Stagger::node || s == Stagger::cell || s == Stagger::collocated;
}
inline bool isVectorStagger(Stagger s) {
    return s == Stagger::edge || s == Stagger::face || s == Stagger::collocated;
}

struct Grid {
    std::array<int, 3> n{1, 1, 1};
    double h = 1.0;
    Boundary bc = Boundary::periodic;

    Grid() = default;
    Grid(std::array<int, 3> extents, double spacing, Boundary boundary = Boundary::periodic)
        : n(extents), h(spacing), bc(boundary) {
        for (int e : n) require(e >= 1, "grid extents must be >= 1");
        require(h > 0.0 && std::isfinite(h), "grid spacing must be positive");
    }

    static Grid line(int nx, double spacing, Boundary boundary = Boundary::periodic) {
        return Grid({nx, 1, 1}, spacing, boundary);
    }

    std::size_t size() const {
        return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) *
               static_cast<std::size_t>(n[2]);
    }
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k) * static_cast<std::size_t>(n[1]) +
                static_cast<std::size_t>(j)) * static_cast<std::size_t>(n[0]) +
               static_cast<std::size_t>(i);
    }
    std::array<int, 3> unindex(std::size_t idx) const {
        const auto nx = static_cast<std::size_t>(n[0]);
        const auto ny = static_cast<std::size_t>(n[1]);
        return {static_cast<int>(idx % nx), static_cast<int>((idx / nx) % ny),
                static_cast<int>(idx / (nx * ny))};
    }
    std::size_t stride(int axis) const {
        if (axis == 0) return 1;
        if (axis == 1) return static_cast<std::size_t>(n[0]);
        return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]);
    }
    /// Physical extent along an axis (periodic length).
    double length(int axis) const { return n[static_cast<std::size_t>(axis)] * h; }
    /// Number of axes with more than one sample.
    int activeDims() const {
        return static_cast<int>(std::count_if(n.begin(), n.end(), [](int e) { return e > 1; }));
    }

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Offset (in cells) of a sample of component `comp` for the given placement;
/// comp is ignored for scalar placements.
inline Vec3<double> sampleOffset(Stagger s, int comp) {
    Vec3<double> o{0.0, 0.0, 0.0};
    switch (s) {
        case Stagger::cell: o = {0.5, 0.5, 0.5}; break;
        case Stagger::edge: o[static_cast<std::size_t>(comp)] = 0.5; break;
        case Stagger::face:
            o = {0.5, 0.5, 0.5};
            o[static_cast<std::size_t>(comp)] = 0.0;
            break;
        default: break;
    }
    return o;
}

inline Vec3<double> samplePosition(const Grid& g, Stagger s, int comp, int i, int j, int k) {
    const auto o = sampleOffset(s, comp);
    return {(i + o[0]) * g.h, (j + o[1]) * g.h, (k + o[2]) * g.h};
}

template <class T>
class ScalarField {
public:
    using value_type = T;

    ScalarField() = default;
    ScalarField(const Grid& grid, Stagger stagger, T fill = T{})
        : grid_(grid), stagger_(stagger), data_(grid.size(), fill) {
        require(isScalarStagger(stagger),
                std::string("invalid placement for a scalar field: ") + toString(stagger));
    }

    const Grid& grid() const { return grid_; }
    Stagger stagger() const { return stagger_; }
    std::size_t size() const { return data_.size(); }

    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }
    T& operator()(int i, int j, int k) { return data_[grid_.index(i, j, k)]; }
    const T& operator()(int i, int j, int k) const { return data_[grid_.index(i, j, k)]; }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool congruent(const ScalarField& o) const { return grid_ == o.grid_ && stagger_ == o.stagger_; }

    ScalarField& operator+=(const ScalarField& o) {
        checkCongruent(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ScalarField& operator-=(const ScalarField& o) {
        checkCongruent(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ScalarField& operator*=(const T& k) {
        for (auto& x : data_) x *= k;
        return *this;
    }
    /// this += k * o
    ScalarField& axpy(const T& k, const ScalarField& o) {
        checkCongruent(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += k * o.data_[i];
        return *this;
    }

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator-(ScalarField a) {
        for (auto& x : a.data_) x = -x;
        return a;
    }
    friend ScalarField operator*(const T& k, ScalarField a) { return a *= k; }
    /// Bitwise equality of placement and samples.
    friend bool operator==(const ScalarField& a, const ScalarField& b) {
        return a.congruent(b) && a.data_ == b.data_;
    }

    void checkCongruent(const ScalarField& o) const {
        require(grid_ == o.grid_, "scalar fields live on different grids");
        require(stagger_ == o.stagger_, std::string("staggering mismatch: ") + toString(stagger_) +
                                            " vs " + toString(o.stagger_));
    }

private:
    Grid grid_;
    Stagger stagger_ = Stagger::node;
    std::vector<T> data_;
};

template <class T>
class VectorField {
public:
    using value_type = T;

    VectorField() = default;
    VectorField(const Grid& grid, Stagger stagger, T fill = T{})
        : grid_(grid), stagger_(stagger) {
        require(isVectorStagger(stagger),
                std::string("invalid placement for a vector field: ") + toString(stagger));
        for (auto& c : comp_) c.assign(grid.size(), fill);
    }

    const Grid& grid() const { return grid_; }
    Stagger stagger() const { return stagger_; }
    std::size_t size() const { return grid_.size(); }

    std::vector<T>& operator[](int a) { return comp_[static_cast<std::size_t>(a)]; }
    const std::vector<T>& operator[](int a) const { return comp_[static_cast<std::size_t>(a)]; }

    Vec3<T> at(std::size_t idx) const { return {comp_[0][idx], comp_[1][idx], comp_[2][idx]}; }
    void set(std::size_t idx, const Vec3<T>& v) {
        comp_[0][idx] = v[0];
        comp_[1][idx] = v[1];
        comp_[2][idx] = v[2];
    }

    bool congruent(const VectorField& o) const { return grid_ == o.grid_ && stagger_ == o.stagger_; }

    VectorField& operator+=(const VectorField& o) {
        checkCongruent(o);
        for (int a = 0; a < 3; ++a)
            for (std::size_t i = 0; i < size(); ++i) (*this)[a][i] += o[a][i];
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        checkCongruent(o);
        for (int a = 0; a < 3; ++a)
            for (std::size_t i = 0; i < size(); ++i) (*this)[a][i] -= o[a][i];
        return *this;
    }
    VectorField& operator*=(const T& k) {
        for (auto& c : comp_)
            for (auto& x : c) x *= k;
        return *this;
    }
    VectorField& axpy(const T& k, const VectorField& o) {
        checkCongruent(o);
        for (int a = 0; a < 3; ++a)
            for (std::size_t i = 0; i < size(); ++i) (*this)[a][i] += k * o[a][i];
        return *this;
    }

    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator-(VectorField a) {
        for (auto& c : a.comp_)
            for (auto& x : c) x = -x;
        return a;
    }
    friend VectorField operator*(const T& k, VectorField a) { return a *= k; }
    friend bool operator==(const VectorField& a, const VectorField& b) {
        return a.congruent(b) && a.comp_ == b.comp_;
    }

    void checkCongruent(const VectorField& o) const {
        require(grid_ == o.grid_, "vector fields live on different grids");
        require(stagger_ == o.stagger_, std::string("staggering mismatch: ") + toString(stagger_) +
                                            " vs " + toString(o.stagger_));
    }

private:
    Grid grid_;
    Stagger stagger_ = Stagger::collocated;
    std::array<std::vector<T>, 3> comp_;
};

using RealScalar = ScalarField<double>;
using RealVector = VectorField<double>;
using ComplexScalar = ScalarField<std::complex<double>>;
using ComplexVector = VectorField<std::complex<double>>;

// ---------------------------------------------------------------------------
// Sampling analytic functions

template <class T, class Fn>
ScalarField<T> sampleScalar(const Grid& g, Stagger s, Fn&& f) {
    ScalarField<T> out(g, s);
    for (int k = 0; k < g.n[2]; ++k)
        for (int j = 0; j < g.n[1]; ++j)
            for (int i = 0; i < g.n[0]; ++i) {
                const auto x = samplePosition(g, s, 0, i, j, k);
                out(i, j, k) = static_cast<T>(f(x[0], x[1], x[2]));
            }
    return out;
}

/// f(x, y, z) returns a Vec3; component a is evaluated at its own position.
template <class T, class Fn>
VectorField<T> sampleVector(const Grid& g, Stagger s, Fn&& f) {
    VectorField<T> out(g, s);
    for (int a = 0; a < 3; ++a)
        for (int k = 0; k < g.n[2]; ++k)
            for (int j = 0; j < g.n[1]; ++j)
                for (int i = 0; i < g.n[0]; ++i) {
                    const auto x = samplePosition(g, s, a, i, j, k);
                    out[a][g.index(i, j, k)] = static_cast<T>(f(x[0], x[1], x[2])[static_cast<std::size_t>(a)]);
                }
    return out;
}

// ---------------------------------------------------------------------------
// Conversions and pointwise products

template <class T>
ScalarField<std::complex<double>> toComplex(const ScalarField<T>& f) {
    ScalarField<std::complex<double>> out(f.grid(), f.stagger());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
    return out;
}

template <class T>
VectorField<std::complex<double>> toComplex(const VectorField<T>& f) {
    VectorField<std::complex<double>> out(f.grid(), f.stagger());
    for (int a = 0; a < 3; ++a)
        for (std::size_t i = 0; i < f.size(); ++i) out[a][i] = f[a][i];
    return out;
}

template <class T>
ScalarField<double> realPart(const ScalarField<T>& f) {
    ScalarField<double> out(f.grid(), f.stagger());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::real(f[i]);
    return out;
}

template <class T>
ScalarField<double> imagPart(const ScalarField<T>& f) {
    ScalarField<double> out(f.grid(), f.stagger());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::imag(f[i]);
    return out;
}

template <class T>
VectorField<double> realPart(const VectorField<T>& f) {
    VectorField<double> out(f.grid(), f.stagger());
    for (int a = 0; a < 3; ++a)
        for (std::size_t i = 0; i < f.size(); ++i) out[a][i] = std::real(f[a][i]);
    return out;
}

template <class T>
VectorField<double> imagPart(const VectorField<T>& f) {
    VectorField<double> out(f.grid(), f.stagger());
    for (int a = 0; a < 3; ++a)
        for (std::size_t i = 0; i < f.size(); ++i) out[a][i] = std::imag(f[a][i]);
    return out;
}

/// Pointwise bilinear cross product; both operands collocated.
template <class T>
VectorField<T> crossField(const VectorField<T>& a, const VectorField<T>& b) {
    a.checkCongruent(b);
    VectorField<T> out(a.grid(), a.stagger());
    for (std::size_t i = 0; i < a.size(); ++i) out.set(i, cross(a.at(i), b.at(i)));
    return out;
}

/// Pointwise bilinear dot product.
template <class T>
ScalarField<T> dotField(const VectorField<T>& a, const VectorField<T>& b) {
    a.checkCongruent(b);
    require(a.stagger() == Stagger::collocated, "dotField needs collocated operands");
    ScalarField<T> out(a.grid(), Stagger::collocated);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = dot(a.at(i), b.at(i));
    return out;
}

/// Pointwise scalar * vector, both collocated.
template <class T>
VectorField<T> mulField(const ScalarField<T>& s, const VectorField<T>& v) {
    require(s.grid() == v.grid(), "fields live on different grids");
    require(s.stagger() == Stagger::collocated && v.stagger() == Stagger::collocated,
            "mulField needs collocated operands");
    VectorField<T> out(v.grid(), v.stagger());
    for (int a = 0; a < 3; ++a)
        for (std::size_t i = 0; i < v.size(); ++i) out[a][i] = s[i] * v[a][i];
    return out;
}

template <class T>
ScalarField<T> mulField(const ScalarField<T>& a, const ScalarField<T>& b) {
    a.checkCongruent(b);
    ScalarField<T> out(a.grid(), a.stagger());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

// ---------------------------------------------------------------------------
// Norms (serial, fixed summation order)

template <class T>
double maxAbs(const ScalarField<T>& f) {
    double m = 0.0;
    for (const auto& x : f.data()) m = std::max(m, static_cast<double>(std::abs(x)));
    return m;
}

template <class T>
double maxAbs(const VectorField<T>& f) {
    double m = 0.0;
    for (int a = 0; a < 3; ++a)
        for (const auto& x : f[a]) m = std::max(m, static_cast<double>(std::abs(x)));
    return m;
}

/// Root-mean-square over all samples (and components).
template <class T>
double rms(const ScalarField<T>& f) {
    double s = 0.0;
    for (const auto& x : f.data()) s += detail::abs2(x);
    return std::sqrt(s / static_cast<double>(f.size()));
}

template <class T>
double rms(const VectorField<T>& f) {
    double s = 0.0;
    for (int a = 0; a < 3; ++a)
        for (const auto& x : f[a]) s += detail::abs2(x);
    return std::sqrt(s / (3.0 * static_cast<double>(f.size())));
}

template <class T>
T sum(const ScalarField<T>& f) {
    T s{};
    for (const auto& x : f.data()) s += x;
    return s;
}

template <class T>
bool allFinite(const ScalarField<T>& f) {
    return std::all_of(f.data().begin(), f.data().end(),
                       [](const T& x) { return std::isfinite(std::abs(x)); });
}

template <class T>
bool allFinite(const VectorField<T>& f) {
    for (int a = 0; a < 3; ++a)
        for (const auto& x : f[a])
            if (!std::isfinite(std::abs(x))) return false;
    return true;
}

} // namespace dyonwave
