// quaternion.hpp - real and complex (bi-)quaternions, four-vectors
//
// A quaternion is stored as scalar part s and vector part v = (v1, v2, v3).
// The Hamilton product follows
//
//   (a.s, a.v)(b.s, b.v) = (a.s*b.s - a.v.b.v,  a.s*b.v + a.v*b.s + a.v x b.v)
//
// which reproduces e_i e_j = -delta_ij + eps_ijk e_k on the basis units.
// Biquaternions use std::complex components with the same formula; the
// complex unit commutes with the quaternion units.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <type_traits>

namespace dyonwave {

template <class T>
using Vec3 = std::array<T, 3>;

template <class T>
constexpr Vec3<T> operator+(const Vec3<T>& a, const Vec3<T>& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

template <class T>
constexpr Vec3<T> operator-(const Vec3<T>& a, const Vec3<T>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

template <class T>
constexpr Vec3<T> operator-(const Vec3<T>& a) {
    return {-a[0], -a[1], -a[2]};
}

template <class T>
constexpr Vec3<T> scale(const T& s, const Vec3<T>& a) {
    return {s * a[0], s * a[1], s * a[2]};
}

/// Bilinear dot product (no conjugation for complex components).
template <class T>
constexpr T dot(const Vec3<T>& a, const Vec3<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Bilinear cross product (no conjugation for complex components).
template <class T>
constexpr Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

namespace detail {
template <class T>
struct is_complex : std::false_type {};
template <class R>
struct is_complex<std::complex<R>> : std::true_type {};

inline double abs2(double x) { return x * x; }
inline double abs2(const std::complex<double>& z) { return std::norm(z); }
} // namespace detail

template <class T>
inline constexpr bool is_complex_v = detail::is_complex<T>::value;

template <class T>
struct BasicQuaternion {
    T s{};
    Vec3<T> v{};

    constexpr BasicQuaternion() = default;
    constexpr BasicQuaternion(T scalar, Vec3<T> vector) : s(scalar), v(vector) {}

    static constexpr BasicQuaternion unit(int index) {
        BasicQuaternion q;
        if (index == 0) q.s = T(1);
        else q.v[static_cast<std::size_t>(index - 1)] = T(1);
        return q;
    }

    constexpr BasicQuaternion conj() const { return {s, -v}; }

    friend constexpr bool operator==(const BasicQuaternion&, const BasicQuaternion&) = default;

    friend constexpr BasicQuaternion operator+(const BasicQuaternion& a, const BasicQuaternion& b) {
        return {a.s + b.s, a.v + b.v};
    }
    friend constexpr BasicQuaternion operator-(const BasicQuaternion& a, const BasicQuaternion& b) {
        return {a.s - b.s, a.v - b.v};
    }
    friend constexpr BasicQuaternion operator*(const T& k, const BasicQuaternion& a) {
        return {k * a.s, scale(k, a.v)};
    }
    friend constexpr BasicQuaternion operator*(const BasicQuaternion& a, const BasicQuaternion& b) {
        return {a.s * b.s - dot(a.v, b.v),
                scale(a.s, b.v) + scale(b.s, a.v) + cross(a.v, b.v)};
    }
};

using Quaternion = BasicQuaternion<double>;
using Biquaternion = BasicQuaternion<std::complex<double>>;

template <class T>
constexpr BasicQuaternion<T> quatMul(const BasicQuaternion<T>& a, const BasicQuaternion<T>& b) {
    return a * b;
}

template <class T>
constexpr BasicQuaternion<T> quatConj(const BasicQuaternion<T>& a) {
    return a.conj();
}

inline Biquaternion biquatMul(const Biquaternion& a, const Biquaternion& b) { return a * b; }

/// Re(q) = (q + conj(q)) / 2, the scalar part.
template <class T>
constexpr T realPart(const BasicQuaternion<T>& q) {
    return ((q + q.conj()).s) / T(2);
}

/// Sum of squared component moduli.
template <class T>
double norm2(const BasicQuaternion<T>& q) {
    return detail::abs2(q.s) + detail::abs2(q.v[0]) + detail::abs2(q.v[1]) + detail::abs2(q.v[2]);
}

template <class T>
double norm(const BasicQuaternion<T>& q) {
    return std::sqrt(norm2(q));
}

inline Biquaternion toBiquaternion(const Quaternion& q) {
    return {q.s, {q.v[0], q.v[1], q.v[2]}};
}

/// Real part qr of the unique split q = qr + i*qi.
inline Quaternion realComponent(const Biquaternion& q) {
    return {q.s.real(), {q.v[0].real(), q.v[1].real(), q.v[2].real()}};
}

/// Imaginary part qi of the unique split q = qr + i*qi.
inline Quaternion imagComponent(const Biquaternion& q) {
    return {q.s.imag(), {q.v[0].imag(), q.v[1].imag(), q.v[2].imag()}};
}

inline Biquaternion fromParts(const Quaternion& re, const Quaternion& im) {
    return {{re.s, im.s},
            {std::complex<double>{re.v[0], im.v[0]},
             std::complex<double>{re.v[1], im.v[1]},
             std::complex<double>{re.v[2], im.v[2]}}};
}

/// Four-vector with (+,+,+,-) signature. The time-like entry holds the real
/// physical value (t, E, phi, rho ...); the metric sign is applied explicitly
/// instead of storing an imaginary fourth component.
struct FourVector {
    static constexpr double metricSign = -1.0;

    Vec3<double> spatial{};
    double timeLike = 0.0;
};

/// x^2 + y^2 + z^2 - c^2 t^2 for the position four-vector.
inline double minkowskiNorm(const FourVector& x, double c) {
    const double ct = c * x.timeLike;
    return dot(x.spatial, x.spatial) + FourVector::metricSign * ct * ct;
}

} // namespace dyonwave
