// dyon.hpp - dyon charges, quantization, Bogomolny mass, potential/current
// bundles and the unified field Omega = E + iH.

#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include "dyonwave/constants.hpp"
#include "dyonwave/grid.hpp"

namespace dyonwave {

struct DyonCharge {
    double e = 0.0;  // electric charge
    double g = 0.0;  // magnetic charge

    /// Q = e + i g
    std::complex<double> generalized() const { return {e, g}; }
    double modulus2() const { return e * e + g * g; }
};

/// Outcome of the Dirac-Schwinger test e1 g2 - e2 g1 = n / 2.
struct QuantizationVerdict {
    double mu = 0.0;               // e1 g2 - e2 g1
    std::optional<long long> n;    // set when 2 mu is a positive integer
    bool quantized() const { return n.has_value(); }
};

inline constexpr double kQuantizationTolerance = 1e-9;

inline QuantizationVerdict schwingerQuantum(const DyonCharge& d1, const DyonCharge& d2) {
    QuantizationVerdict v;
    v.mu = d1.e * d2.g - d2.e * d1.g;
    const double twice = 2.0 * v.mu;
    const double nearest = std::round(twice);
    if (nearest >= 1.0 && std::abs(twice - nearest) <= kQuantizationTolerance)
        v.n = static_cast<long long>(nearest);
    return v;
}

/// m0 = u sqrt(e^2 + g^2)
inline double bogomolnyMass(const DyonCharge& d, double u) {
    require(u >= 0.0, "Higgs modulus must be non-negative");
    return u * std::sqrt(d.modulus2());
}

/// Rotation (e, g) -> (e cos t - g sin t, e sin t + g cos t).
inline DyonCharge dualityRotate(const DyonCharge& d, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {d.e * c - d.g * s, d.e * s + d.g * c};
}

// ---------------------------------------------------------------------------

/// The two four-potentials. On the staggered lattice A sits on edges, phiE on
/// nodes, B on faces and phiM on cells; with the collocated placement all four
/// share the nodes. Time derivatives are optional and required only by the
/// operations that need them.
template <class T = double>
struct GeneralizedPotential {
    VectorField<T> A;
    ScalarField<T> phiE;
    VectorField<T> B;
    ScalarField<T> phiM;

    std::optional<VectorField<T>> dA;
    std::optional<ScalarField<T>> dPhiE;
    std::optional<VectorField<T>> dB;
    std::optional<ScalarField<T>> dPhiM;

    static GeneralizedPotential zeros(const Grid& g, bool staggered, bool withDerivatives = true) {
        GeneralizedPotential p;
        const Stagger sv1 = staggered ? Stagger::edge : Stagger::collocated;
        const Stagger sv2 = staggered ? Stagger::face : Stagger::collocated;
        const Stagger ss1 = staggered ? Stagger::node : Stagger::collocated;
        const Stagger ss2 = staggered ? Stagger::cell : Stagger::collocated;
        p.A = VectorField<T>(g, sv1);
        p.phiE = ScalarField<T>(g, ss1);
        p.B = VectorField<T>(g, sv2);
        p.phiM = ScalarField<T>(g, ss2);
        if (withDerivatives) {
            p.dA = p.A;
            p.dPhiE = p.phiE;
            p.dB = p.B;
            p.dPhiM = p.phiM;
        }
        return p;
    }

    bool hasDerivatives() const { return dA && dPhiE && dB && dPhiM; }

    const Grid& grid() const { return A.grid(); }

    /// V = A + iB, only meaningful for the collocated placement.
    ComplexVector packedVector() const {
        require(A.stagger() == B.stagger(), "packing needs A and B on the same placement");
        ComplexVector V(A.grid(), A.stagger());
        for (int a = 0; a < 3; ++a)
            for (std::size_t i = 0; i < A.size(); ++i)
                V[a][i] = std::complex<double>(std::real(A[a][i]), std::real(B[a][i]));
        return V;
    }

    /// Phi = phiE + i phiM
    ComplexScalar packedScalar() const {
        require(phiE.stagger() == phiM.stagger(), "packing needs phiE and phiM on the same placement");
        ComplexScalar P(phiE.grid(), phiE.stagger());
        for (std::size_t i = 0; i < phiE.size(); ++i)
            P[i] = std::complex<double>(std::real(phiE[i]), std::real(phiM[i]));
        return P;
    }
};

/// The two four-currents, co-located with the corresponding potentials
/// (J with A, rhoE with phiE, K with B, rhoM with phiM).
template <class T = double>
struct GeneralizedCurrent {
    VectorField<T> J;
    ScalarField<T> rhoE;
    VectorField<T> K;
    ScalarField<T> rhoM;

    std::optional<VectorField<T>> dJ;
    std::optional<ScalarField<T>> dRhoE;
    std::optional<VectorField<T>> dK;
    std::optional<ScalarField<T>> dRhoM;

    static GeneralizedCurrent zeros(const Grid& g, bool staggered) {
        GeneralizedCurrent c;
        c.J = VectorField<T>(g, staggered ? Stagger::edge : Stagger::collocated);
        c.rhoE = ScalarField<T>(g, staggered ? Stagger::node : Stagger::collocated);
        c.K = VectorField<T>(g, staggered ? Stagger::face : Stagger::collocated);
        c.rhoM = ScalarField<T>(g, staggered ? Stagger::cell : Stagger::collocated);
        return c;
    }

    const Grid& grid() const { return J.grid(); }
};

/// Omega = E + iH.
struct UnifiedField {
    ComplexVector omega;

    RealVector E() const { return realPart(omega); }
    RealVector H() const { return imagPart(omega); }
};

inline UnifiedField packUnified(const RealVector& E, const RealVector& H) {
    require(E.grid() == H.grid(), "E and H live on different grids");
    require(E.stagger() == H.stagger(),
            "packing Omega = E + iH needs E and H on the same placement");
    UnifiedField u{ComplexVector(E.grid(), E.stagger())};
    for (int a = 0; a < 3; ++a)
        for (std::size_t i = 0; i < E.size(); ++i) u.omega[a][i] = {E[a][i], H[a][i]};
    return u;
}

inline std::pair<RealVector, RealVector> unpackUnified(const UnifiedField& u) {
    return {u.E(), u.H()};
}

} // namespace dyonwave
