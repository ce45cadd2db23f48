// constants.hpp - unit presets

#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "dyonwave/errors.hpp"

namespace dyonwave {

struct PhysicalConstants {
    double c = 1.0;     // speed of light
    double hbar = 1.0;  // reduced Planck constant
    double eps0 = 1.0;  // vacuum permittivity
    double mu0 = 1.0;   // vacuum permeability
    double u = 1.0;     // Higgs vacuum-expectation magnitude

    PhysicalConstants() = default;
    PhysicalConstants(double c_, double hbar_, double eps0_, double mu0_, double u_ = 1.0)
        : c(c_), hbar(hbar_), eps0(eps0_), mu0(mu0_), u(u_) {
        validate();
    }

    void validate() const {
        require(c > 0 && hbar > 0 && eps0 > 0 && mu0 > 0, "physical constants must be positive");
        require(u >= 0, "Higgs modulus must be non-negative");
        require(std::abs(eps0 * mu0 * c * c - 1.0) <= 1e-12, "eps0*mu0*c^2 must equal 1");
    }

    /// c = hbar = eps0 = mu0 = 1.
    static PhysicalConstants natural() { return {}; }

    /// CODATA 2018; eps0 is derived from mu0 and c so the vacuum identity is exact.
    static PhysicalConstants si() {
        const double c = 299792458.0;
        const double mu0 = 1.25663706212e-6;
        return {c, 1.054571817e-34, 1.0 / (mu0 * c * c), mu0, 1.0};
    }

    static PhysicalConstants preset(std::string_view name) {
        if (name == "natural") return natural();
        if (name == "si") return si();
        throw ContractViolation("unknown constants preset '" + std::string(name) +
                                "' (valid: natural, si)");
    }
};

} // namespace dyonwave
