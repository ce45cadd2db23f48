// random.hpp - seeded generator with a fixed double mapping
//
// std::mt19937_64 output is fully specified by the standard; the distribution
// classes are not, so doubles are formed directly from the top 53 bits.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace dyonwave {

class Rng {
public:
    static constexpr const char* algorithm = "mt19937_64/u53-v1";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

    /// Standard normal by Box-Muller (one value per call).
    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace dyonwave
