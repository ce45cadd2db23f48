// fit.hpp - least-squares line fits, observed convergence orders and
// complex-frequency extraction from probe time series.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "dyonwave/errors.hpp"

namespace dyonwave {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t n = 0;
};

inline LineFit linearFit(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size(), "linearFit: size mismatch");
    require(x.size() >= 2, "linearFit: at least two points required");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    require(sxx > 0.0, "linearFit: abscissae are all equal");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.n = x.size();
    return f;
}

/// log(e_i / e_{i+1}) / log(ratio) for successive refinements.
inline std::vector<double> observedOrders(const std::vector<double>& errors, double ratio = 2.0) {
    std::vector<double> p;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i)
        p.push_back(std::log(errors[i] / errors[i + 1]) / std::log(ratio));
    return p;
}

/// Continuous phase of a complex series (jumps larger than pi are unwrapped).
inline std::vector<double> unwrappedPhase(const std::vector<std::complex<double>>& u) {
    std::vector<double> ph(u.size());
    double offset = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double a = std::arg(u[i]);
        if (i > 0) {
            double d = a + offset - ph[i - 1];
            while (d > std::numbers::pi) {
                offset -= 2.0 * std::numbers::pi;
                d -= 2.0 * std::numbers::pi;
            }
            while (d < -std::numbers::pi) {
                offset += 2.0 * std::numbers::pi;
                d += 2.0 * std::numbers::pi;
            }
        }
        ph[i] = a + offset;
    }
    return ph;
}

/// For u ~ exp(i w t): Re w from the phase slope, Im w from -d log|u| / dt.
inline std::complex<double> fitComplexFrequency(const std::vector<double>& t,
                                                const std::vector<std::complex<double>>& u) {
    require(t.size() == u.size() && t.size() >= 2, "fitComplexFrequency: need matching series");
    std::vector<double> logAbs(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        require(std::abs(u[i]) > 0.0, "fitComplexFrequency: series passes through zero");
        logAbs[i] = std::log(std::abs(u[i]));
    }
    const double re = linearFit(t, unwrappedPhase(u)).slope;
    const double im = -linearFit(t, logAbs).slope;
    return {re, im};
}

} // namespace dyonwave
