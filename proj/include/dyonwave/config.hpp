// config.hpp - scenario configuration (YAML) and its validation
//
// Every key except `scenario` is optional; missing keys take per-scenario
// defaults. Validation collects every problem before failing, each message
// carrying the line of the offending key.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "dyonwave/constants.hpp"
#include "dyonwave/dyon.hpp"
#include "dyonwave/grid.hpp"

namespace dyonwave {

inline const std::vector<std::string>& scenarioNames() {
    static const std::vector<std::string> names{"basis-table", "dispersion",       "damped-decay",
                                                "gdm-pulse",   "duality",          "meissner",
                                                "gauge-invariance", "continuity-linkage", "mms-coupled"};
    return names;
}

struct ScenarioConfig {
    std::string scenario;
    std::string units = "natural";
    PhysicalConstants constants;
    std::uint64_t seed = 1;

    std::optional<std::array<int, 3>> extents;
    std::optional<double> h;
    Boundary boundary = Boundary::periodic;

    std::optional<double> dt;
    std::optional<double> duration;
    std::optional<double> m0;
    std::vector<double> masses;
    std::optional<int> mode;
    std::optional<int> samples;
    std::vector<DyonCharge> charges;
    double sigmaE = 0.0;
    double sigmaM = 0.0;
    bool mediumGiven = false;
    std::string output = "out";
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> errors)
        : std::runtime_error(join(errors)), errors_(std::move(errors)) {}
    const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    static std::string join(const std::vector<std::string>& e) {
        std::string s = "invalid configuration:";
        for (const auto& x : e) s += "\n  " + x;
        return s;
    }
    std::vector<std::string> errors_;
};

struct ValidationResult {
    std::optional<ScenarioConfig> config;
    std::vector<std::string> errors;
    bool ok() const { return config.has_value(); }
};

namespace detail {

class ConfigReader {
public:
    std::vector<std::string> errors;

    void error(const YAML::Node& n, const std::string& key, const std::string& msg) {
        std::ostringstream os;
        if (n && n.Mark().line >= 0) os << "line " << n.Mark().line + 1 << ": ";
        os << key << ": " << msg;
        errors.push_back(os.str());
    }

    template <class T>
    std::optional<T> scalar(const YAML::Node& n, const std::string& key, const char* type) {
        if (!n.IsScalar()) {
            error(n, key, std::string("expected ") + type);
            return std::nullopt;
        }
        try {
            return n.as<T>();
        } catch (const YAML::Exception&) {
            error(n, key, std::string("expected ") + type + ", got '" + n.Scalar() + "'");
            return std::nullopt;
        }
    }

    std::optional<double> positive(const YAML::Node& n, const std::string& key) {
        auto v = scalar<double>(n, key, "a number");
        if (v && !(*v > 0.0 && std::isfinite(*v))) {
            error(n, key, "must be a positive number");
            return std::nullopt;
        }
        return v;
    }

    std::optional<double> nonNegative(const YAML::Node& n, const std::string& key) {
        auto v = scalar<double>(n, key, "a number");
        if (v && !(*v >= 0.0 && std::isfinite(*v))) {
            error(n, key, "must be >= 0");
            return std::nullopt;
        }
        return v;
    }

    void unknownKeys(const YAML::Node& map, const std::set<std::string>& allowed, const std::string& prefix) {
        for (const auto& kv : map) {
            const auto k = kv.first.as<std::string>();
            if (!allowed.count(k)) {
                std::string list;
                for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
                error(kv.first, prefix + k, "unknown key (allowed: " + list + ")");
            }
        }
    }
};

} // namespace detail

/// Parses and validates the YAML text; all-or-nothing.
inline ValidationResult validateConfig(const std::string& text) {
    ValidationResult res;
    detail::ConfigReader r;
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        res.errors.push_back("line " + std::to_string(e.mark.line + 1) + ": YAML syntax error: " + e.msg);
        return res;
    }
    if (!root || !root.IsMap()) {
        res.errors.push_back("top level must be a mapping");
        return res;
    }

    ScenarioConfig cfg;
    r.unknownKeys(root, {"scenario", "units", "seed", "grid", "dt", "duration", "m0", "masses", "mode",
                         "samples", "charges", "medium", "output"},
                  "");

    if (auto n = root["scenario"]) {
        if (auto s = r.scalar<std::string>(n, "scenario", "a string")) {
            const auto& names = scenarioNames();
            if (std::find(names.begin(), names.end(), *s) == names.end()) {
                std::string list;
                for (const auto& a : names) list += (list.empty() ? "" : ", ") + a;
                r.error(n, "scenario", "unknown scenario '" + *s + "' (valid: " + list + ")");
            } else {
                cfg.scenario = *s;
            }
        }
    } else {
        r.errors.push_back("scenario: required key is missing");
    }

    if (auto n = root["units"]) {
        if (auto s = r.scalar<std::string>(n, "units", "a string")) {
            if (*s == "natural" || *s == "si") {
                cfg.units = *s;
                cfg.constants = PhysicalConstants::preset(*s);
            } else {
                r.error(n, "units", "unknown preset '" + *s + "' (valid: natural, si)");
            }
        }
    }
    if (auto n = root["seed"]) {
        if (auto v = r.scalar<long long>(n, "seed", "an integer")) {
            if (*v < 0) r.error(n, "seed", "must be >= 0");
            else cfg.seed = static_cast<std::uint64_t>(*v);
        }
    }

    if (auto g = root["grid"]) {
        if (!g.IsMap()) {
            r.error(g, "grid", "expected a mapping with extents, h, boundary");
        } else {
            r.unknownKeys(g, {"extents", "h", "boundary"}, "grid.");
            if (auto e = g["extents"]) {
                if (!e.IsSequence() || e.size() != 3) {
                    r.error(e, "grid.extents", "expected a list of three integers");
                } else {
                    std::array<int, 3> ext{};
                    bool ok = true;
                    for (std::size_t a = 0; a < 3; ++a) {
                        auto v = r.scalar<int>(e[a], "grid.extents[" + std::to_string(a) + "]", "an integer");
                        if (!v || *v < 1) {
                            if (v) r.error(e[a], "grid.extents[" + std::to_string(a) + "]", "must be >= 1");
                            ok = false;
                        } else {
                            ext[a] = *v;
                        }
                    }
                    if (ok) cfg.extents = ext;
                }
            }
            if (auto n = g["h"]) cfg.h = r.positive(n, "grid.h");
            if (auto n = g["boundary"]) {
                if (auto s = r.scalar<std::string>(n, "grid.boundary", "a string")) {
                    if (*s == "periodic") cfg.boundary = Boundary::periodic;
                    else if (*s == "dirichlet-zero") cfg.boundary = Boundary::dirichlet_zero;
                    else r.error(n, "grid.boundary", "unknown boundary '" + *s + "' (valid: periodic, dirichlet-zero)");
                }
            }
        }
    }

    if (auto n = root["dt"]) cfg.dt = r.positive(n, "dt");
    if (auto n = root["duration"]) cfg.duration = r.positive(n, "duration");
    if (auto n = root["m0"]) cfg.m0 = r.nonNegative(n, "m0");
    if (auto n = root["masses"]) {
        if (!n.IsSequence() || n.size() == 0) {
            r.error(n, "masses", "expected a non-empty list of numbers");
        } else {
            for (std::size_t i = 0; i < n.size(); ++i)
                if (auto v = r.positive(n[i], "masses[" + std::to_string(i) + "]")) cfg.masses.push_back(*v);
        }
    }
    if (auto n = root["mode"]) {
        if (auto v = r.scalar<int>(n, "mode", "an integer")) {
            if (*v < 0) r.error(n, "mode", "must be >= 0");
            else cfg.mode = *v;
        }
    }
    if (auto n = root["samples"]) {
        if (auto v = r.scalar<int>(n, "samples", "an integer")) {
            if (*v < 1) r.error(n, "samples", "must be >= 1");
            else cfg.samples = *v;
        }
    }
    if (auto n = root["charges"]) {
        if (!n.IsSequence()) {
            r.error(n, "charges", "expected a list of {e, g} mappings");
        } else {
            for (std::size_t i = 0; i < n.size(); ++i) {
                const std::string key = "charges[" + std::to_string(i) + "]";
                if (!n[i].IsMap()) {
                    r.error(n[i], key, "expected a mapping with e and g");
                    continue;
                }
                r.unknownKeys(n[i], {"e", "g"}, key + ".");
                DyonCharge d;
                bool ok = true;
                for (const char* part : {"e", "g"}) {
                    if (auto v = n[i][part]) {
                        auto x = r.scalar<double>(v, key + "." + part, "a number");
                        if (x) (part[0] == 'e' ? d.e : d.g) = *x;
                        else ok = false;
                    }
                }
                if (ok) cfg.charges.push_back(d);
            }
        }
    }
    if (auto m = root["medium"]) {
        if (!m.IsMap()) {
            r.error(m, "medium", "expected a mapping with sigma_e, sigma_m");
        } else {
            cfg.mediumGiven = true;
            r.unknownKeys(m, {"sigma_e", "sigma_m"}, "medium.");
            if (auto n = m["sigma_e"]) cfg.sigmaE = r.nonNegative(n, "medium.sigma_e").value_or(0.0);
            if (auto n = m["sigma_m"]) cfg.sigmaM = r.nonNegative(n, "medium.sigma_m").value_or(0.0);
        }
    }
    if (auto n = root["output"]) {
        if (auto s = r.scalar<std::string>(n, "output", "a path")) cfg.output = *s;
    }

    // cross-field rules
    if (cfg.scenario == "meissner" && cfg.m0 && *cfg.m0 <= 0.0)
        r.error(root["m0"], "m0", "must be > 0 for meissner (no screening without mass)");
    if (cfg.scenario == "duality" && cfg.units != "natural")
        r.error(root["units"], "units", "duality scenario requires natural units");

    if (!r.errors.empty()) {
        res.errors = std::move(r.errors);
        return res;
    }
    res.config = std::move(cfg);
    return res;
}

inline ScenarioConfig loadConfig(const std::string& text) {
    auto v = validateConfig(text);
    if (!v.ok()) throw ConfigError(v.errors);
    return *v.config;
}

} // namespace dyonwave
