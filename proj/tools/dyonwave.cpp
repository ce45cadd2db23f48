// dyonwave - command-line entry point
//
//   dyonwave run <config> [--threads N] [--out DIR]
//   dyonwave list-scenarios
//   dyonwave validate <config>
//
// Exit codes: 0 pass, 1 acceptance failure, 2 configuration / output / CFL
// error, 3 numerical divergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dyonwave/dyonwave.hpp"

namespace {

std::string readFile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw dyonwave::ConfigError({"cannot read configuration file '" + path + "'"});
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void printSummary(const dyonwave::RunSummary& s) {
    for (const auto& m : s.measurements)
        std::printf("%-4s %-40s measured=%-14.8g theory=%-14.8g %s=%.3g (tol %.3g)\n", m.pass ? "PASS" : "FAIL",
                    m.name.c_str(), m.measured, m.theory, m.rule == "at_least" ? "value" : "error",
                    m.rule == "at_least" ? m.measured : m.error, m.tolerance);
    std::printf("%s: %s (%.2f s)\n", s.scenario.c_str(), s.pass() ? "pass" : "FAIL", s.wallSeconds);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dyonwave: dyon field and wave-function experiments"};
    app.require_subcommand(1);

    std::string configPath, outDir;
    int threads = 0;
    auto* run = app.add_subcommand("run", "Run the scenario described by a configuration file");
    run->add_option("config", configPath, "YAML configuration")->required();
    run->add_option("--threads", threads, "Worker thread bound (results do not depend on it)")->check(CLI::PositiveNumber);
    run->add_option("--out", outDir, "Output directory (overrides the configuration)");

    auto* list = app.add_subcommand("list-scenarios", "Print the available scenario names");

    std::string validatePath;
    auto* validate = app.add_subcommand("validate", "Check a configuration file and report every problem");
    validate->add_option("config", validatePath, "YAML configuration")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*list) {
            for (const auto& n : dyonwave::scenarioNames()) std::cout << n << '\n';
            return 0;
        }
        if (*validate) {
            const auto res = dyonwave::validateConfig(readFile(validatePath));
            if (!res.ok()) {
                for (const auto& e : res.errors) std::cerr << validatePath << ": " << e << '\n';
                return 2;
            }
            std::cout << validatePath << ": valid (scenario " << res.config->scenario << ")\n";
            return 0;
        }

        auto cfg = dyonwave::loadConfig(readFile(configPath));
        if (!outDir.empty()) cfg.output = outDir;
        if (threads > 0) dyonwave::setThreadCount(static_cast<unsigned>(threads));
        const auto summary = dyonwave::runScenario(cfg, cfg.output);
        printSummary(summary);
        return summary.pass() ? 0 : 1;
    } catch (const dyonwave::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const dyonwave::CflViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const dyonwave::OutputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const dyonwave::NumericalDivergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const dyonwave::NonConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const dyonwave::ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
