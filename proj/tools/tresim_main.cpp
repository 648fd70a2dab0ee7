// SPDX-License-Identifier: Apache-2.0
//
// Scenario front end: run simulations, recompute reports from telemetry, and
// list the built-in scenarios.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tresim/report.hpp"
#include "tresim/scenario.hpp"
#include "tresim/simulator.hpp"
#include "tresim/sweep.hpp"

namespace {

tre::ScenarioConfig load_scenario(const std::string& spec) {
    const auto names = tre::canned_scenario_names();
    for (const std::string& name : names) {
        if (name == spec) return tre::canned_scenario(name);
    }
    return tre::parse_scenario(spec);
}

void apply_overrides(tre::ScenarioConfig& config,
                     const std::vector<std::string>& sets) {
    for (const std::string& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw tre::ConfigError("--set expects key=value, got '" + kv + "'");
        }
        config.set_key(kv.substr(0, eq), kv.substr(eq + 1));
    }
    config.validate();
}

int print_assertions(const tre::RunReport& report,
                     const std::vector<std::pair<std::string, std::string>>& asserts) {
    int failures = 0;
    for (const tre::AssertionResult& a : tre::check_assertions(report, asserts)) {
        std::cout << (a.passed ? "PASS " : "FAIL ") << a.key << " (" << a.detail
                  << ")\n";
        if (!a.passed) ++failures;
    }
    return failures;
}

int run_command(const std::string& scenario, const std::string& out_dir,
                std::optional<std::uint64_t> seed,
                const std::vector<std::string>& sets, int sweep, bool serial) {
    tre::ScenarioConfig config = load_scenario(scenario);
    apply_overrides(config, sets);
    if (seed) config.seed = *seed;

    const bool want_output = !out_dir.empty();
    if (want_output) {
        std::filesystem::create_directories(out_dir);
        std::ofstream cfg(out_dir + "/scenario.cfg");
        cfg << tre::serialize_scenario(config);
    }

    if (sweep > 1) {
        const auto seeds = tre::sequential_seeds(config.seed, sweep);
        const auto runs = serial ? tre::run_sweep_serial(config, seeds)
                                 : tre::run_sweep_parallel(config, seeds);
        int failures = 0;
        double min_gate = 1e9, max_gate = -1e9;
        for (const tre::SweepRun& run : runs) {
            std::cout << "seed " << run.seed << ": "
                      << (run.assertions_passed ? "PASS" : "FAIL")
                      << " gate_time=" << run.report.pivot_gate_time << "\n";
            if (!run.assertions_passed) ++failures;
            if (run.report.pivot_gate_time >= 0.0) {
                min_gate = std::min(min_gate, run.report.pivot_gate_time);
                max_gate = std::max(max_gate, run.report.pivot_gate_time);
            }
            if (want_output) {
                std::ofstream rep(out_dir + "/report_seed_" +
                                  std::to_string(run.seed) + ".txt");
                rep << tre::report_text(run.report);
            }
        }
        if (min_gate <= max_gate) {
            std::cout << "gate time spread: [" << min_gate << ", " << max_gate
                      << "] s\n";
        }
        return failures == 0 ? 0 : 1;
    }

    const tre::TelemetryLog log = tre::simulate_scenario(config);
    const tre::RunReport report = tre::compute_report(log);

    if (want_output) {
        log.write_csv_file(out_dir + "/telemetry.csv");
        std::ofstream rep(out_dir + "/report.txt");
        rep << tre::report_text(report);
        std::ofstream kv(out_dir + "/report.kv");
        kv << tre::report_key_values(report);
    }

    std::cout << tre::report_text(report);
    const int failures = print_assertions(report, config.assertions);
    if (log.divergence) {
        std::cerr << "numerical divergence at step " << log.divergence->step << ": "
                  << log.divergence->what << "\n";
        return 2;
    }
    return failures == 0 ? 0 : 1;
}

int report_command(const std::string& csv_path, bool key_values) {
    const tre::TelemetryLog log = tre::TelemetryLog::read_csv_file(csv_path);
    const tre::RunReport report = tre::compute_report(log);
    std::cout << (key_values ? tre::report_key_values(report)
                             : tre::report_text(report));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TRE tailsitter flight-control simulator"};
    app.require_subcommand(1);

    std::string scenario;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> sets;
    int sweep = 1;
    bool serial = false;

    CLI::App* run = app.add_subcommand("run", "simulate a scenario");
    run->add_option("scenario", scenario,
                    "built-in scenario name or path to a scenario file")
        ->required();
    run->add_option("--out", out_dir, "directory for telemetry and reports");
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--set", sets, "override a config key (key=value)");
    run->add_option("--sweep", sweep, "run N seeded repetitions");
    run->add_flag("--serial", serial, "disable the parallel sweep path");

    std::string csv_path;
    bool key_values = false;
    CLI::App* report = app.add_subcommand("report", "recompute a report from telemetry");
    report->add_option("csv", csv_path, "telemetry CSV file")->required();
    report->add_flag("--kv", key_values, "machine-readable key=value output");

    CLI::App* list = app.add_subcommand("list-scenarios", "list built-in scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return run_command(scenario, out_dir, seed, sets, sweep, serial);
        }
        if (report->parsed()) {
            return report_command(csv_path, key_values);
        }
        if (list->parsed()) {
            for (const std::string& name : tre::canned_scenario_names()) {
                std::cout << name << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
