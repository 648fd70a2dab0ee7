// SPDX-License-Identifier: Apache-2.0
#include "tresim/sweep.hpp"

#include <numeric>

namespace tre {

namespace {

SweepRun run_one(const ScenarioConfig& config, std::uint64_t seed) {
    ScenarioConfig run_config = config;
    run_config.seed = seed;
    const TelemetryLog log = simulate_scenario(run_config);
    SweepRun run;
    run.seed = seed;
    run.report = compute_report(log);
    run.assertions_passed = true;
    for (const AssertionResult& a :
         check_assertions(run.report, run_config.assertions)) {
        run.assertions_passed = run.assertions_passed && a.passed;
    }
    return run;
}

}  // namespace

std::vector<SweepRun> run_sweep_serial(const ScenarioConfig& config,
                                       const std::vector<std::uint64_t>& seeds) {
    std::vector<SweepRun> runs(seeds.size());
    for (size_t i = 0; i < seeds.size(); ++i) {
        runs[i] = run_one(config, seeds[i]);
    }
    return runs;
}

std::vector<SweepRun> run_sweep_parallel(const ScenarioConfig& config,
                                         const std::vector<std::uint64_t>& seeds) {
    std::vector<SweepRun> runs(seeds.size());
    const auto n = static_cast<std::int64_t>(seeds.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        runs[i] = run_one(config, seeds[i]);
    }
    return runs;
}

std::vector<std::uint64_t> sequential_seeds(std::uint64_t first, int count) {
    std::vector<std::uint64_t> seeds(count);
    std::iota(seeds.begin(), seeds.end(), first);
    return seeds;
}

}  // namespace tre
