// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "tresim/report.hpp"
#include "tresim/scenario.hpp"
#include "tresim/simulator.hpp"

namespace tre {

struct SweepRun {
    std::uint64_t seed;
    RunReport report;
    bool assertions_passed;
};

/// Run the scenario once per seed. Runs are fully independent; the parallel
/// path distributes them over OpenMP threads and produces results identical
/// to the serial reference, which is kept for testing and benchmarking.
std::vector<SweepRun> run_sweep_serial(const ScenarioConfig& config,
                                       const std::vector<std::uint64_t>& seeds);
std::vector<SweepRun> run_sweep_parallel(const ScenarioConfig& config,
                                         const std::vector<std::uint64_t>& seeds);

std::vector<std::uint64_t> sequential_seeds(std::uint64_t first, int count);

}  // namespace tre
