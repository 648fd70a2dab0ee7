// SPDX-License-Identifier: Apache-2.0
//
// Benchmark of the seeded-sweep runner: serial reference vs OpenMP-parallel
// execution of independent scenario runs, with a result equality check.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tresim/sweep.hpp"

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    int count = 16;
    if (argc > 1) count = std::atoi(argv[1]);

    tre::ScenarioConfig config = tre::canned_scenario("pivot_robustness");
    const auto seeds = tre::sequential_seeds(1, count);

    std::vector<tre::SweepRun> serial_runs, parallel_runs;
    const double serial_ms =
        time_ms([&] { serial_runs = tre::run_sweep_serial(config, seeds); });
    const double parallel_ms =
        time_ms([&] { parallel_runs = tre::run_sweep_parallel(config, seeds); });

    bool identical = serial_runs.size() == parallel_runs.size();
    for (size_t i = 0; identical && i < serial_runs.size(); ++i) {
        identical = serial_runs[i].seed == parallel_runs[i].seed &&
                    serial_runs[i].report.pivot_gate_time ==
                        parallel_runs[i].report.pivot_gate_time &&
                    serial_runs[i].report.duration == parallel_runs[i].report.duration;
    }

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("runs:            %d\n", count);
    std::printf("threads:         %d\n", threads);
    std::printf("serial:          %.1f ms\n", serial_ms);
    std::printf("parallel:        %.1f ms\n", parallel_ms);
    std::printf("speedup:         %.2fx\n", serial_ms / parallel_ms);
    std::printf("results match:   %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
