// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "tresim/telemetry.hpp"

namespace tre {

struct PhaseStats {
    FlightPhase phase;
    double entry_t{0.0};
    double exit_t{0.0};
    std::int64_t steps{0};
    double mean_pos_error{0.0};
    double max_pos_error{0.0};
    std::array<double, 6> upper_duty{};  // fraction of steps at the upper bound
    std::array<double, 6> lower_duty{};
};

struct LegStats {
    int leg{0};
    double start_t{0.0};
    double end_t{0.0};
    std::int64_t steps{0};
    double mean_pos_error{0.0};
    double max_pos_error{0.0};
    std::array<double, 6> upper_duty{};
    std::array<double, 6> lower_duty{};
};

struct WaypointRecord {
    int index;
    double t;
};

/// Derived entirely from the telemetry log, so offline recomputation from the
/// CSV reproduces the online report field for field.
struct RunReport {
    double duration{0.0};
    std::vector<PhaseStats> phases;  // ordered by first entry
    std::vector<LegStats> legs;
    std::vector<WaypointRecord> waypoints_reached;
    int waypoints_total{0};
    bool all_waypoints_hit{false};
    double sat_duty_outside_pivot{0.0};  // any actuator, any bound
    double sat_duty_any{0.0};
    double pivot_gate_time{-1.0};        // Hover entry, s; -1 when absent
    double pivot_lyapunov_slope{0.0};    // d ln(E)/dt fit over the pivot-up
    bool pivot_fit_valid{false};
    double max_pitch{-kPi};
    double wind_peak{0.0};
    std::vector<double> max_error_per_second;  // bucket i covers t in [i, i+1)
    bool diverged{false};
    std::int64_t divergence_step{-1};
    bool mission_complete{false};  // ran to the end without divergence
};

RunReport compute_report(const TelemetryLog& log);

std::string report_text(const RunReport& report);
std::string report_key_values(const RunReport& report);

struct AssertionResult {
    std::string key;
    std::string detail;
    bool passed;
};

/// Evaluate a scenario's `assert.*` entries against the report.
std::vector<AssertionResult> check_assertions(
    const RunReport& report,
    const std::vector<std::pair<std::string, std::string>>& assertions);

}  // namespace tre
