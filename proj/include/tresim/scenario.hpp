// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tresim/aero.hpp"
#include "tresim/attitude.hpp"
#include "tresim/guidance.hpp"
#include "tresim/pivot.hpp"
#include "tresim/types.hpp"

namespace tre {

enum class MissionType { kPivotOnly, kHold, kVertical, kCircuit };
enum class StartState { kGrounded, kHover, kForward };

/// One altitude leg of a vertical-profile mission: ramp to the target at
/// `rate`, then hold for `hold_time`.
struct MissionLeg {
    double target_altitude{2.0};  // m above ground
    double rate{1.0};             // m/s, magnitude of the ramp
    double hold_time{0.0};        // s
};

struct MissionSpec {
    MissionType type{MissionType::kHold};
    StartState start{StartState::kGrounded};
    double start_altitude{2.0};      // m, hover/forward starts
    double start_offset_east{0.0};   // m, initial cross-track offset (forward start)
    Vec3 start_attitude_error{Vec3::Zero()};  // rad [yaw, roll, pitch], hover start
    WaypointPlan plan;               // circuit missions
    std::vector<MissionLeg> legs;    // vertical missions
    double climb_rate{2.0};          // m/s toward the first waypoint altitude
    double descent_rate{1.2};        // m/s during the landing approach
    double settle_time{2.0};         // s of steady hover before transition
};

/// Fully resolved run description. Defaults reproduce the stock airframe; a
/// scenario file overrides individual `section.key = value` entries.
struct ScenarioConfig {
    std::string name{"custom"};
    VehicleParams vehicle;

    PivotGains pivot_gains;
    double pivot_ramp_deg_s{60.0};

    AttitudeLoopConfig attitude;  // attitude.mode selects tre/e/tr

    PdGains pd;
    OuterLoopConfig outer;
    VectorFieldParams field;
    PhaseThresholds thresholds;
    double sideslip_gain{0.25};
    double sideslip_airspeed_gate{4.0};
    double transition_pitch_rate{deg2rad(45.0)};  // rad/s reference ramp
    double forward_brake_max{1.5};                // m/s^2 along-track decel cap
    double hover_tilt_max{0.35};                  // rad
    double bank_max{0.6};                         // rad
    double forward_pitch_min{-1.75};              // rad
    double forward_pitch_max{-1.2};               // rad
    double yaw_rate_max{0.9};                     // rad/s reference slew

    MissionSpec mission;

    AeroParams aero;
    Vec3 wind_mean{Vec3::Zero()};
    Vec3 wind_gust_sigma{Vec3::Zero()};
    double wind_gust_correlation{2.0};
    double pivot_wind_torque_coeff{1.2};

    double dt{0.002};
    int outer_divisor{5};
    double duration{30.0};
    std::uint64_t seed{0};
    double airspeed_noise_std{0.0};
    bool omega_dot_filter{false};
    double omega_dot_filter_cutoff{15.0};  // Hz

    /// Scenario pass/fail checks evaluated against the run report.
    std::vector<std::pair<std::string, std::string>> assertions;

    void validate() const;
    void set_key(const std::string& key, const std::string& value);
};

/// Parse a scenario file (UTF-8 text, `#` comments, `key = value` lines).
/// Unknown keys are rejected.
ScenarioConfig parse_scenario(const std::string& path);
ScenarioConfig parse_scenario_text(const std::string& text);

/// Serialize every resolved key; parsing the result reproduces the config.
std::string serialize_scenario(const ScenarioConfig& config);

/// Built-in scenarios reproducing the reference experiments.
std::vector<std::string> canned_scenario_names();
ScenarioConfig canned_scenario(const std::string& name);

}  // namespace tre
