// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "tresim/scenario.hpp"

namespace tre {

namespace {

ScenarioConfig base_config(const std::string& name) {
    ScenarioConfig c;
    c.name = name;
    return c;
}

ScenarioConfig make_pivot_takeoff() {
    ScenarioConfig c = base_config("pivot_takeoff");
    c.mission.type = MissionType::kPivotOnly;
    c.mission.start = StartState::kGrounded;
    c.duration = 8.0;
    c.assertions = {
        {"assert.phase_sequence", "GroundedPivotUp,Hover"},
        {"assert.pivot_gate_time_max", "5.0"},
        {"assert.pitch_overshoot_deg_max", "5.4"},
        {"assert.mission_complete", "1"},
    };
    return c;
}

ScenarioConfig make_pivot_robustness() {
    ScenarioConfig c = base_config("pivot_robustness");
    c.mission.type = MissionType::kPivotOnly;
    c.mission.start = StartState::kGrounded;
    c.duration = 8.0;
    c.wind_mean = Vec3{-6.7, 0.0, 0.0};
    c.wind_gust_sigma = Vec3{1.45, 0.0, 0.0};
    c.wind_gust_correlation = 2.0;
    c.assertions = {
        {"assert.phase_sequence", "GroundedPivotUp,Hover"},
        {"assert.pivot_gate_time_max", "5.0"},
        {"assert.mission_complete", "1"},
    };
    return c;
}

ScenarioConfig make_hover_hold() {
    ScenarioConfig c = base_config("hover_hold");
    c.mission.type = MissionType::kHold;
    c.mission.start = StartState::kHover;
    c.mission.start_altitude = 3.0;
    c.duration = 20.0;
    c.assertions = {
        {"assert.phase_sequence", "Hover"},
        {"assert.settled_pos_error_max", "5.0,0.3"},
        {"assert.mission_complete", "1"},
    };
    return c;
}

ScenarioConfig make_full_envelope() {
    ScenarioConfig c = base_config("full_envelope");
    c.mission.type = MissionType::kCircuit;
    c.mission.start = StartState::kGrounded;
    c.mission.plan.acceptance_radius = 10.0;
    c.mission.plan.waypoints = {
        {{0.0, 0.0, -30.0}, 16.0},   {{220.0, 0.0, -30.0}, 16.0},
        {{220.0, 220.0, -30.0}, 16.0}, {{0.0, 220.0, -30.0}, 16.0},
        {{0.0, 0.0, -30.0}, 16.0},
    };
    c.duration = 180.0;
    c.wind_mean = Vec3{0.0, 6.7, 0.0};  // west wind
    c.wind_gust_sigma = Vec3{1.05, 1.05, 0.35};
    c.wind_gust_correlation = 2.0;
    c.seed = 4;
    c.assertions = {
        {"assert.phase_sequence",
         "GroundedPivotUp,Hover,TransitionToForward,Forward,TransitionToHover,"
         "PivotDown,Landed"},
        {"assert.all_waypoints_hit", "1"},
        {"assert.sat_outside_pivot_max", "0"},
        {"assert.wind_peak_range", "9.3,11.3"},
        {"assert.mission_complete", "1"},
    };
    return c;
}

ScenarioConfig make_climb_descent() {
    ScenarioConfig c = base_config("climb_descent");
    c.mission.type = MissionType::kVertical;
    c.mission.start = StartState::kHover;
    c.mission.start_altitude = 2.0;
    c.mission.legs = {
        {2.0, 1.0, 3.0},   // settle
        {10.0, 1.0, 0.0},  // climb 8 m
        {10.0, 1.0, 2.0},  // hold
        {2.0, 1.0, 0.0},   // descend 8 m
        {2.0, 1.0, 3.0},   // settle
    };
    c.duration = 27.0;
    c.wind_mean = Vec3{-4.0, 0.0, 0.0};  // north wind
    c.assertions = {
        {"assert.sat_any_max", "0"},
        {"assert.leg_error_ratio_max", "3,1,1.5"},
        {"assert.mission_complete", "1"},
    };
    return c;
}

ScenarioConfig make_climb_descent_e() {
    ScenarioConfig c = make_climb_descent();
    c.name = "climb_descent_e";
    c.attitude.mode = ControlMode::kETailsitter;
    c.assertions = {
        {"assert.leg_lower_sat_min", "3,elevon,0.0001"},
        {"assert.leg_error_ratio_min", "3,1,3.0"},
        {"assert.mission_complete", "1"},
    };
    return c;
}

ScenarioConfig make_sharp_turn() {
    ScenarioConfig c = base_config("sharp_turn");
    c.mission.type = MissionType::kCircuit;
    c.mission.start = StartState::kGrounded;
    c.mission.plan.acceptance_radius = 10.0;
    // Out-and-back track with a 12.3 deg apex at the far waypoint.
    const double apex = deg2rad(12.3);
    const double leg = 350.0;
    const double back_heading = kPi - apex;
    const Vec3 wp2{leg + leg * std::cos(back_heading), leg * std::sin(back_heading),
                   -30.0};
    c.mission.plan.waypoints = {
        {{0.0, 0.0, -30.0}, 16.0},
        {{leg, 0.0, -30.0}, 16.0},
        {wp2, 16.0},
    };
    c.duration = 180.0;
    c.wind_mean = Vec3{0.0, 6.7, 0.0};
    c.assertions = {
        {"assert.phase_sequence",
         "GroundedPivotUp,Hover,TransitionToForward,Forward,TransitionToHover,"
         "PivotDown,Landed"},
        {"assert.all_waypoints_hit", "1"},
        {"assert.sat_outside_pivot_max", "0"},
        {"assert.mission_complete", "1"},
    };
    return c;
}

}  // namespace

std::vector<std::string> canned_scenario_names() {
    return {"pivot_takeoff",  "pivot_robustness", "hover_hold",     "full_envelope",
            "climb_descent",  "climb_descent_e",  "sharp_turn"};
}

ScenarioConfig canned_scenario(const std::string& name) {
    if (name == "pivot_takeoff") return make_pivot_takeoff();
    if (name == "pivot_robustness") return make_pivot_robustness();
    if (name == "hover_hold") return make_hover_hold();
    if (name == "full_envelope") return make_full_envelope();
    if (name == "climb_descent") return make_climb_descent();
    if (name == "climb_descent_e") return make_climb_descent_e();
    if (name == "sharp_turn") return make_sharp_turn();
    throw ConfigError("unknown canned scenario '" + name + "'");
}

}  // namespace tre
