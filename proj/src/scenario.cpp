// SPDX-License-Identifier: Apache-2.0
#include "tresim/scenario.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tre {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    size_t consumed = 0;
    double out;
    try {
        out = std::stod(value, &consumed);
    } catch (const std::exception&) {
        throw ValidationError(key, "expected a number, got '" + value + "'");
    }
    if (consumed != value.size()) {
        throw ValidationError(key, "trailing characters in '" + value + "'");
    }
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    size_t consumed = 0;
    std::uint64_t out;
    try {
        out = std::stoull(value, &consumed);
    } catch (const std::exception&) {
        throw ValidationError(key, "expected an unsigned integer, got '" + value + "'");
    }
    if (consumed != value.size()) {
        throw ValidationError(key, "trailing characters in '" + value + "'");
    }
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    return static_cast<int>(parse_double(key, value));
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "0" || value == "false") return false;
    if (value == "1" || value == "true") return true;
    throw ValidationError(key, "expected 0/1, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value,
                               size_t count) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(key, trim(item)));
    }
    if (out.size() != count) {
        throw ValidationError(key, "expected " + std::to_string(count) +
                                       " comma-separated values");
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(const Vec3& v) {
    return fmt(v(0)) + "," + fmt(v(1)) + "," + fmt(v(2));
}

std::string fmt(const Vec4& v) {
    return fmt(v(0)) + "," + fmt(v(1)) + "," + fmt(v(2)) + "," + fmt(v(3));
}

Vec3 to_vec3(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

const char* mode_name(ControlMode mode) {
    switch (mode) {
        case ControlMode::kTre: return "tre";
        case ControlMode::kETailsitter: return "e_tailsitter";
        case ControlMode::kTrTailsitter: return "tr_tailsitter";
    }
    return "?";
}

const char* mission_type_name(MissionType type) {
    switch (type) {
        case MissionType::kPivotOnly: return "pivot";
        case MissionType::kHold: return "hold";
        case MissionType::kVertical: return "vertical";
        case MissionType::kCircuit: return "circuit";
    }
    return "?";
}

const char* start_name(StartState start) {
    switch (start) {
        case StartState::kGrounded: return "grounded";
        case StartState::kHover: return "hover";
        case StartState::kForward: return "forward";
    }
    return "?";
}

}  // namespace

void ScenarioConfig::set_key(const std::string& key, const std::string& value) {
    if (key == "name") { name = value; return; }
    if (key == "mode") {
        if (value == "tre") attitude.mode = ControlMode::kTre;
        else if (value == "e_tailsitter") attitude.mode = ControlMode::kETailsitter;
        else if (value == "tr_tailsitter") attitude.mode = ControlMode::kTrTailsitter;
        else throw ValidationError(key, "expected tre|e_tailsitter|tr_tailsitter");
        return;
    }

    if (key == "vehicle.mass") { vehicle.mass = parse_double(key, value); return; }
    if (key == "vehicle.gravity") { vehicle.gravity = parse_double(key, value); return; }
    if (key == "vehicle.inertia") {
        vehicle.inertia_diag = to_vec3(parse_list(key, value, 3));
        return;
    }
    if (key == "vehicle.pivot_inertia") {
        vehicle.pivot_inertia = parse_double(key, value);
        return;
    }
    if (key == "vehicle.arm_b") { vehicle.arm_b = parse_double(key, value); return; }
    if (key == "vehicle.arm_l") { vehicle.arm_l = parse_double(key, value); return; }
    if (key == "vehicle.pivot_l1") { vehicle.pivot_l1 = parse_double(key, value); return; }
    if (key == "vehicle.pivot_l2") { vehicle.pivot_l2 = parse_double(key, value); return; }
    if (key == "vehicle.deflection_max") {
        vehicle.deflection_max = parse_double(key, value);
        return;
    }
    if (key == "vehicle.thrust_max") { vehicle.thrust_max = parse_double(key, value); return; }
    if (key == "vehicle.tau_servo") { vehicle.tau_servo = parse_double(key, value); return; }
    if (key == "vehicle.tau_motor") { vehicle.tau_motor = parse_double(key, value); return; }
    if (key == "vehicle.servo_rate_limit") {
        vehicle.servo_rate_limit = parse_double(key, value);
        return;
    }

    if (key == "pivot.k1") { pivot_gains.k1 = parse_double(key, value); return; }
    if (key == "pivot.k2") { pivot_gains.k2 = parse_double(key, value); return; }
    if (key == "pivot.ramp_deg_s") { pivot_ramp_deg_s = parse_double(key, value); return; }
    if (key == "pivot.wind_torque_coeff") {
        pivot_wind_torque_coeff = parse_double(key, value);
        return;
    }

    if (key == "attitude.k_att") {
        attitude.gains.attitude = to_vec3(parse_list(key, value, 3));
        return;
    }
    if (key == "attitude.k_rate") {
        attitude.gains.rate = to_vec3(parse_list(key, value, 3));
        return;
    }
    if (key == "attitude.w_v") {
        const auto v = parse_list(key, value, 4);
        attitude.objective_weights = Vec4{v[0], v[1], v[2], v[3]};
        return;
    }
    if (key == "attitude.gamma") { attitude.gamma = parse_double(key, value); return; }
    if (key == "attitude.weight_band_low") {
        attitude.weights.band_low = parse_double(key, value);
        return;
    }
    if (key == "attitude.weight_band_high") {
        attitude.weights.band_high = parse_double(key, value);
        return;
    }
    if (key == "attitude.weight_min") {
        attitude.weights.weight_min = parse_double(key, value);
        return;
    }
    if (key == "attitude.weight_max") {
        attitude.weights.weight_max = parse_double(key, value);
        return;
    }
    if (key == "attitude.motor_weight") {
        attitude.weights.motor_weight = parse_double(key, value);
        return;
    }
    if (key == "attitude.mode_weight_override") {
        attitude.mode_weight_override = parse_double(key, value);
        return;
    }
    if (key == "attitude.hover_thrust_preference") {
        attitude.hover_thrust_preference = parse_double(key, value);
        return;
    }

    if (key == "guidance.kp") { pd.kp = to_vec3(parse_list(key, value, 3)); return; }
    if (key == "guidance.kd") { pd.kd = to_vec3(parse_list(key, value, 3)); return; }
    if (key == "guidance.accel_max") { pd.accel_max = parse_double(key, value); return; }
    if (key == "guidance.outer_w_u") {
        outer.input_weights = to_vec3(parse_list(key, value, 3));
        return;
    }
    if (key == "guidance.outer_w_v") {
        outer.objective_weights = to_vec3(parse_list(key, value, 3));
        return;
    }
    if (key == "guidance.outer_gamma") { outer.gamma = parse_double(key, value); return; }
    if (key == "guidance.attitude_step_max") {
        outer.attitude_step_max = parse_double(key, value);
        return;
    }
    if (key == "guidance.thrust_step_max") {
        outer.thrust_step_max = parse_double(key, value);
        return;
    }
    if (key == "guidance.specific_thrust_max") {
        outer.specific_thrust_max = parse_double(key, value);
        return;
    }
    if (key == "guidance.specific_thrust_min") {
        outer.specific_thrust_min = parse_double(key, value);
        return;
    }
    if (key == "guidance.attitude_solve_bound") {
        outer.attitude_solve_bound = parse_double(key, value);
        return;
    }
    if (key == "attitude.servo_preference_decay") {
        attitude.servo_preference_decay = parse_double(key, value);
        return;
    }
    if (key == "guidance.cross_track_gain") {
        field.cross_track_gain = parse_double(key, value);
        return;
    }
    if (key == "guidance.lateral_cap") { field.lateral_cap = parse_double(key, value); return; }
    if (key == "guidance.sideslip_gain") { sideslip_gain = parse_double(key, value); return; }
    if (key == "guidance.sideslip_airspeed_gate") {
        sideslip_airspeed_gate = parse_double(key, value);
        return;
    }
    if (key == "guidance.transition_pitch_rate") {
        transition_pitch_rate = parse_double(key, value);
        return;
    }
    if (key == "guidance.hover_tilt_max") { hover_tilt_max = parse_double(key, value); return; }
    if (key == "guidance.bank_max") { bank_max = parse_double(key, value); return; }
    if (key == "guidance.forward_brake_max") {
        forward_brake_max = parse_double(key, value);
        return;
    }
    if (key == "guidance.forward_pitch_min") {
        forward_pitch_min = parse_double(key, value);
        return;
    }
    if (key == "guidance.forward_pitch_max") {
        forward_pitch_max = parse_double(key, value);
        return;
    }
    if (key == "guidance.yaw_rate_max") { yaw_rate_max = parse_double(key, value); return; }
    if (key == "guidance.upright_gate") {
        thresholds.upright_gate = parse_double(key, value);
        return;
    }
    if (key == "guidance.rate_gate") { thresholds.rate_gate = parse_double(key, value); return; }
    if (key == "guidance.landing_altitude") {
        thresholds.landing_altitude = parse_double(key, value);
        return;
    }
    if (key == "guidance.transition_speed") {
        thresholds.transition_speed = parse_double(key, value);
        return;
    }
    if (key == "guidance.decel_distance") {
        thresholds.decel_distance = parse_double(key, value);
        return;
    }

    if (key == "mission.type") {
        if (value == "pivot") mission.type = MissionType::kPivotOnly;
        else if (value == "hold") mission.type = MissionType::kHold;
        else if (value == "vertical") mission.type = MissionType::kVertical;
        else if (value == "circuit") mission.type = MissionType::kCircuit;
        else throw ValidationError(key, "expected pivot|hold|vertical|circuit");
        return;
    }
    if (key == "mission.start") {
        if (value == "grounded") mission.start = StartState::kGrounded;
        else if (value == "hover") mission.start = StartState::kHover;
        else if (value == "forward") mission.start = StartState::kForward;
        else throw ValidationError(key, "expected grounded|hover|forward");
        return;
    }
    if (key == "mission.start_altitude") {
        mission.start_altitude = parse_double(key, value);
        return;
    }
    if (key == "mission.start_offset_east") {
        mission.start_offset_east = parse_double(key, value);
        return;
    }
    if (key == "mission.start_attitude_error") {
        mission.start_attitude_error = to_vec3(parse_list(key, value, 3));
        return;
    }
    if (key == "mission.acceptance_radius") {
        mission.plan.acceptance_radius = parse_double(key, value);
        return;
    }
    if (key == "mission.waypoint") {
        const auto v = parse_list(key, value, 4);
        mission.plan.waypoints.push_back({Vec3{v[0], v[1], v[2]}, v[3]});
        return;
    }
    if (key == "mission.leg") {
        const auto v = parse_list(key, value, 3);
        mission.legs.push_back({v[0], v[1], v[2]});
        return;
    }
    if (key == "mission.climb_rate") { mission.climb_rate = parse_double(key, value); return; }
    if (key == "mission.descent_rate") {
        mission.descent_rate = parse_double(key, value);
        return;
    }
    if (key == "mission.settle_time") { mission.settle_time = parse_double(key, value); return; }

    if (key == "aero.air_density") { aero.air_density = parse_double(key, value); return; }
    if (key == "aero.wing_area") { aero.wing_area = parse_double(key, value); return; }
    if (key == "aero.chord") { aero.chord = parse_double(key, value); return; }
    if (key == "aero.lift_slope") { aero.lift_slope = parse_double(key, value); return; }
    if (key == "aero.drag_zero") { aero.drag_zero = parse_double(key, value); return; }
    if (key == "aero.drag_k") { aero.drag_k = parse_double(key, value); return; }
    if (key == "aero.side_area") { aero.side_area = parse_double(key, value); return; }
    if (key == "aero.side_cd") { aero.side_cd = parse_double(key, value); return; }
    if (key == "aero.ac_offset") { aero.ac_offset = parse_double(key, value); return; }
    if (key == "aero.cp_travel") { aero.cp_travel = parse_double(key, value); return; }
    if (key == "aero.moment_damping") {
        aero.moment_damping = to_vec3(parse_list(key, value, 3));
        return;
    }
    if (key == "aero.elevon_pitch_flow_gain") {
        aero.elevon_pitch_flow_gain = parse_double(key, value);
        return;
    }
    if (key == "aero.elevon_pitch_prop_gain") {
        aero.elevon_pitch_prop_gain = parse_double(key, value);
        return;
    }
    if (key == "aero.elevon_yaw_flow_gain") {
        aero.elevon_yaw_flow_gain = parse_double(key, value);
        return;
    }
    if (key == "aero.elevon_yaw_prop_gain") {
        aero.elevon_yaw_prop_gain = parse_double(key, value);
        return;
    }
    if (key == "aero.descent_fade_speed") {
        aero.descent_fade_speed = parse_double(key, value);
        return;
    }
    if (key == "aero.descent_fade_floor") {
        aero.descent_fade_floor = parse_double(key, value);
        return;
    }
    if (key == "aero.elevon_arm") { aero.elevon_arm = parse_double(key, value); return; }
    if (key == "aero.tilt_roll_washout") {
        aero.tilt_roll_washout = parse_double(key, value);
        return;
    }

    if (key == "wind.mean") { wind_mean = to_vec3(parse_list(key, value, 3)); return; }
    if (key == "wind.gust_sigma") {
        wind_gust_sigma = to_vec3(parse_list(key, value, 3));
        return;
    }
    if (key == "wind.gust_correlation") {
        wind_gust_correlation = parse_double(key, value);
        return;
    }

    if (key == "sim.dt") { dt = parse_double(key, value); return; }
    if (key == "sim.outer_divisor") { outer_divisor = parse_int(key, value); return; }
    if (key == "sim.duration") { duration = parse_double(key, value); return; }
    if (key == "sim.seed") { seed = parse_u64(key, value); return; }
    if (key == "sim.airspeed_noise_std") {
        airspeed_noise_std = parse_double(key, value);
        return;
    }
    if (key == "sim.omega_dot_filter") { omega_dot_filter = parse_bool(key, value); return; }
    if (key == "sim.omega_dot_filter_cutoff") {
        omega_dot_filter_cutoff = parse_double(key, value);
        return;
    }

    if (key.rfind("assert.", 0) == 0) {
        assertions.emplace_back(key, value);
        return;
    }

    throw ValidationError(key, "unknown key");
}

void ScenarioConfig::validate() const {
    vehicle.validate();
    if (!(pivot_gains.k1 > 0.0)) throw ValidationError("pivot.k1", "gains must be positive");
    if (!(pivot_gains.k2 > 0.0)) throw ValidationError("pivot.k2", "gains must be positive");
    if (!(pivot_ramp_deg_s > 0.0))
        throw ValidationError("pivot.ramp_deg_s", "must be positive");
    if (!(attitude.gains.attitude.minCoeff() > 0.0))
        throw ValidationError("attitude.k_att", "gains must be positive");
    if (!(attitude.gains.rate.minCoeff() > 0.0))
        throw ValidationError("attitude.k_rate", "gains must be positive");
    if (!(attitude.objective_weights.minCoeff() >= 0.0))
        throw ValidationError("attitude.w_v", "weights must be non-negative");
    if (!(attitude.gamma > 0.0)) throw ValidationError("attitude.gamma", "must be positive");
    if (!(attitude.weights.band_low < attitude.weights.band_high))
        throw ValidationError("attitude.weight_band_low", "band must be ordered");
    if (!(pd.kp.minCoeff() > 0.0 && pd.kd.minCoeff() > 0.0))
        throw ValidationError("guidance.kp", "gains must be positive");
    if (!(dt > 0.0)) throw ValidationError("sim.dt", "must be positive");
    if (outer_divisor < 1) throw ValidationError("sim.outer_divisor", "must be >= 1");
    if (!(duration > 0.0)) throw ValidationError("sim.duration", "must be positive");
    if (mission.type == MissionType::kCircuit) {
        mission.plan.validate();
    }
    if (mission.type == MissionType::kVertical && mission.legs.empty()) {
        throw ValidationError("mission.leg", "vertical mission needs at least one leg");
    }
}

std::string serialize_scenario(const ScenarioConfig& c) {
    std::ostringstream out;
    out << "name = " << c.name << "\n";
    out << "mode = " << mode_name(c.attitude.mode) << "\n";

    out << "vehicle.mass = " << fmt(c.vehicle.mass) << "\n";
    out << "vehicle.gravity = " << fmt(c.vehicle.gravity) << "\n";
    out << "vehicle.inertia = " << fmt(c.vehicle.inertia_diag) << "\n";
    out << "vehicle.pivot_inertia = " << fmt(c.vehicle.pivot_inertia) << "\n";
    out << "vehicle.arm_b = " << fmt(c.vehicle.arm_b) << "\n";
    out << "vehicle.arm_l = " << fmt(c.vehicle.arm_l) << "\n";
    out << "vehicle.pivot_l1 = " << fmt(c.vehicle.pivot_l1) << "\n";
    out << "vehicle.pivot_l2 = " << fmt(c.vehicle.pivot_l2) << "\n";
    out << "vehicle.deflection_max = " << fmt(c.vehicle.deflection_max) << "\n";
    out << "vehicle.thrust_max = " << fmt(c.vehicle.thrust_max) << "\n";
    out << "vehicle.tau_servo = " << fmt(c.vehicle.tau_servo) << "\n";
    out << "vehicle.tau_motor = " << fmt(c.vehicle.tau_motor) << "\n";
    out << "vehicle.servo_rate_limit = " << fmt(c.vehicle.servo_rate_limit) << "\n";

    out << "pivot.k1 = " << fmt(c.pivot_gains.k1) << "\n";
    out << "pivot.k2 = " << fmt(c.pivot_gains.k2) << "\n";
    out << "pivot.ramp_deg_s = " << fmt(c.pivot_ramp_deg_s) << "\n";
    out << "pivot.wind_torque_coeff = " << fmt(c.pivot_wind_torque_coeff) << "\n";

    out << "attitude.k_att = " << fmt(c.attitude.gains.attitude) << "\n";
    out << "attitude.k_rate = " << fmt(c.attitude.gains.rate) << "\n";
    out << "attitude.w_v = " << fmt(c.attitude.objective_weights) << "\n";
    out << "attitude.gamma = " << fmt(c.attitude.gamma) << "\n";
    out << "attitude.weight_band_low = " << fmt(c.attitude.weights.band_low) << "\n";
    out << "attitude.weight_band_high = " << fmt(c.attitude.weights.band_high) << "\n";
    out << "attitude.weight_min = " << fmt(c.attitude.weights.weight_min) << "\n";
    out << "attitude.weight_max = " << fmt(c.attitude.weights.weight_max) << "\n";
    out << "attitude.motor_weight = " << fmt(c.attitude.weights.motor_weight) << "\n";
    out << "attitude.mode_weight_override = " << fmt(c.attitude.mode_weight_override)
        << "\n";
    out << "attitude.hover_thrust_preference = "
        << fmt(c.attitude.hover_thrust_preference) << "\n";
    out << "attitude.servo_preference_decay = "
        << fmt(c.attitude.servo_preference_decay) << "\n";

    out << "guidance.kp = " << fmt(c.pd.kp) << "\n";
    out << "guidance.kd = " << fmt(c.pd.kd) << "\n";
    out << "guidance.accel_max = " << fmt(c.pd.accel_max) << "\n";
    out << "guidance.outer_w_u = " << fmt(c.outer.input_weights) << "\n";
    out << "guidance.outer_w_v = " << fmt(c.outer.objective_weights) << "\n";
    out << "guidance.outer_gamma = " << fmt(c.outer.gamma) << "\n";
    out << "guidance.attitude_step_max = " << fmt(c.outer.attitude_step_max) << "\n";
    out << "guidance.thrust_step_max = " << fmt(c.outer.thrust_step_max) << "\n";
    out << "guidance.specific_thrust_max = " << fmt(c.outer.specific_thrust_max) << "\n";
    out << "guidance.specific_thrust_min = " << fmt(c.outer.specific_thrust_min) << "\n";
    out << "guidance.attitude_solve_bound = " << fmt(c.outer.attitude_solve_bound)
        << "\n";
    out << "guidance.cross_track_gain = " << fmt(c.field.cross_track_gain) << "\n";
    out << "guidance.lateral_cap = " << fmt(c.field.lateral_cap) << "\n";
    out << "guidance.sideslip_gain = " << fmt(c.sideslip_gain) << "\n";
    out << "guidance.sideslip_airspeed_gate = " << fmt(c.sideslip_airspeed_gate) << "\n";
    out << "guidance.transition_pitch_rate = " << fmt(c.transition_pitch_rate) << "\n";
    out << "guidance.forward_brake_max = " << fmt(c.forward_brake_max) << "\n";
    out << "guidance.hover_tilt_max = " << fmt(c.hover_tilt_max) << "\n";
    out << "guidance.bank_max = " << fmt(c.bank_max) << "\n";
    out << "guidance.forward_pitch_min = " << fmt(c.forward_pitch_min) << "\n";
    out << "guidance.forward_pitch_max = " << fmt(c.forward_pitch_max) << "\n";
    out << "guidance.yaw_rate_max = " << fmt(c.yaw_rate_max) << "\n";
    out << "guidance.upright_gate = " << fmt(c.thresholds.upright_gate) << "\n";
    out << "guidance.rate_gate = " << fmt(c.thresholds.rate_gate) << "\n";
    out << "guidance.landing_altitude = " << fmt(c.thresholds.landing_altitude) << "\n";
    out << "guidance.transition_speed = " << fmt(c.thresholds.transition_speed) << "\n";
    out << "guidance.decel_distance = " << fmt(c.thresholds.decel_distance) << "\n";

    out << "mission.type = " << mission_type_name(c.mission.type) << "\n";
    out << "mission.start = " << start_name(c.mission.start) << "\n";
    out << "mission.start_altitude = " << fmt(c.mission.start_altitude) << "\n";
    out << "mission.start_offset_east = " << fmt(c.mission.start_offset_east) << "\n";
    out << "mission.start_attitude_error = " << fmt(c.mission.start_attitude_error)
        << "\n";
    out << "mission.acceptance_radius = " << fmt(c.mission.plan.acceptance_radius)
        << "\n";
    for (const Waypoint& wp : c.mission.plan.waypoints) {
        out << "mission.waypoint = " << fmt(wp.position) << "," << fmt(wp.speed) << "\n";
    }
    for (const MissionLeg& leg : c.mission.legs) {
        out << "mission.leg = " << fmt(leg.target_altitude) << "," << fmt(leg.rate)
            << "," << fmt(leg.hold_time) << "\n";
    }
    out << "mission.climb_rate = " << fmt(c.mission.climb_rate) << "\n";
    out << "mission.descent_rate = " << fmt(c.mission.descent_rate) << "\n";
    out << "mission.settle_time = " << fmt(c.mission.settle_time) << "\n";

    out << "aero.air_density = " << fmt(c.aero.air_density) << "\n";
    out << "aero.wing_area = " << fmt(c.aero.wing_area) << "\n";
    out << "aero.chord = " << fmt(c.aero.chord) << "\n";
    out << "aero.lift_slope = " << fmt(c.aero.lift_slope) << "\n";
    out << "aero.drag_zero = " << fmt(c.aero.drag_zero) << "\n";
    out << "aero.drag_k = " << fmt(c.aero.drag_k) << "\n";
    out << "aero.side_area = " << fmt(c.aero.side_area) << "\n";
    out << "aero.side_cd = " << fmt(c.aero.side_cd) << "\n";
    out << "aero.ac_offset = " << fmt(c.aero.ac_offset) << "\n";
    out << "aero.cp_travel = " << fmt(c.aero.cp_travel) << "\n";
    out << "aero.moment_damping = " << fmt(c.aero.moment_damping) << "\n";
    out << "aero.elevon_pitch_flow_gain = " << fmt(c.aero.elevon_pitch_flow_gain) << "\n";
    out << "aero.elevon_pitch_prop_gain = " << fmt(c.aero.elevon_pitch_prop_gain) << "\n";
    out << "aero.elevon_yaw_flow_gain = " << fmt(c.aero.elevon_yaw_flow_gain) << "\n";
    out << "aero.elevon_yaw_prop_gain = " << fmt(c.aero.elevon_yaw_prop_gain) << "\n";
    out << "aero.descent_fade_speed = " << fmt(c.aero.descent_fade_speed) << "\n";
    out << "aero.descent_fade_floor = " << fmt(c.aero.descent_fade_floor) << "\n";
    out << "aero.elevon_arm = " << fmt(c.aero.elevon_arm) << "\n";
    out << "aero.tilt_roll_washout = " << fmt(c.aero.tilt_roll_washout) << "\n";

    out << "wind.mean = " << fmt(c.wind_mean) << "\n";
    out << "wind.gust_sigma = " << fmt(c.wind_gust_sigma) << "\n";
    out << "wind.gust_correlation = " << fmt(c.wind_gust_correlation) << "\n";

    out << "sim.dt = " << fmt(c.dt) << "\n";
    out << "sim.outer_divisor = " << c.outer_divisor << "\n";
    out << "sim.duration = " << fmt(c.duration) << "\n";
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%" PRIu64, c.seed);
        out << "sim.seed = " << buf << "\n";
    }
    out << "sim.airspeed_noise_std = " << fmt(c.airspeed_noise_std) << "\n";
    out << "sim.omega_dot_filter = " << (c.omega_dot_filter ? 1 : 0) << "\n";
    out << "sim.omega_dot_filter_cutoff = " << fmt(c.omega_dot_filter_cutoff) << "\n";

    for (const auto& [key, value] : c.assertions) {
        out << key << " = " << value << "\n";
    }
    return out.str();
}

ScenarioConfig parse_scenario_text(const std::string& text) {
    ScenarioConfig config;
    // Repeatable keys replace rather than accumulate on top of defaults.
    config.mission.plan.waypoints.clear();
    config.mission.legs.clear();

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value', got '" + line + "'", line_no);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", line_no);
        config.set_key(key, value);
    }
    config.validate();
    return config;
}

ScenarioConfig parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str());
}

}  // namespace tre
