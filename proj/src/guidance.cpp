// SPDX-License-Identifier: Apache-2.0
#include "tresim/guidance.hpp"

#include <cmath>

#include "tresim/euler.hpp"

namespace tre {

const char* phase_name(FlightPhase phase) {
    switch (phase) {
        case FlightPhase::kGroundedPivotUp: return "GroundedPivotUp";
        case FlightPhase::kHover: return "Hover";
        case FlightPhase::kTransitionToForward: return "TransitionToForward";
        case FlightPhase::kForward: return "Forward";
        case FlightPhase::kTransitionToHover: return "TransitionToHover";
        case FlightPhase::kPivotDown: return "PivotDown";
        case FlightPhase::kLanded: return "Landed";
    }
    return "?";
}

FlightPhase phase_from_name(const std::string& name) {
    for (int i = 0; i <= static_cast<int>(FlightPhase::kLanded); ++i) {
        const auto phase = static_cast<FlightPhase>(i);
        if (name == phase_name(phase)) return phase;
    }
    throw ConfigError("unknown flight phase '" + name + "'");
}

void WaypointPlan::validate() const {
    if (waypoints.size() < 2) {
        throw ValidationError("mission.waypoint", "need at least 2 waypoints");
    }
    if (!(acceptance_radius > 0.0)) {
        throw ValidationError("mission.acceptance_radius", "must be > 0");
    }
    for (const Waypoint& wp : waypoints) {
        if (!(wp.speed > 0.0)) {
            throw ValidationError("mission.waypoint", "segment speed must be > 0");
        }
    }
}

Vec3 pd_accel_reference(const Vec3& pos_error, const Vec3& vel_error,
                        const PdGains& gains) {
    Vec3 a = gains.kp.cwiseProduct(pos_error) + gains.kd.cwiseProduct(vel_error);
    const double norm = a.norm();
    if (norm > gains.accel_max) a *= gains.accel_max / norm;
    return a;
}

Vec3 vector_field_velocity(const Vec3& position, const Vec3& seg_start,
                           const Vec3& seg_end, double speed,
                           const VectorFieldParams& params) {
    const Vec3 track = seg_end - seg_start;
    const double length = track.norm();
    if (length <= 0.0) {
        throw std::invalid_argument("vector_field_velocity: zero-length segment");
    }
    const Vec3 tangent = track / length;
    const Vec3 offset = position - seg_start;
    const Vec3 cross_track = offset - tangent * tangent.dot(offset);

    Vec3 correction = -params.cross_track_gain * cross_track;
    const double mag = correction.norm();
    if (mag > params.lateral_cap) correction *= params.lateral_cap / mag;
    return tangent * speed + correction;
}

Mat3 outer_effectiveness(double yaw, double roll, double pitch,
                         double specific_thrust) {
    const double cy = std::cos(yaw), sy = std::sin(yaw);
    const double cr = std::cos(roll), sr = std::sin(roll);
    const double cp = std::cos(pitch), sp = std::sin(pitch);
    // Column 3 of R(Z X Y); a = -T_Z * r3 + g z.
    const Vec3 r3{cy * sp + sy * sr * cp, sy * sp - cy * sr * cp, cr * cp};
    const Vec3 dr3_droll{sy * cr * cp, -cy * cr * cp, -sr * cp};
    const Vec3 dr3_dpitch{cy * cp - sy * sr * sp, sy * cp + cy * sr * sp, -cr * sp};

    Mat3 jac;
    jac.col(0) = -specific_thrust * dr3_droll;
    jac.col(1) = -specific_thrust * dr3_dpitch;
    jac.col(2) = -r3;
    return jac;
}

OuterIncrements outer_indi_step(const Vec3& accel_meas, const Vec3& accel_ref,
                                const Vec3& euler_zxy, double specific_thrust_0,
                                const OuterLoopConfig& config) {
    AllocationProblem problem;
    problem.G = outer_effectiveness(euler_zxy(0), euler_zxy(1), euler_zxy(2),
                                    specific_thrust_0);
    problem.nu = accel_ref - accel_meas;
    problem.u_p = Eigen::VectorXd::Zero(3);
    problem.w_u = config.input_weights;
    problem.w_v = config.objective_weights;
    problem.gamma = config.gamma;
    problem.lower = Eigen::VectorXd(3);
    problem.upper = Eigen::VectorXd(3);
    problem.lower << -config.attitude_solve_bound, -config.attitude_solve_bound,
        std::max(-config.thrust_step_max, -specific_thrust_0);
    problem.upper << config.attitude_solve_bound, config.attitude_solve_bound,
        std::min(config.thrust_step_max,
                 config.specific_thrust_max - specific_thrust_0);

    const WlsSolution sol = solve_wls(problem);
    const double cap = config.attitude_step_max;
    return {std::clamp(sol.u(0), -cap, cap), std::clamp(sol.u(1), -cap, cap),
            sol.u(2)};
}

double sideslip_correction(double lateral_airflow, double airspeed, double gain,
                           double airspeed_threshold) {
    if (airspeed <= airspeed_threshold) return 0.0;
    return -gain * lateral_airflow;
}

FlightPhase flight_phase_update(FlightPhase phase, const PhaseInputs& in,
                                const PhaseThresholds& t) {
    switch (phase) {
        case FlightPhase::kGroundedPivotUp:
            if (std::abs(in.pitch) <= t.upright_gate &&
                std::abs(in.pitch_rate) <= t.rate_gate) {
                return FlightPhase::kHover;
            }
            break;
        case FlightPhase::kHover:
            if (in.mission_transition_commanded) {
                return FlightPhase::kTransitionToForward;
            }
            break;
        case FlightPhase::kTransitionToForward:
            if (in.airspeed >= t.transition_speed) {
                return FlightPhase::kForward;
            }
            break;
        case FlightPhase::kForward:
            if (in.dist_to_final_wp <= t.decel_distance) {
                return FlightPhase::kTransitionToHover;
            }
            break;
        case FlightPhase::kTransitionToHover:
            if (in.altitude < t.landing_altitude) {
                return FlightPhase::kPivotDown;
            }
            break;
        case FlightPhase::kPivotDown:
            if (std::abs(in.pitch - t.landed_pitch) <= t.upright_gate &&
                std::abs(in.pitch_rate) <= t.rate_gate && in.resting_on_tail) {
                return FlightPhase::kLanded;
            }
            break;
        case FlightPhase::kLanded:
            break;
    }
    return phase;
}

}  // namespace tre
