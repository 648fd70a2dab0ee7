// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "tresim/types.hpp"
#include "tresim/wls.hpp"

namespace tre {

enum class FlightPhase {
    kGroundedPivotUp,
    kHover,
    kTransitionToForward,
    kForward,
    kTransitionToHover,
    kPivotDown,
    kLanded,
};

const char* phase_name(FlightPhase phase);
FlightPhase phase_from_name(const std::string& name);

struct Waypoint {
    Vec3 position{Vec3::Zero()};  // NED, m
    double speed{16.0};           // m/s along the segment ending here
};

struct WaypointPlan {
    std::vector<Waypoint> waypoints;
    double acceptance_radius{10.0};  // m

    void validate() const;
};

struct PdGains {
    Vec3 kp{1.2, 1.2, 1.5};
    Vec3 kd{2.0, 2.0, 2.2};
    double accel_max{6.0};  // m/s^2, norm clamp
};

/// PD acceleration reference from position and velocity errors, norm-clamped.
Vec3 pd_accel_reference(const Vec3& pos_error, const Vec3& vel_error,
                        const PdGains& gains);

struct VectorFieldParams {
    double cross_track_gain{0.8};  // 1/s
    double lateral_cap{5.0};       // m/s
};

/// Desired velocity along a track segment: full segment speed along-track
/// plus a saturated proportional pull toward the line. The correction is
/// orthogonal to the track, so the along-track component never reverses.
Vec3 vector_field_velocity(const Vec3& position, const Vec3& seg_start,
                           const Vec3& seg_end, double speed,
                           const VectorFieldParams& params);

struct OuterLoopConfig {
    Vec3 input_weights{1.0, 1.0, 1.0};       // W_u over [roll, pitch, T_Z]
    Vec3 objective_weights{100.0, 100.0, 1.0};  // W_v over NED accelerations
    double gamma{1.0e4};
    // Allocation trust region: wide enough that attitude absorbs the
    // horizontal-priority demand inside the solver (otherwise the weighting
    // drafts thrust through the hover lean), while the thrust increment is a
    // true per-step slew bound.
    double attitude_solve_bound{0.6};  // rad, inside the allocation
    double attitude_step_max{0.1};     // rad applied per outer step
    double thrust_step_max{0.25};      // m/s^2 per outer step
    double specific_thrust_max{35.0};
    // Thrust idle floor: differential thrust is the only body-x effector, so
    // the motors never spool fully down in flight.
    double specific_thrust_min{1.0};
};

struct OuterIncrements {
    double delta_roll;
    double delta_pitch;
    double delta_specific_thrust;
};

/// Jacobian of the NED specific-force model a = R(yaw,roll,pitch) [0,0,-T_Z]
/// + g z with respect to [roll, pitch, T_Z] at the current attitude.
Mat3 outer_effectiveness(double yaw, double roll, double pitch,
                         double specific_thrust);

/// Outer INDI step: allocates the measured-acceleration error onto bounded
/// roll/pitch/thrust increments.
OuterIncrements outer_indi_step(const Vec3& accel_meas, const Vec3& accel_ref,
                                const Vec3& euler_zxy, double specific_thrust_0,
                                const OuterLoopConfig& config);

/// Proportional sideslip correction: heading-rate command that turns the nose
/// into the relative wind. `lateral_airflow` is the y_b component of the air
/// velocity relative to the vehicle; below the airspeed gate the command is
/// zero.
double sideslip_correction(double lateral_airflow, double airspeed, double gain,
                           double airspeed_threshold);

struct PhaseThresholds {
    double upright_gate{deg2rad(5.4)};    // |pitch| at the end of pivot-up
    double rate_gate{0.1};                // rad/s
    double landing_altitude{0.15};        // m, triggers the pivot-down
    double transition_speed{12.0};        // m/s, completes hover->forward
    double decel_distance{90.0};          // m to final waypoint
    double landed_pitch{-kPi / 2.0};      // resting pitch
};

struct PhaseInputs {
    double pitch;
    double pitch_rate;
    double airspeed;
    double altitude;          // m above ground
    double dist_to_final_wp;  // m, horizontal
    bool mission_transition_commanded{false};
    bool resting_on_tail{false};
};

/// Deterministic phase transitions; each fires exactly at its threshold.
FlightPhase flight_phase_update(FlightPhase phase, const PhaseInputs& in,
                                const PhaseThresholds& thresholds);

}  // namespace tre
