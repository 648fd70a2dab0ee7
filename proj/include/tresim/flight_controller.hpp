// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "tresim/actuators.hpp"
#include "tresim/attitude.hpp"
#include "tresim/guidance.hpp"
#include "tresim/pivot.hpp"
#include "tresim/scenario.hpp"
#include "tresim/types.hpp"

namespace tre {

struct ControllerInputs {
    double t{0.0};
    const RigidBodyState* state{nullptr};
    const ActuatorBank* bank{nullptr};
    Vec3 omega_dot{Vec3::Zero()};   // measured angular acceleration
    Vec3 accel_meas{Vec3::Zero()};  // measured NED acceleration
    double specific_thrust_0{0.0};
    double airspeed{0.0};
    Vec3 air_velocity_body{Vec3::Zero()};
    bool resting_on_tail{false};
};

struct ControllerOutputs {
    Vec6 command{Vec6::Zero()};
    Vec4 nu{Vec4::Zero()};
    Vec3 position_ref{Vec3::Zero()};
    double pitch_ref{0.0};
    double pivot_z{0.0};
    FlightPhase phase{FlightPhase::kGroundedPivotUp};
    int leg{0};
    int wp_index{0};
    int wp_hits{0};
    int wp_total{0};
};

/// Mission-level cascade: flight-phase machine, position/velocity outer loop
/// at the outer rate, pivot or INDI attitude inner loop every step. One
/// instance per vehicle, stepped from a single thread.
class FlightController {
  public:
    explicit FlightController(const ScenarioConfig& config);

    /// Set initial references consistent with the initial plant state.
    void initialize(const RigidBodyState& state);

    /// `outer_due` marks the steps on which the outer loop runs.
    ControllerOutputs step(const ControllerInputs& in, bool outer_due);

    FlightPhase phase() const { return phase_; }

  private:
    void update_phase(const ControllerInputs& in);
    void run_outer(const ControllerInputs& in);
    Vec3 mission_accel_reference(const ControllerInputs& in);
    void update_vertical_profile(double dt);
    void update_yaw_reference(const ControllerInputs& in, double dt);
    double pitch_window_low(double t_in_phase, bool fast_regime) const;
    double pitch_window_high(double airspeed) const;
    Vec3 final_waypoint() const;
    Vec3 active_segment_start() const;
    Vec3 active_segment_end() const;
    double active_segment_speed() const;

    ScenarioConfig config_;
    double outer_dt_;

    FlightPhase phase_{FlightPhase::kGroundedPivotUp};
    double phase_entry_t_{0.0};
    double t_{0.0};

    // Outer-loop products held between outer steps.
    AttitudeReference att_ref_;
    Vec3 pos_ref_{Vec3::Zero()};
    Vec3 vel_ref_{Vec3::Zero()};

    // Mission state.
    int wp_target_{1};  // index of the waypoint the active segment ends at
    std::vector<bool> wp_hit_;
    int leg_{0};
    double leg_hold_elapsed_{0.0};
    double profile_alt_{0.0};
    Vec3 home_{Vec3::Zero()};
    double yaw_ref_base_{0.0};
    double sideslip_integral_{0.0};
    double hover_settle_elapsed_{0.0};
    bool transition_commanded_{false};
    double descent_alt_ref_{0.0};
    bool descending_{false};
    double brake_pitch_{0.0};  // pitch-up demand while bleeding approach speed
};

}  // namespace tre
