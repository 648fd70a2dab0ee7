// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tresim/actuators.hpp"
#include "tresim/effectiveness.hpp"
#include "tresim/euler.hpp"
#include "tresim/types.hpp"
#include "tresim/wls.hpp"

namespace tre {

/// Actuator-suite selection. The airframe can emulate an elevon-only or
/// tilt-only tailsitter by pushing the unwanted actuator's allocation weight
/// to 100000, dropping the favored one's to zero, and pinning the unused
/// surface commands to center.
enum class ControlMode { kTre, kETailsitter, kTrTailsitter };

struct AttitudeGains {
    Vec3 attitude{8.0, 8.0, 5.0};  // 1/s, per body axis
    Vec3 rate{20.0, 20.0, 10.0};   // 1/s
};

struct AttitudeReference {
    double yaw{0.0};
    double roll{0.0};
    double pitch{0.0};
    double specific_thrust{0.0};  // T_Z command, m/s^2

    Mat3 rotation() const { return euler_zxy_to_rotation(yaw, roll, pitch); }
};

/// Pseudo-control [roll accel, pitch accel, yaw accel, T_Z] from cascaded
/// attitude and rate errors: nu_i = K_rate,i (K_att,i e_i - omega_i) with e
/// the body-frame rotation-vector error onto the reference; T_Z passes
/// through from the outer loop.
Vec4 attitude_pseudo_control(const RigidBodyState& state, const AttitudeReference& ref,
                             const AttitudeGains& gains);

struct AttitudeLoopConfig {
    AttitudeGains gains;
    WeightSchedule weights;
    Vec4 objective_weights{10.0, 10.0, 0.1, 1.0};  // W_v, body axes then thrust
    double gamma{1.0e4};
    ControlMode mode{ControlMode::kTre};
    double mode_weight_override{1.0e5};
    double hover_thrust_preference{1.0};  // fraction of mg split across motors
    // Per-step pull of the servo preference toward center. Redundant servo
    // deflections bleed off through the allocation null space instead of
    // freezing wherever a transient left them.
    double servo_preference_decay{0.002};
};

struct IndiMeasurement {
    Vec3 omega_dot;         // filtered angular acceleration
    double specific_thrust;  // T_Z realized by the modeled actuator state
};

struct IndiCommand {
    Vec6 u_c;
    Vec4 nu;
    int wls_iterations{0};
    bool wls_iteration_limit{false};
};

/// One inner-loop step: builds the effectiveness at the modeled actuator
/// state, forms the incremental objective nu - [omega_dot_0; T_Z0] + G u0,
/// and allocates it over the bounded actuators.
IndiCommand indi_attitude_step(const IndiMeasurement& meas, const ActuatorBank& bank,
                               const RigidBodyState& state, double airspeed,
                               const AttitudeReference& ref,
                               const AttitudeLoopConfig& config,
                               const VehicleParams& params);

/// Allocation input weights with the control-mode override applied.
Vec6 mode_actuator_weights(double pitch, const AttitudeLoopConfig& config);

}  // namespace tre
