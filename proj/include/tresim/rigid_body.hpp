// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "tresim/types.hpp"

namespace tre {

/// Total NED force (gravity included by the caller) and body moment at a
/// given rigid-body state. Evaluated at the RK4 substages.
using ForceMomentFn =
    std::function<void(const RigidBodyState&, Vec3& force_ned, Vec3& moment_body)>;

/// One RK4 step of the 6-DOF rigid-body dynamics with Euler's full rotational
/// equation I w_dot + w x I w = M. The rotation is re-orthonormalized after
/// the step.
RigidBodyState rigid_body_step(const RigidBodyState& state, double mass,
                               const Vec3& inertia_diag, const ForceMomentFn& fn,
                               double dt);

/// Pitch acceleration of the tail-pivot (1-DOF) plant for a virtual input
/// u = T sin(delta): q_dot = (l1 u + m g l2 sin(theta) + tau_dist) / I'_yy.
double pivot_virtual_accel(double theta, double virtual_input,
                           double disturbance_torque, const VehicleParams& params);

/// Pitch state of the grounded vehicle rotating about its tail contact line.
struct ContactPivotState {
    double theta{-kPi / 2.0};
    double q{0.0};
    double yaw{0.0};               // heading of the pivot plane, fixed
    Vec3 tail{Vec3::Zero()};       // NED position of the contact line
    double support_force{0.0};     // N upward; negative means lift-off

    /// Full rigid-body state consistent with the constraint (roll zero, the
    /// tail point exactly fixed).
    RigidBodyState to_rigid_body(const VehicleParams& params) const;

    static ContactPivotState capture(const RigidBodyState& state,
                                     const VehicleParams& params);
};

/// Integrate the constrained pivot dynamics one step (RK4 on theta, q) under
/// combined thrust, common tilt and a disturbance torque, with hard ground
/// stops at theta = -+pi/2. Also refreshes the support force; the caller
/// releases the constraint when it goes negative.
ContactPivotState pivot_contact_step(const ContactPivotState& state,
                                     double thrust_total, double deflection,
                                     double disturbance_torque,
                                     const VehicleParams& params, double dt);

}  // namespace tre
