// SPDX-License-Identifier: Apache-2.0
#include "tresim/rigid_body.hpp"

#include <cmath>

#include "tresim/euler.hpp"
#include "tresim/physics.hpp"

namespace tre {

namespace {

struct Derivative {
    Vec3 dp, dv, domega;
    Mat3 dr;
};

Derivative evaluate(const RigidBodyState& s, double mass, const Vec3& inertia,
                    const ForceMomentFn& fn) {
    Vec3 force = Vec3::Zero();
    Vec3 moment = Vec3::Zero();
    fn(s, force, moment);
    Derivative d;
    d.dp = s.velocity;
    d.dv = force / mass;
    d.dr = s.rotation * skew(s.omega);
    const Vec3 angular_momentum = inertia.cwiseProduct(s.omega);
    d.domega =
        (moment - s.omega.cross(angular_momentum)).cwiseQuotient(inertia);
    return d;
}

RigidBodyState advance(const RigidBodyState& s, const Derivative& d, double h) {
    RigidBodyState n = s;
    n.position += h * d.dp;
    n.velocity += h * d.dv;
    n.rotation += h * d.dr;
    n.omega += h * d.domega;
    return n;
}

}  // namespace

RigidBodyState rigid_body_step(const RigidBodyState& state, double mass,
                               const Vec3& inertia_diag, const ForceMomentFn& fn,
                               double dt) {
    const Derivative k1 = evaluate(state, mass, inertia_diag, fn);
    const Derivative k2 = evaluate(advance(state, k1, dt / 2.0), mass, inertia_diag, fn);
    const Derivative k3 = evaluate(advance(state, k2, dt / 2.0), mass, inertia_diag, fn);
    const Derivative k4 = evaluate(advance(state, k3, dt), mass, inertia_diag, fn);

    RigidBodyState next = state;
    next.position += dt / 6.0 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
    next.velocity += dt / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    next.rotation += dt / 6.0 * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
    next.omega += dt / 6.0 * (k1.domega + 2.0 * k2.domega + 2.0 * k3.domega + k4.domega);
    next.rotation = orthonormalize(next.rotation);
    return next;
}

double pivot_virtual_accel(double theta, double virtual_input,
                           double disturbance_torque, const VehicleParams& params) {
    return (params.pivot_l1 * virtual_input +
            params.weight() * params.pivot_l2 * std::sin(theta) + disturbance_torque) /
           params.pivot_inertia_yy();
}

RigidBodyState ContactPivotState::to_rigid_body(const VehicleParams& params) const {
    RigidBodyState s;
    s.rotation = euler_zxy_to_rotation(yaw, 0.0, theta);
    const Vec3 cg_offset = -params.pivot_l2 * s.rotation.col(2);
    s.position = tail + cg_offset;
    s.omega = Vec3{0.0, q, 0.0};
    const Vec3 omega_ned = s.rotation * s.omega;
    s.velocity = omega_ned.cross(cg_offset);
    return s;
}

ContactPivotState ContactPivotState::capture(const RigidBodyState& state,
                                             const VehicleParams& params) {
    ContactPivotState c;
    const Vec3 euler = state.euler_zxy();
    c.yaw = euler(0);
    c.theta = euler(2);
    c.q = state.omega.y();
    c.tail = state.position + params.pivot_l2 * state.rotation.col(2);
    c.tail.z() = 0.0;  // contact line sits on the ground plane
    return c;
}

ContactPivotState pivot_contact_step(const ContactPivotState& state,
                                     double thrust_total, double deflection,
                                     double disturbance_torque,
                                     const VehicleParams& params, double dt) {
    const double u = thrust_total * std::sin(deflection);
    const auto accel = [&](double theta) {
        return pivot_virtual_accel(theta, u, disturbance_torque, params);
    };

    ContactPivotState next = state;
    const double k1q = accel(state.theta);
    const double t2 = state.theta + 0.5 * dt * state.q;
    const double q2 = state.q + 0.5 * dt * k1q;
    const double k2q = accel(t2);
    const double t3 = state.theta + 0.5 * dt * q2;
    const double q3 = state.q + 0.5 * dt * k2q;
    const double k3q = accel(t3);
    const double t4 = state.theta + dt * q3;
    const double q4 = state.q + dt * k3q;
    const double k4q = accel(t4);

    next.theta += dt / 6.0 * (state.q + 2.0 * q2 + 2.0 * q3 + q4);
    next.q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);

    // Hard stops: the airframe rests flat at -pi/2 and on its back at +pi/2.
    if (next.theta <= -kPi / 2.0) {
        next.theta = -kPi / 2.0;
        next.q = std::max(next.q, 0.0);
    } else if (next.theta >= kPi / 2.0) {
        next.theta = kPi / 2.0;
        next.q = std::min(next.q, 0.0);
    }

    // Support force from the constrained CG acceleration: the ground can only
    // push up, so a negative value signals lift-off.
    const double q_dot = accel(next.theta);
    const RigidBodyState body = next.to_rigid_body(params);
    const Vec3 r = body.position - next.tail;
    const Vec3 omega_ned = body.rotation * Vec3{0.0, next.q, 0.0};
    const Vec3 alpha_ned = body.rotation * Vec3{0.0, q_dot, 0.0};
    const Vec3 cg_accel = alpha_ned.cross(r) + omega_ned.cross(omega_ned.cross(r));
    const Vec3 thrust_body =
        rotor_force_body(0.5 * thrust_total, 0.5 * thrust_total, deflection, deflection);
    const Vec3 applied = body.rotation * thrust_body + Vec3{0.0, 0.0, params.weight()};
    const Vec3 contact_force = params.mass * cg_accel - applied;
    next.support_force = -contact_force.z();
    return next;
}

}  // namespace tre
