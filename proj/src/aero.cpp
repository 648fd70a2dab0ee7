// SPDX-License-Identifier: Apache-2.0
#include "tresim/aero.hpp"

#include <cmath>

namespace tre {

namespace {

double descent_fade(double chordwise_flow, const AeroParams& aero) {
    if (chordwise_flow >= 0.0) return 1.0;
    return std::max(aero.descent_fade_floor,
                    1.0 + chordwise_flow / aero.descent_fade_speed);
}

}  // namespace

double plant_elevon_pitch_effectiveness(double chordwise_flow, double thrust_side,
                                        const AeroParams& aero) {
    return aero.elevon_pitch_flow_gain * chordwise_flow * std::abs(chordwise_flow) +
           aero.elevon_pitch_prop_gain * descent_fade(chordwise_flow, aero) *
               thrust_side;
}

double plant_elevon_yaw_effectiveness(double chordwise_flow, double thrust_side,
                                      const AeroParams& aero) {
    return aero.elevon_yaw_flow_gain * chordwise_flow * std::abs(chordwise_flow) +
           aero.elevon_yaw_prop_gain * descent_fade(chordwise_flow, aero) *
               thrust_side;
}

AeroResult aero_forces_moments(const Vec3& w, const Vec3& omega,
                               const Vec6& u, const AeroParams& aero,
                               const VehicleParams& params) {
    AeroResult out;
    const double rho = aero.air_density;
    const double area = aero.wing_area;

    // In-plane (x_b, z_b) flow over the wing. Positive chordwise flow runs
    // nose to tail; alpha is positive with the nose above the flight path.
    const double chordwise = -w.z();
    const double alpha = (w.x() == 0.0 && chordwise == 0.0)
                             ? 0.0
                             : std::atan2(w.x(), chordwise);
    const double plane_speed_sq = w.x() * w.x() + w.z() * w.z();
    const double plane_speed = std::sqrt(plane_speed_sq);
    const double q_dyn = 0.5 * rho * plane_speed_sq * area;

    if (q_dyn > 0.0) {
        const double sa = std::sin(alpha), ca = std::cos(alpha);
        const double cl = aero.lift_slope * sa * ca;
        const double cd = aero.drag_zero + aero.drag_k * sa * sa;
        const Vec2 flow_dir = Vec2{-w.x(), -w.z()} / plane_speed;
        const Vec2 lift_dir{-flow_dir.y(), flow_dir.x()};
        const double fx = q_dyn * (cd * flow_dir.x() + cl * lift_dir.x());
        const double fz = q_dyn * (cd * flow_dir.y() + cl * lift_dir.y());
        out.force_body += Vec3{fx, 0.0, fz};
        // Wing force acts at the center of pressure, which walks aft from the
        // aerodynamic center toward mid-chord as the plate stalls through.
        const double cp_z = aero.ac_offset + aero.cp_travel * sa * sa;
        out.moment_body.y() += cp_z * fx;
    }

    // Lateral flat-plate drag.
    out.force_body.y() += -0.5 * rho * aero.side_cd * aero.side_area * w.y() *
                          std::abs(w.y());

    // Rate damping referenced to the local flow, propwash included so the
    // wing stays damped in hover.
    const double thrust_left = u(kThrustLeft);
    const double thrust_right = u(kThrustRight);
    const double thrust_avg = 0.5 * (thrust_left + thrust_right);
    const double prop_flow_sq =
        (aero.elevon_pitch_prop_gain / std::max(aero.elevon_pitch_flow_gain, 1e-9)) *
        thrust_avg;
    const double damping_flow = plane_speed + std::sqrt(std::max(0.0, prop_flow_sq));
    out.moment_body -= 0.5 * rho * area * aero.chord * aero.chord * damping_flow *
                       aero.moment_damping.cwiseProduct(omega);

    // Elevons: moments scaled so the angular-acceleration-per-deflection of
    // the plant matches the calibrated effectiveness; the pitch component is
    // carried by a force at the elevon station.
    const double ep_left =
        plant_elevon_pitch_effectiveness(chordwise, thrust_left, aero);
    const double ep_right =
        plant_elevon_pitch_effectiveness(chordwise, thrust_right, aero);
    const double ey_left = plant_elevon_yaw_effectiveness(chordwise, thrust_left, aero);
    const double ey_right =
        plant_elevon_yaw_effectiveness(chordwise, thrust_right, aero);
    const double pitch_moment =
        params.inertia_diag.y() *
        (ep_left * u(kElevonLeft) + ep_right * u(kElevonRight));
    const double yaw_moment =
        params.inertia_diag.z() *
        (ey_left * u(kElevonLeft) - ey_right * u(kElevonRight));
    out.moment_body.y() += pitch_moment;
    out.moment_body.z() += yaw_moment;
    out.force_body.x() += pitch_moment / aero.elevon_arm;

    // Propwash over the wing counteracts part of the differential-tilt
    // moment; the trend strengthens with throttle.
    const double washout = aero.tilt_roll_washout *
                           std::clamp(thrust_avg / params.thrust_max, 0.0, 1.0);
    const double tilt_yaw_moment = -params.arm_b * thrust_left * std::sin(u(kTiltLeft)) +
                                   params.arm_b * thrust_right * std::sin(u(kTiltRight));
    out.moment_body.z() -= washout * tilt_yaw_moment;

    return out;
}

}  // namespace tre
