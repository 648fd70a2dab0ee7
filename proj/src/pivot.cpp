// SPDX-License-Identifier: Apache-2.0
#include "tresim/pivot.hpp"

#include <algorithm>
#include <cmath>

namespace tre {

PivotEquilibrium pivot_equilibrium(double theta, const VehicleParams& params) {
    return {params.weight() * params.pivot_l2 / params.pivot_l1, -theta};
}

double pivot_feedback(const PivotState& state, const PivotGains& gains,
                      const VehicleParams& params) {
    const double scale = params.pivot_inertia_yy() / params.pivot_l1;
    const double rate_error = state.x2() - state.theta_dot_d;
    return scale * (-gains.k1 * gains.k2 * state.x1() -
                    (gains.k1 + gains.k2) * rate_error);
}

double pivot_control_input(const PivotState& state, const PivotGains& gains,
                           const VehicleParams& params) {
    const double u_eq =
        -params.weight() * params.pivot_l2 * std::sin(state.theta) / params.pivot_l1;
    return pivot_feedback(state, gains, params) + u_eq;
}

PivotAllocation pivot_allocate(double delta_u, double theta,
                               const VehicleParams& params) {
    const PivotEquilibrium eq = pivot_equilibrium(theta, params);
    // B = [sin(delta_eq), T_eq cos(delta_eq)], W = diag(1/8.56^2, 1/(63 deg)^2)
    const double b_thrust = std::sin(eq.deflection);
    const double b_tilt = eq.thrust * std::cos(eq.deflection);
    const double w_inv_thrust = kPivotThrustScale * kPivotThrustScale;
    const double w_inv_tilt = kPivotTiltScale * kPivotTiltScale;
    const double denom = b_thrust * b_thrust * w_inv_thrust + b_tilt * b_tilt * w_inv_tilt;
    if (denom < 1e-12) {
        throw DegenerateEffectiveness("pivot allocation: B W^-1 B^T below 1e-12");
    }
    const double gain = delta_u / denom;
    return {w_inv_thrust * b_thrust * gain, w_inv_tilt * b_tilt * gain};
}

Vec6 pivot_step(const PivotState& state, const PivotGains& gains,
                const VehicleParams& params) {
    const PivotEquilibrium eq = pivot_equilibrium(state.theta, params);
    const double delta_u = pivot_feedback(state, gains, params);
    const PivotAllocation inc = pivot_allocate(delta_u, state.theta, params);

    const double thrust_total =
        std::clamp(eq.thrust + inc.delta_thrust, 0.0, 2.0 * params.thrust_max);
    const double deflection = std::clamp(eq.deflection + inc.delta_deflection,
                                         -params.deflection_max, params.deflection_max);

    Vec6 commands = Vec6::Zero();
    commands(kTiltLeft) = deflection;
    commands(kTiltRight) = deflection;
    commands(kThrustLeft) = 0.5 * thrust_total;
    commands(kThrustRight) = 0.5 * thrust_total;
    return commands;
}

double lyapunov_energy(const PivotState& state, const PivotGains& gains) {
    const double z = state.z(gains);
    return 0.5 * z * z;
}

double PivotRamp::theta_d(double t) const {
    const double span = target - start;
    if (span == 0.0 || t <= 0.0) return start;
    const double duration = std::abs(span) / rate;
    if (t >= duration) return target;
    return start + span * (t / duration);
}

double PivotRamp::theta_dot_d(double t) const {
    const double span = target - start;
    if (span == 0.0 || t < 0.0) return 0.0;
    const double duration = std::abs(span) / rate;
    if (t >= duration) return 0.0;
    return span / std::abs(span) * rate;
}

}  // namespace tre
