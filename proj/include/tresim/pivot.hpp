// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tresim/actuators.hpp"
#include "tresim/types.hpp"

namespace tre {

struct PivotGains {
    double k1{4.0};  // 1/s
    double k2{6.0};  // 1/s
};

/// Pitch tracking state for the tail-pivot maneuver. The auxiliary state
/// z = k1 (theta - theta_d) + q - theta_dot_d drives the energy E = z^2/2.
struct PivotState {
    double theta{0.0};        // rad
    double q{0.0};            // rad/s
    double theta_d{0.0};      // rad
    double theta_dot_d{0.0};  // rad/s

    double x1() const { return theta - theta_d; }
    double x2() const { return q; }
    double z(const PivotGains& gains) const {
        return gains.k1 * x1() + x2() - theta_dot_d;
    }
};

/// Equilibrium split of the pivot control input: constant thrust mg l2 / l1
/// with the tilt opposing the pitch angle.
struct PivotEquilibrium {
    double thrust;      // N, combined
    double deflection;  // rad, unclamped
};

PivotEquilibrium pivot_equilibrium(double theta, const VehicleParams& params);

/// Feedback correction on the virtual input u = T sin(delta):
///   du = (I'_yy / l1) * (-k1 k2 x1 - (k1 + k2)(x2 - theta_dot_d))
/// The x1 coefficient is negative; together with the equilibrium term this is
/// the stabilizing control expanded with theta_ddot_d = 0.
double pivot_feedback(const PivotState& state, const PivotGains& gains,
                      const VehicleParams& params);

/// Full stabilizing virtual input (feedback + equilibrium), the closed form
/// whose ideal closed loop obeys dE/dt = -2 k2 E.
double pivot_control_input(const PivotState& state, const PivotGains& gains,
                           const VehicleParams& params);

/// Weighted pseudo-inverse split of a virtual-input increment into thrust and
/// tilt increments around the equilibrium. Throws DegenerateEffectiveness when
/// B W^-1 B^T collapses (requires both T_eq ~ 0 and sin(delta_eq) ~ 0).
struct PivotAllocation {
    double delta_thrust;      // N
    double delta_deflection;  // rad
};

PivotAllocation pivot_allocate(double delta_u, double theta,
                               const VehicleParams& params);

/// Weighting constants of the pivot pseudo-inverse: thrust scale in newtons
/// and the full tilt range in radians.
constexpr double kPivotThrustScale = 8.56;
constexpr double kPivotTiltScale = 63.0 * kPi / 180.0;

/// Complete pivot step: identical left/right tilt and thrust commands,
/// elevons centered. Thrust clamps to [0, 2 thrust_max], tilt to the
/// deflection limit, applied after summing equilibrium and increment.
Vec6 pivot_step(const PivotState& state, const PivotGains& gains,
                const VehicleParams& params);

double lyapunov_energy(const PivotState& state, const PivotGains& gains);

/// Desired-pitch profile: ramp from `start` to `target` at `rate` (rad/s,
/// positive magnitude), then hold. theta_ddot_d is zero throughout.
struct PivotRamp {
    double start{-kPi / 2.0};
    double target{0.0};
    double rate{deg2rad(60.0)};

    double theta_d(double t) const;
    double theta_dot_d(double t) const;
};

}  // namespace tre
