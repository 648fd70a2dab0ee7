// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tresim/actuators.hpp"
#include "tresim/types.hpp"

namespace tre {

/// Body moment produced by the tilted rotors:
///   [ b T_L cos d_TL - b T_R cos d_TR ]
///   [ l T_L sin d_TL + l T_R sin d_TR ]
///   [-b T_L sin d_TL + b T_R sin d_TR ]
Vec3 control_moment_from_tilt(double thrust_left, double thrust_right,
                              double tilt_left, double tilt_right,
                              const VehicleParams& params);

/// Specific thrust along -z_b: (T_L cos d_TL + T_R cos d_TR)/m.
double specific_thrust(double thrust_left, double thrust_right,
                       double tilt_left, double tilt_right, double mass);

/// Total rotor force in the body frame (thrust tilts toward -x_b for
/// positive deflection).
Vec3 rotor_force_body(double thrust_left, double thrust_right,
                      double tilt_left, double tilt_right);

inline Vec3 control_moment_from_tilt(const Vec6& u, const VehicleParams& params) {
    return control_moment_from_tilt(u(kThrustLeft), u(kThrustRight),
                                    u(kTiltLeft), u(kTiltRight), params);
}

inline double specific_thrust(const Vec6& u, double mass) {
    return specific_thrust(u(kThrustLeft), u(kThrustRight),
                           u(kTiltLeft), u(kTiltRight), mass);
}

inline Vec3 rotor_force_body(const Vec6& u) {
    return rotor_force_body(u(kThrustLeft), u(kThrustRight),
                            u(kTiltLeft), u(kTiltRight));
}

}  // namespace tre
