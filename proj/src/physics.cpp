// SPDX-License-Identifier: Apache-2.0
#include "tresim/physics.hpp"

#include <cmath>

namespace tre {

Vec3 control_moment_from_tilt(double thrust_left, double thrust_right,
                              double tilt_left, double tilt_right,
                              const VehicleParams& params) {
    const double b = params.arm_b;
    const double l = params.arm_l;
    const double cl = std::cos(tilt_left), sl = std::sin(tilt_left);
    const double cr = std::cos(tilt_right), sr = std::sin(tilt_right);
    return {b * thrust_left * cl - b * thrust_right * cr,
            l * thrust_left * sl + l * thrust_right * sr,
            -b * thrust_left * sl + b * thrust_right * sr};
}

double specific_thrust(double thrust_left, double thrust_right,
                       double tilt_left, double tilt_right, double mass) {
    return (thrust_left * std::cos(tilt_left) + thrust_right * std::cos(tilt_right)) /
           mass;
}

Vec3 rotor_force_body(double thrust_left, double thrust_right,
                      double tilt_left, double tilt_right) {
    return {-thrust_left * std::sin(tilt_left) - thrust_right * std::sin(tilt_right),
            0.0,
            -thrust_left * std::cos(tilt_left) - thrust_right * std::cos(tilt_right)};
}

}  // namespace tre
