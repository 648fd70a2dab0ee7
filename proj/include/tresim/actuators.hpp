// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "tresim/types.hpp"

namespace tre {

/// Actuator vector layout shared by commands, states and effectiveness columns.
enum ActuatorIndex {
    kTiltLeft = 0,
    kTiltRight = 1,
    kThrustLeft = 2,
    kThrustRight = 3,
    kElevonLeft = 4,
    kElevonRight = 5,
    kNumActuators = 6,
};

inline bool is_servo(int idx) { return idx != kThrustLeft && idx != kThrustRight; }
inline bool is_motor(int idx) { return idx == kThrustLeft || idx == kThrustRight; }
inline bool is_tilt(int idx) { return idx == kTiltLeft || idx == kTiltRight; }
inline bool is_elevon(int idx) { return idx == kElevonLeft || idx == kElevonRight; }

/// Commanded and modeled actuator states with their limits.
///
/// Commands pass a first-order lag (implicit Euler: unconditionally stable for
/// any step size), then the servo rate limit, then the position bounds. Upward
/// rotor tilt / upward elevon deflection is positive.
struct ActuatorBank {
    Vec6 command{Vec6::Zero()};  // u_c, most recent command
    Vec6 state{Vec6::Zero()};    // u_0, modeled actuator position
    Vec6 lower{Vec6::Zero()};
    Vec6 upper{Vec6::Zero()};
    std::array<double, kNumActuators> tau{};
    std::array<double, kNumActuators> rate_limit{};  // rad/s; <= 0 disables

    static ActuatorBank from_params(const VehicleParams& params);

    Vec6 clamp(const Vec6& u) const;

    /// Advance modeled states one step toward `commands`.
    void step(const Vec6& commands, double dt);
};

/// One-actuator update: lag toward the clamped command, rate limit, clamp.
double actuator_step_single(double state, double command, double lower, double upper,
                            double tau, double rate_limit, double dt);

}  // namespace tre
