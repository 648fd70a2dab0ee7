// SPDX-License-Identifier: Apache-2.0
#include "tresim/actuators.hpp"

#include <algorithm>

namespace tre {

ActuatorBank ActuatorBank::from_params(const VehicleParams& params) {
    ActuatorBank bank;
    for (int i = 0; i < kNumActuators; ++i) {
        if (is_motor(i)) {
            bank.lower(i) = 0.0;
            bank.upper(i) = params.thrust_max;
            bank.tau[i] = params.tau_motor;
            bank.rate_limit[i] = 0.0;
        } else {
            bank.lower(i) = -params.deflection_max;
            bank.upper(i) = params.deflection_max;
            bank.tau[i] = params.tau_servo;
            bank.rate_limit[i] = params.servo_rate_limit;
        }
    }
    return bank;
}

Vec6 ActuatorBank::clamp(const Vec6& u) const {
    return u.cwiseMax(lower).cwiseMin(upper);
}

double actuator_step_single(double state, double command, double lower, double upper,
                            double tau, double rate_limit, double dt) {
    const double target = std::clamp(command, lower, upper);
    const double a = dt / tau;
    double next = (state + a * target) / (1.0 + a);
    if (rate_limit > 0.0) {
        const double max_delta = rate_limit * dt;
        next = std::clamp(next, state - max_delta, state + max_delta);
    }
    return std::clamp(next, lower, upper);
}

void ActuatorBank::step(const Vec6& commands, double dt) {
    command = commands;
    for (int i = 0; i < kNumActuators; ++i) {
        state(i) = actuator_step_single(state(i), commands(i), lower(i), upper(i),
                                        tau[i], rate_limit[i], dt);
    }
}

}  // namespace tre
