// SPDX-License-Identifier: Apache-2.0
#include "tresim/attitude.hpp"

#include "tresim/physics.hpp"

namespace tre {

Vec4 attitude_pseudo_control(const RigidBodyState& state, const AttitudeReference& ref,
                             const AttitudeGains& gains) {
    const Vec3 error = attitude_error_vector(state.rotation, ref.rotation());
    Vec4 nu;
    nu.head<3>() =
        gains.rate.cwiseProduct(gains.attitude.cwiseProduct(error) - state.omega);
    nu(3) = ref.specific_thrust;
    return nu;
}

Vec6 mode_actuator_weights(double pitch, const AttitudeLoopConfig& config) {
    Vec6 w = actuator_weights(pitch, config.weights);
    switch (config.mode) {
        case ControlMode::kTre:
            break;
        case ControlMode::kETailsitter:
            w(kTiltLeft) = w(kTiltRight) = config.mode_weight_override;
            w(kElevonLeft) = w(kElevonRight) = 0.0;
            break;
        case ControlMode::kTrTailsitter:
            w(kElevonLeft) = w(kElevonRight) = config.mode_weight_override;
            w(kTiltLeft) = w(kTiltRight) = 0.0;
            break;
    }
    return w;
}

IndiCommand indi_attitude_step(const IndiMeasurement& meas, const ActuatorBank& bank,
                               const RigidBodyState& state, double airspeed,
                               const AttitudeReference& ref,
                               const AttitudeLoopConfig& config,
                               const VehicleParams& params) {
    const double pitch = state.pitch();

    AllocationProblem problem;
    problem.G = build_effectiveness(bank.state, pitch, airspeed, params);
    problem.gamma = config.gamma;
    problem.w_v = config.objective_weights;
    problem.w_u = mode_actuator_weights(pitch, config);
    problem.lower = bank.lower;
    problem.upper = bank.upper;

    // Preferred inputs: servos hold their modeled position with a slight pull
    // toward center, motors sit at the hover split so "no demand" settles
    // toward trim thrust.
    problem.u_p = (1.0 - config.servo_preference_decay) * bank.state;
    const double hover_thrust =
        0.5 * config.hover_thrust_preference * params.weight();
    problem.u_p(kThrustLeft) = hover_thrust;
    problem.u_p(kThrustRight) = hover_thrust;

    // Unused surfaces in the reduced modes are pinned at center.
    if (config.mode == ControlMode::kETailsitter) {
        problem.lower(kTiltLeft) = problem.upper(kTiltLeft) = 0.0;
        problem.lower(kTiltRight) = problem.upper(kTiltRight) = 0.0;
        problem.u_p(kTiltLeft) = problem.u_p(kTiltRight) = 0.0;
    } else if (config.mode == ControlMode::kTrTailsitter) {
        problem.lower(kElevonLeft) = problem.upper(kElevonLeft) = 0.0;
        problem.lower(kElevonRight) = problem.upper(kElevonRight) = 0.0;
        problem.u_p(kElevonLeft) = problem.u_p(kElevonRight) = 0.0;
    }

    IndiCommand out;
    out.nu = attitude_pseudo_control(state, ref, config.gains);

    // Incremental inversion: [omega_dot; T_Z](u) = [omega_dot_0; T_Z0] + G (u - u0).
    Vec4 offset;
    offset.head<3>() = meas.omega_dot;
    offset(3) = meas.specific_thrust;
    problem.nu = out.nu - offset + problem.G * bank.state;

    const WlsSolution sol = solve_wls(problem);
    out.u_c = sol.u;
    out.wls_iterations = sol.iterations;
    out.wls_iteration_limit = sol.iteration_limit;
    return out;
}

}  // namespace tre
