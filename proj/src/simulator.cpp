// SPDX-License-Identifier: Apache-2.0
#include "tresim/simulator.hpp"

#include <cmath>
#include <random>

#include "tresim/aero.hpp"
#include "tresim/euler.hpp"
#include "tresim/flight_controller.hpp"
#include "tresim/physics.hpp"
#include "tresim/rigid_body.hpp"
#include "tresim/wind.hpp"

namespace tre {

namespace {

// Second-order low-pass (two cascaded first-order stages) for the emulated
// filtered angular-acceleration measurement.
class LowPass2 {
  public:
    LowPass2(double cutoff_hz, double dt) {
        const double tau = 1.0 / (2.0 * kPi * cutoff_hz);
        alpha_ = dt / (tau + dt);
    }
    Vec3 update(const Vec3& x) {
        stage1_ += alpha_ * (x - stage1_);
        stage2_ += alpha_ * (stage1_ - stage2_);
        return stage2_;
    }

  private:
    double alpha_{1.0};
    Vec3 stage1_{Vec3::Zero()};
    Vec3 stage2_{Vec3::Zero()};
};

struct PlantDerivatives {
    Vec3 force_ned;     // total, gravity included
    Vec3 moment_body;   // control + aero
};

PlantDerivatives plant_derivatives(const RigidBodyState& s, const Vec6& u,
                                   const Vec3& wind_ned, const ScenarioConfig& cfg) {
    const Vec3 air_velocity_body =
        s.rotation.transpose() * (s.velocity - wind_ned);
    const AeroResult aero =
        aero_forces_moments(air_velocity_body, s.omega, u, cfg.aero, cfg.vehicle);
    PlantDerivatives d;
    const Vec3 force_body = rotor_force_body(u) + aero.force_body;
    d.force_ned = s.rotation * force_body +
                  Vec3{0.0, 0.0, cfg.vehicle.weight()};
    d.moment_body = control_moment_from_tilt(u, cfg.vehicle) + aero.moment_body;
    return d;
}

// Pitch torque of the wind on the grounded airframe about the tail line.
double pivot_wind_torque(const ContactPivotState& contact, const Vec3& wind,
                         const ScenarioConfig& cfg) {
    if (cfg.pivot_wind_torque_coeff <= 0.0) return 0.0;
    const RigidBodyState body = contact.to_rigid_body(cfg.vehicle);
    const Vec3 normal = body.rotation.col(0);  // belly normal in NED
    const double w_face = wind.dot(normal);
    const Vec3 force = 0.5 * cfg.aero.air_density * cfg.pivot_wind_torque_coeff *
                       cfg.aero.wing_area * w_face * std::abs(w_face) * normal;
    const Vec3 arm = body.position - contact.tail;
    return (arm.cross(force)).dot(body.rotation.col(1));
}

RigidBodyState initial_state(const ScenarioConfig& cfg) {
    RigidBodyState s;
    switch (cfg.mission.start) {
        case StartState::kGrounded: {
            ContactPivotState contact;
            contact.theta = -kPi / 2.0;
            s = contact.to_rigid_body(cfg.vehicle);
            break;
        }
        case StartState::kHover: {
            const Vec3& err = cfg.mission.start_attitude_error;
            s.rotation = euler_zxy_to_rotation(err(0), err(1), err(2));
            s.position = Vec3{0.0, 0.0, -cfg.mission.start_altitude};
            break;
        }
        case StartState::kForward: {
            const auto& wps = cfg.mission.plan.waypoints;
            const Vec3 track = (wps[1].position - wps[0].position).normalized();
            const double heading = std::atan2(track.y(), track.x());
            s.rotation = euler_zxy_to_rotation(heading, 0.0, -deg2rad(85.0));
            s.position = wps[0].position;
            s.position.y() += cfg.mission.start_offset_east;
            s.velocity = track * wps[1].speed;
            break;
        }
    }
    return s;
}

}  // namespace

TelemetryLog simulate_scenario(const ScenarioConfig& config) {
    config.validate();
    const VehicleParams& vp = config.vehicle;
    const double dt = config.dt;

    TelemetryLog log;
    const auto steps = static_cast<std::int64_t>(std::llround(config.duration / dt));
    log.rows.reserve(steps + 1);

    WindModel wind;
    wind.mean = config.wind_mean;
    wind.gust_sigma = config.wind_gust_sigma;
    wind.gust_correlation_time = config.wind_gust_correlation;
    wind.seed = config.seed;
    wind.reset();

    std::mt19937_64 sensor_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> unit_normal(0.0, 1.0);

    RigidBodyState state = initial_state(config);
    ActuatorBank bank = ActuatorBank::from_params(vp);
    if (config.mission.start != StartState::kGrounded) {
        // Start trimmed near hover thrust so the first steps are not a
        // throttle-up transient.
        bank.state(kThrustLeft) = 0.5 * vp.weight();
        bank.state(kThrustRight) = 0.5 * vp.weight();
        bank.command = bank.state;
    }

    bool pinned = config.mission.start == StartState::kGrounded;
    ContactPivotState contact;
    if (pinned) contact = ContactPivotState::capture(state, vp);
    double unload_time = 0.0;  // debounce for the contact release

    FlightController controller(config);
    controller.initialize(state);

    LowPass2 omega_dot_filter(config.omega_dot_filter_cutoff, dt);

    Vec3 last_wind = wind.current();
    double last_pivot_q_dot = 0.0;

    for (std::int64_t step = 0; step <= steps; ++step) {
        const double t = step * dt;

        // Sense.
        const Vec3 wind_now = last_wind;
        Vec3 omega_dot;
        Vec3 accel_meas;
        if (pinned) {
            const double torque = pivot_wind_torque(contact, wind_now, config);
            const double u_virtual =
                (bank.state(kThrustLeft) + bank.state(kThrustRight)) *
                std::sin(bank.state(kTiltLeft));
            last_pivot_q_dot =
                pivot_virtual_accel(contact.theta, u_virtual, torque, vp);
            omega_dot = Vec3{0.0, last_pivot_q_dot, 0.0};
            accel_meas.setZero();
        } else {
            const PlantDerivatives d =
                plant_derivatives(state, bank.state, wind_now, config);
            omega_dot = (d.moment_body -
                         state.omega.cross(vp.inertia_diag.cwiseProduct(state.omega)))
                            .cwiseQuotient(vp.inertia_diag);
            accel_meas = d.force_ned / vp.mass;
        }
        if (config.omega_dot_filter) {
            omega_dot = omega_dot_filter.update(omega_dot);
        }

        const Vec3 air_velocity_body =
            state.rotation.transpose() * (state.velocity - wind_now);
        double airspeed = std::max(0.0, -air_velocity_body.z());
        if (config.airspeed_noise_std > 0.0) {
            airspeed = std::max(
                0.0, airspeed + config.airspeed_noise_std * unit_normal(sensor_rng));
        }

        ControllerInputs inputs;
        inputs.t = t;
        inputs.state = &state;
        inputs.bank = &bank;
        inputs.omega_dot = omega_dot;
        inputs.accel_meas = accel_meas;
        inputs.specific_thrust_0 = specific_thrust(bank.state, vp.mass);
        inputs.airspeed = airspeed;
        inputs.air_velocity_body = air_velocity_body;
        inputs.resting_on_tail = pinned;

        // Control (outer at its divisor, inner every step).
        const bool outer_due = step % config.outer_divisor == 0;
        const ControllerOutputs cmd = controller.step(inputs, outer_due);

        // Record.
        TelemetryRow row;
        row.step = step;
        row.t = t;
        row.phase = cmd.phase;
        row.leg = cmd.leg;
        row.wp_index = cmd.wp_index;
        row.wp_hits = cmd.wp_hits;
        row.wp_total = cmd.wp_total;
        row.position = state.position;
        row.velocity = state.velocity;
        const Vec3 euler = state.euler_zxy();
        row.yaw = euler(0);
        row.roll = euler(1);
        row.pitch = euler(2);
        row.omega = state.omega;
        row.airspeed = airspeed;
        row.position_ref = cmd.position_ref;
        row.pitch_ref = cmd.pitch_ref;
        row.pivot_z = cmd.pivot_z;
        row.nu = cmd.nu;
        row.command = cmd.command;
        row.actuator = bank.state;
        row.saturation = saturation_mask(cmd.command, bank.lower, bank.upper);
        row.wind = wind_now;
        log.rows.push_back(row);

        if (cmd.phase == FlightPhase::kLanded) break;

        // Actuate.
        bank.step(cmd.command, dt);

        // Integrate.
        if (pinned) {
            const double torque = pivot_wind_torque(contact, wind_now, config);
            const double thrust_total =
                bank.state(kThrustLeft) + bank.state(kThrustRight);
            contact = pivot_contact_step(contact, thrust_total, bank.state(kTiltLeft),
                                         torque, vp, dt);
            state = contact.to_rigid_body(vp);
            // Release the constraint on a decisive unload; transient dips of
            // the quasi-static support estimate do not lift the tail.
            unload_time = contact.support_force < 0.0 ? unload_time + dt : 0.0;
            if (contact.support_force < -0.5 || unload_time > 0.04) {
                pinned = false;  // lift-off
            }
        } else {
            const Vec6 u = bank.state;
            state = rigid_body_step(
                state, vp.mass, vp.inertia_diag,
                [&](const RigidBodyState& s, Vec3& force, Vec3& moment) {
                    const PlantDerivatives d =
                        plant_derivatives(s, u, wind_now, config);
                    force = d.force_ned;
                    moment = d.moment_body;
                },
                dt);
            if (controller.phase() == FlightPhase::kPivotDown) {
                const double tail_z =
                    state.position.z() + vp.pivot_l2 * state.rotation(2, 2);
                if (tail_z >= 0.0) {
                    contact = ContactPivotState::capture(state, vp);
                    state = contact.to_rigid_body(vp);
                    pinned = true;
                }
            }
        }

        last_wind = wind.step(dt);

        // Divergence guard.
        const bool finite = state.position.allFinite() && state.velocity.allFinite() &&
                            state.omega.allFinite();
        if (!finite || state.position.norm() > 1e5 || state.velocity.norm() > 400.0 ||
            state.omega.norm() > 2000.0) {
            log.divergence = DivergenceInfo{step, "state norm out of bounds"};
            break;
        }
    }
    return log;
}

}  // namespace tre
