// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "tresim/attitude.hpp"
#include "tresim/physics.hpp"

using namespace tre;

namespace {

ActuatorBank hover_bank(const VehicleParams& vp) {
    ActuatorBank bank = ActuatorBank::from_params(vp);
    bank.state(kThrustLeft) = 0.5 * vp.weight();
    bank.state(kThrustRight) = 0.5 * vp.weight();
    bank.command = bank.state;
    return bank;
}

RigidBodyState state_at(double yaw, double roll, double pitch) {
    RigidBodyState s;
    s.rotation = euler_zxy_to_rotation(yaw, roll, pitch);
    return s;
}

// Share of an objective row produced by a set of actuators, measured through
// the effectiveness at the commanded increments.
double objective_share(const EffectivenessMatrix& g, const Vec6& increment, int row,
                       bool (*selector)(int)) {
    double selected = 0.0, total = 0.0;
    for (int i = 0; i < kNumActuators; ++i) {
        const double contribution = g(row, i) * increment(i);
        total += std::abs(contribution);
        if (selector(i)) selected += std::abs(contribution);
    }
    return total > 0.0 ? selected / total : 0.0;
}

}  // namespace

TEST_SUITE_BEGIN("attitude");

TEST_CASE("pseudo control is zero at the reference with zero rates") {
    RigidBodyState s = state_at(0.2, 0.05, -0.4);
    AttitudeReference ref;
    ref.yaw = 0.2;
    ref.roll = 0.05;
    ref.pitch = -0.4;
    ref.specific_thrust = 9.81;
    const Vec4 nu = attitude_pseudo_control(s, ref, {});
    CHECK(nu.head<3>().norm() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(nu(3) == 9.81);
}

TEST_CASE("pitch error through the cascade: K_rate (K_att e - q)") {
    RigidBodyState s = state_at(0.0, 0.0, 0.0);
    AttitudeReference ref;
    ref.pitch = 0.1;
    AttitudeGains gains;
    gains.attitude = Vec3{8.0, 8.0, 8.0};
    gains.rate = Vec3{20.0, 20.0, 20.0};
    const Vec4 nu = attitude_pseudo_control(s, ref, gains);
    CHECK(nu(1) == doctest::Approx(16.0).epsilon(1e-9));
    CHECK(std::abs(nu(0)) <= 1e-9);
    CHECK(std::abs(nu(2)) <= 1e-9);
}

TEST_CASE("pure rate damping has negative sign") {
    RigidBodyState s = state_at(0.0, 0.0, 0.0);
    s.omega = Vec3{0.0, 1.0, 0.0};
    AttitudeGains gains;
    gains.rate = Vec3{20.0, 20.0, 20.0};
    const Vec4 nu = attitude_pseudo_control(s, AttitudeReference{}, gains);
    CHECK(nu(1) == doctest::Approx(-20.0).epsilon(1e-9));
}

TEST_CASE("no incremental demand returns the preferred inputs") {
    VehicleParams vp;
    AttitudeLoopConfig cfg;
    ActuatorBank bank = hover_bank(vp);
    RigidBodyState s = state_at(0.0, 0.0, 0.0);

    // Reference equal to the current state, measurement consistent with it.
    AttitudeReference ref;
    ref.specific_thrust = specific_thrust(bank.state, vp.mass);
    IndiMeasurement meas;
    meas.omega_dot = Vec3::Zero();
    meas.specific_thrust = ref.specific_thrust;

    const IndiCommand cmd = indi_attitude_step(meas, bank, s, 0.0, ref, cfg, vp);
    // Preferred inputs: servos at their state, motors at the hover split.
    CHECK(std::abs(cmd.u_c(kTiltLeft)) <= 1e-9);
    CHECK(std::abs(cmd.u_c(kElevonLeft)) <= 1e-9);
    CHECK(cmd.u_c(kThrustLeft) ==
          doctest::Approx(0.5 * vp.weight()).epsilon(1e-6));
}

TEST_CASE("hover pitch demand routes to the tilt servos") {
    VehicleParams vp;
    AttitudeLoopConfig cfg;
    ActuatorBank bank = hover_bank(vp);
    RigidBodyState s = state_at(0.0, 0.0, 0.0);

    AttitudeReference ref;
    ref.pitch = 0.1;  // step demand
    ref.specific_thrust = specific_thrust(bank.state, vp.mass);
    IndiMeasurement meas;
    meas.specific_thrust = ref.specific_thrust;

    const IndiCommand cmd = indi_attitude_step(meas, bank, s, 0.0, ref, cfg, vp);
    const Vec6 increment = cmd.u_c - bank.state;
    const EffectivenessMatrix g = build_effectiveness(bank.state, 0.0, 0.0, vp);
    CHECK(objective_share(g, increment, 1, is_tilt) >= 0.90);
    CHECK(std::abs(increment(kTiltLeft)) > std::abs(increment(kElevonLeft)));
}

TEST_CASE("forward-flight roll demand routes to the elevons") {
    VehicleParams vp;
    AttitudeLoopConfig cfg;
    ActuatorBank bank = ActuatorBank::from_params(vp);
    bank.state(kThrustLeft) = 0.4;
    bank.state(kThrustRight) = 0.4;
    RigidBodyState s = state_at(0.0, 0.0, -kPi / 2.0);

    // Bank demand: an Euler roll offset at -90 deg pitch is a rotation about
    // the velocity axis, i.e. body z.
    AttitudeReference ref;
    ref.roll = 0.05;
    ref.pitch = -kPi / 2.0;
    ref.specific_thrust = specific_thrust(bank.state, vp.mass);
    IndiMeasurement meas;
    meas.specific_thrust = ref.specific_thrust;

    const IndiCommand cmd = indi_attitude_step(meas, bank, s, 16.0, ref, cfg, vp);
    const Vec6 increment = cmd.u_c - bank.state;
    const EffectivenessMatrix g = build_effectiveness(bank.state, -kPi / 2.0, 16.0, vp);
    CHECK(objective_share(g, increment, 2, is_elevon) >= 0.90);
}

TEST_CASE("weight overrides flip the routing") {
    VehicleParams vp;
    ActuatorBank bank = hover_bank(vp);

    SUBCASE("tilt forced expensive: hover pitch demand moves to the elevons") {
        AttitudeLoopConfig cfg;
        cfg.weights.weight_min = 1.0;  // neutral schedule
        cfg.weights.weight_max = 1.0;
        RigidBodyState s = state_at(0.0, 0.0, 0.0);
        AttitudeReference ref;
        ref.pitch = 0.1;
        ref.specific_thrust = specific_thrust(bank.state, vp.mass);
        IndiMeasurement meas;
        meas.specific_thrust = ref.specific_thrust;

        const IndiCommand neutral = indi_attitude_step(meas, bank, s, 0.0, ref, cfg, vp);

        AttitudeLoopConfig expensive = cfg;
        expensive.mode = ControlMode::kETailsitter;  // tilt at 1e5, elevons free
        const IndiCommand routed =
            indi_attitude_step(meas, bank, s, 0.0, ref, expensive, vp);
        CHECK(std::abs(routed.u_c(kElevonLeft) - bank.state(kElevonLeft)) >
              std::abs(neutral.u_c(kElevonLeft) - bank.state(kElevonLeft)));
        CHECK(routed.u_c(kTiltLeft) == 0.0);  // pinned in the elevon-only mode
    }

    SUBCASE("elevons forced expensive: forward roll demand moves to the tilts") {
        AttitudeLoopConfig cfg;
        cfg.mode = ControlMode::kTrTailsitter;
        ActuatorBank fwd = ActuatorBank::from_params(vp);
        fwd.state(kThrustLeft) = 0.5;
        fwd.state(kThrustRight) = 0.5;
        RigidBodyState s = state_at(0.0, 0.0, -kPi / 2.0);
        AttitudeReference ref;
        ref.roll = 0.05;
        ref.pitch = -kPi / 2.0;
        ref.specific_thrust = specific_thrust(fwd.state, vp.mass);
        IndiMeasurement meas;
        meas.specific_thrust = ref.specific_thrust;

        const IndiCommand cmd = indi_attitude_step(meas, fwd, s, 16.0, ref, cfg, vp);
        const Vec6 increment = cmd.u_c - fwd.state;
        CHECK(cmd.u_c(kElevonLeft) == 0.0);
        CHECK(std::abs(increment(kTiltLeft)) + std::abs(increment(kTiltRight)) > 1e-4);
    }
}

TEST_CASE("one-step inversion: commanded increments realize the objective") {
    // Plant consistent with the controller's effectiveness: rotor moments from
    // their exact map, elevon moments from the scheduled coefficients. With no
    // actuator lag, applying u_c must realize nu within 1 percent.
    VehicleParams vp;
    AttitudeLoopConfig cfg;
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> small(-2.0, 2.0);

    ActuatorBank bank = hover_bank(vp);
    RigidBodyState s = state_at(0.0, 0.0, 0.0);

    const auto plant_response = [&](const Vec6& u) {
        Vec4 out;
        const Vec3 omega_dot =
            control_moment_from_tilt(u, vp).cwiseQuotient(vp.inertia_diag) +
            Vec3{0.0,
                 elevon_pitch_effectiveness(0.0, 0.0) *
                     (u(kElevonLeft) + u(kElevonRight)),
                 elevon_yaw_effectiveness(0.0, 0.0) *
                     (u(kElevonLeft) - u(kElevonRight))};
        out.head<3>() = omega_dot;
        out(3) = specific_thrust(u, vp.mass);
        return out;
    };

    for (int trial = 0; trial < 50; ++trial) {
        AttitudeReference ref;
        IndiMeasurement meas;
        const Vec4 base = plant_response(bank.state);
        meas.omega_dot = base.head<3>();
        meas.specific_thrust = base(3);

        // Small rate and thrust demands keep the increments in the linear
        // range of the rotor maps; the bilinear thrust-tilt term scales the
        // pitch error as dT / 2T.
        RigidBodyState probe = s;
        probe.omega = Vec3{0.02 * small(rng), 0.02 * small(rng), 0.02 * small(rng)};
        ref.specific_thrust = base(3) + 0.04 * small(rng);
        const IndiCommand cmd =
            indi_attitude_step(meas, bank, probe, 0.0, ref, cfg, vp);

        bool bounded = true;
        for (int i = 0; i < kNumActuators; ++i) {
            if (cmd.u_c(i) == bank.lower(i) || cmd.u_c(i) == bank.upper(i)) {
                bounded = false;
            }
        }
        if (!bounded) continue;  // only unbounded increments invert exactly

        const Vec4 realized = plant_response(cmd.u_c);
        for (int k = 0; k < 4; ++k) {
            const double scale = std::max(1.0, std::abs(cmd.nu(k)));
            REQUIRE(std::abs(realized(k) - cmd.nu(k)) <= 0.01 * scale);
        }
    }
}

TEST_SUITE_END();
