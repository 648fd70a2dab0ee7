// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "tresim/actuators.hpp"
#include "tresim/pivot.hpp"
#include "tresim/rigid_body.hpp"

using namespace tre;

namespace {

// Expanded stabilizing control law with theta_ddot_d = 0, written directly
// from its defining terms rather than the split used by the implementation.
double expanded_control(const PivotState& s, const PivotGains& g,
                        const VehicleParams& vp) {
    const double i_yy = vp.pivot_inertia_yy();
    const double z = g.k1 * (s.theta - s.theta_d) + s.q - s.theta_dot_d;
    return i_yy / vp.pivot_l1 *
           (-g.k1 * s.q + g.k1 * s.theta_dot_d -
            vp.weight() * vp.pivot_l2 * std::sin(s.theta) / i_yy - g.k2 * z);
}

// Test-side RK4 on the 1-DOF pivot plant under a control callback.
template <typename Fn>
void integrate_ideal_pivot(double& theta, double& q, const Fn& control, double dt,
                           const VehicleParams& vp) {
    const auto accel = [&](double th, double qq) {
        return pivot_virtual_accel(th, control(th, qq), 0.0, vp);
    };
    const double k1q = accel(theta, q);
    const double t2 = theta + 0.5 * dt * q, q2 = q + 0.5 * dt * k1q;
    const double k2q = accel(t2, q2);
    const double t3 = theta + 0.5 * dt * q2, q3 = q + 0.5 * dt * k2q;
    const double k3q = accel(t3, q3);
    const double t4 = theta + dt * q3, q4 = q + dt * k3q;
    const double k4q = accel(t4, q4);
    theta += dt / 6.0 * (q + 2.0 * q2 + 2.0 * q3 + q4);
    q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
}

}  // namespace

TEST_SUITE_BEGIN("pivot");

TEST_CASE("equilibrium split: constant thrust, tilt opposes pitch") {
    VehicleParams vp;
    SUBCASE("upright") {
        const PivotEquilibrium eq = pivot_equilibrium(0.0, vp);
        CHECK(eq.deflection == 0.0);
        CHECK(eq.thrust == doctest::Approx(vp.weight() * 0.10 / 0.13).epsilon(1e-12));
    }
    SUBCASE("lying flat") {
        const PivotEquilibrium eq = pivot_equilibrium(-kPi / 2.0, vp);
        CHECK(eq.thrust == doctest::Approx(3.690).epsilon(1e-3));
        CHECK(eq.deflection == doctest::Approx(kPi / 2.0));
    }
    SUBCASE("thrust independent of pitch") {
        CHECK(pivot_equilibrium(-kPi / 4.0, vp).thrust ==
              doctest::Approx(pivot_equilibrium(0.0, vp).thrust));
        CHECK(pivot_equilibrium(-kPi / 4.0, vp).deflection ==
              doctest::Approx(kPi / 4.0));
    }
}

TEST_CASE("feedback is zero at zero tracking error") {
    VehicleParams vp;
    PivotState s;
    s.theta = -0.4;
    s.theta_d = -0.4;
    s.q = 0.2;
    s.theta_dot_d = 0.2;
    CHECK(pivot_feedback(s, {}, vp) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("feedback magnitude for a pure pitch offset") {
    // Gains k1=4, k2=6 with I'_yy/l1 = 0.08 and x1 = 0.1:
    // |du| = 0.08 * 4 * 6 * 0.1 = 0.192. The sign is negative: the correction
    // must push a positive pitch error back down, which the identity against
    // the expanded stabilizing law pins below.
    VehicleParams vp;
    vp.pivot_inertia = 0.08 * vp.pivot_l1;
    PivotGains gains{4.0, 6.0};
    PivotState s;
    s.theta = 0.1;
    s.theta_d = 0.0;
    s.q = 0.0;
    const double du = pivot_feedback(s, gains, vp);
    CHECK(std::abs(du) == doctest::Approx(0.192).epsilon(1e-12));
    CHECK(du < 0.0);
}

TEST_CASE("feedback plus equilibrium equals the expanded stabilizing law") {
    VehicleParams vp;
    PivotGains gains{4.0, 6.0};
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> angle(-kPi / 2.0, kPi / 4.0);
    std::uniform_real_distribution<double> rate(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        PivotState s;
        s.theta = angle(rng);
        s.theta_d = angle(rng);
        s.q = rate(rng);
        s.theta_dot_d = 0.3 * rate(rng);
        const double split = pivot_control_input(s, gains, vp);
        const double expanded = expanded_control(s, gains, vp);
        REQUIRE(split == doctest::Approx(expanded).epsilon(1e-12));
    }
}

TEST_CASE("allocation solves B x = du with the minimum weighted norm") {
    VehicleParams vp;
    SUBCASE("zero increment") {
        const PivotAllocation a = pivot_allocate(0.0, -0.3, vp);
        CHECK(a.delta_thrust == 0.0);
        CHECK(a.delta_deflection == 0.0);
    }
    SUBCASE("upright: all correction goes to tilt") {
        const double t_eq = pivot_equilibrium(0.0, vp).thrust;
        const PivotAllocation a = pivot_allocate(0.5, 0.0, vp);
        CHECK(a.delta_thrust == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(a.delta_deflection == doctest::Approx(0.5 / t_eq).epsilon(1e-12));
    }
    SUBCASE("mid-pivot solution is exact and weighted-norm minimal") {
        const double theta = -kPi / 4.0;
        const double du = 0.2;
        const PivotAllocation a = pivot_allocate(du, theta, vp);
        const PivotEquilibrium eq = pivot_equilibrium(theta, vp);
        const double b1 = std::sin(eq.deflection);
        const double b2 = eq.thrust * std::cos(eq.deflection);
        CHECK(b1 * a.delta_thrust + b2 * a.delta_deflection ==
              doctest::Approx(du).epsilon(1e-9));

        // Independent check: scan the feasible line x = x* + t n, n in
        // null(B), for a lower weighted norm.
        const double w1 = 1.0 / (kPivotThrustScale * kPivotThrustScale);
        const double w2 = 1.0 / (kPivotTiltScale * kPivotTiltScale);
        const double best =
            w1 * a.delta_thrust * a.delta_thrust +
            w2 * a.delta_deflection * a.delta_deflection;
        const double n1 = -b2, n2 = b1;  // null direction of B
        for (double t = -2.0; t <= 2.0; t += 1e-4) {
            const double x1 = a.delta_thrust + t * n1;
            const double x2 = a.delta_deflection + t * n2;
            REQUIRE(w1 * x1 * x1 + w2 * x2 * x2 >= best - 1e-12);
        }
    }
}

TEST_CASE("pivot step holds the upright equilibrium") {
    VehicleParams vp;
    PivotState s;  // theta = theta_d = 0, q = 0
    const Vec6 cmd = pivot_step(s, {}, vp);
    const double t_eq = pivot_equilibrium(0.0, vp).thrust;
    CHECK(cmd(kThrustLeft) == doctest::Approx(0.5 * t_eq).epsilon(1e-12));
    CHECK(cmd(kThrustRight) == doctest::Approx(0.5 * t_eq).epsilon(1e-12));
    CHECK(cmd(kTiltLeft) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cmd(kElevonLeft) == 0.0);
    CHECK(cmd(kElevonRight) == 0.0);
}

TEST_CASE("initial flat command saturates tilt at the deflection limit") {
    VehicleParams vp;
    PivotState s;
    s.theta = -kPi / 2.0;
    s.theta_d = -kPi / 2.0;  // ramp start
    const Vec6 cmd = pivot_step(s, {}, vp);
    CHECK(cmd(kTiltLeft) == doctest::Approx(vp.deflection_max));
    CHECK(cmd(kTiltLeft) == cmd(kTiltRight));
}

TEST_CASE("pivot commands stay within limits and left equals right bitwise") {
    VehicleParams vp;
    PivotGains gains;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> angle(-kPi / 2.0, kPi / 6.0);
    std::uniform_real_distribution<double> rate(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        PivotState s;
        s.theta = angle(rng);
        s.theta_d = angle(rng);
        s.q = rate(rng);
        const Vec6 cmd = pivot_step(s, gains, vp);
        CHECK(cmd(kThrustLeft) >= 0.0);
        CHECK(cmd(kThrustLeft) <= vp.thrust_max);
        CHECK(std::abs(cmd(kTiltLeft)) <= vp.deflection_max);
        CHECK(cmd(kTiltLeft) == cmd(kTiltRight));
        CHECK(cmd(kThrustLeft) == cmd(kThrustRight));
    }
}

TEST_CASE("lyapunov energy definition") {
    PivotGains gains;
    PivotState s;
    CHECK(lyapunov_energy(s, gains) == 0.0);
    s.q = 0.4;  // z = 0.4 with zero angle error
    CHECK(lyapunov_energy(s, gains) == doctest::Approx(0.08).epsilon(1e-15));
}

TEST_CASE("ideal closed loop decays ln E at exactly -2 k2") {
    VehicleParams vp;
    const PivotGains gains{4.0, 6.0};
    const double theta_d = 0.0;
    double theta = -kPi / 2.0, q = 0.0;
    const double dt = 1e-3;

    const auto control = [&](double th, double qq) {
        PivotState s;
        s.theta = th;
        s.q = qq;
        s.theta_d = theta_d;
        return pivot_control_input(s, gains, vp);
    };
    const auto energy = [&](double th, double qq) {
        PivotState s;
        s.theta = th;
        s.q = qq;
        s.theta_d = theta_d;
        return lyapunov_energy(s, gains);
    };

    const double e0 = energy(theta, q);
    std::vector<double> log_e;
    for (int i = 0; i < 2000; ++i) {
        integrate_ideal_pivot(theta, q, control, dt, vp);
        log_e.push_back(std::log(energy(theta, q)));
    }
    // Endpoint slope over 2 s.
    const double slope = (log_e.back() - std::log(e0)) / 2.0;
    CHECK(slope == doctest::Approx(-2.0 * gains.k2).epsilon(0.02));
    // Monotone non-increasing energy along the trajectory.
    for (size_t i = 1; i < log_e.size(); ++i) {
        REQUIRE(log_e[i] <= log_e[i - 1] + 1e-12);
    }
}

TEST_CASE("on the z = 0 manifold the pitch error decays at k1") {
    const PivotGains gains{4.0, 6.0};
    // With z = 0, x2 - theta_dot_d = -k1 x1, so x1' = -k1 x1.
    double x1 = 0.5;
    const double dt = 1e-3;
    const double t_end = 3.0 / gains.k1;
    const int steps = static_cast<int>(t_end / dt);
    for (int i = 0; i < steps; ++i) {
        // RK4 on x1' = -k1 x1.
        const double k1 = -gains.k1 * x1;
        const double k2 = -gains.k1 * (x1 + 0.5 * dt * k1);
        const double k3 = -gains.k1 * (x1 + 0.5 * dt * k2);
        const double k4 = -gains.k1 * (x1 + dt * k3);
        x1 += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    CHECK(x1 == doctest::Approx(0.5 * std::exp(-3.0)).epsilon(0.01));
}

TEST_CASE("allocated closed-loop pivot reaches the upright gate within 5 s") {
    VehicleParams vp;
    const PivotGains gains;
    PivotRamp ramp;  // -90 deg to 0 at 60 deg/s
    ActuatorBank bank = ActuatorBank::from_params(vp);

    ContactPivotState contact;
    contact.theta = -kPi / 2.0;
    const double dt = 0.002;
    double gate_time = -1.0;
    double max_theta = -kPi;
    for (int step = 0; step < 2500; ++step) {
        const double t = step * dt;
        PivotState s;
        s.theta = contact.theta;
        s.q = contact.q;
        s.theta_d = ramp.theta_d(t);
        s.theta_dot_d = ramp.theta_dot_d(t);
        const Vec6 cmd = pivot_step(s, gains, vp);
        bank.step(cmd, dt);
        const double thrust = bank.state(kThrustLeft) + bank.state(kThrustRight);
        contact = pivot_contact_step(contact, thrust, bank.state(kTiltLeft), 0.0, vp, dt);
        max_theta = std::max(max_theta, contact.theta);
        if (gate_time < 0.0 && std::abs(contact.theta) <= deg2rad(5.4) &&
            std::abs(contact.q) <= 0.1) {
            gate_time = t;
        }
    }
    REQUIRE(gate_time >= 0.0);
    CHECK(gate_time <= 5.0);
    CHECK(max_theta <= deg2rad(5.4));
}

TEST_CASE("pivot ramp profile: endpoints, slope and zero acceleration") {
    PivotRamp ramp;
    ramp.rate = deg2rad(60.0);
    CHECK(ramp.theta_d(0.0) == doctest::Approx(-kPi / 2.0));
    CHECK(ramp.theta_d(100.0) == doctest::Approx(0.0));
    CHECK(ramp.theta_dot_d(0.5) == doctest::Approx(deg2rad(60.0)));
    CHECK(ramp.theta_dot_d(100.0) == 0.0);
    // Midpoint value consistent with the slope.
    CHECK(ramp.theta_d(0.75) ==
          doctest::Approx(-kPi / 2.0 + deg2rad(60.0) * 0.75).epsilon(1e-12));
}

TEST_SUITE_END();
