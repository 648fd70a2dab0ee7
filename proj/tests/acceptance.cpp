// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each numbered check prints one PASS/FAIL line;
// the binary exits nonzero if any check fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tresim/actuators.hpp"
#include "tresim/attitude.hpp"
#include "tresim/effectiveness.hpp"
#include "tresim/guidance.hpp"
#include "tresim/physics.hpp"
#include "tresim/pivot.hpp"
#include "tresim/report.hpp"
#include "tresim/rigid_body.hpp"
#include "tresim/scenario.hpp"
#include "tresim/simulator.hpp"
#include "tresim/sweep.hpp"
#include "tresim/wls.hpp"

using namespace tre;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

bool expect(bool ok, const std::string& what, std::string& detail) {
    if (!ok && detail.empty()) detail = what;
    return ok;
}

// ---------------------------------------------------------------- criterion 1

bool scheduling_exactness(std::string& detail) {
    bool ok = true;
    ok &= expect(pitch_ratio(-kPi / 6.0) == 0.0, "pitch_ratio(-pi/6) != 0", detail);
    ok &= expect(pitch_ratio(-kPi / 3.0) == 1.0, "pitch_ratio(-pi/3) != 1", detail);
    ok &= expect(std::abs(elevon_pitch_effectiveness(0.0, 5.0) - 13.10) <= 1e-12,
                 "G_E25 vertical anchor", detail);
    ok &= expect(std::abs(elevon_pitch_effectiveness(-kPi / 2.0, 5.0) - 21.83) <= 1e-12,
                 "G_E25 forward anchor", detail);
    ok &= expect(std::abs(elevon_pitch_effectiveness(0.0, 15.0) - 52.385) <= 1e-9,
                 "G_E25 at 15 m/s", detail);
    // 15.72 + 0.0873*256 = 38.0688.
    ok &= expect(std::abs(elevon_yaw_effectiveness(0.0, 16.0) - 38.0688) <= 1e-9,
                 "G_E35 at 16 m/s", detail);
    return ok;
}

// ---------------------------------------------------------------- criterion 2

bool pivot_lyapunov(std::string& detail) {
    VehicleParams vp;
    const PivotGains gains{4.0, 6.0};
    double theta = -kPi / 2.0, q = 0.0;
    const double dt = 1e-3;
    const auto accel = [&](double th, double qq) {
        PivotState s;
        s.theta = th;
        s.q = qq;
        return pivot_virtual_accel(th, pivot_control_input(s, gains, vp), 0.0, vp);
    };
    PivotState s0;
    s0.theta = theta;
    const double e0 = lyapunov_energy(s0, gains);
    for (int i = 0; i < 2000; ++i) {
        const double k1q = accel(theta, q);
        const double t2 = theta + 0.5 * dt * q, q2 = q + 0.5 * dt * k1q;
        const double k2q = accel(t2, q2);
        const double t3 = theta + 0.5 * dt * q2, q3 = q + 0.5 * dt * k2q;
        const double k3q = accel(t3, q3);
        const double t4 = theta + dt * q3, q4 = q + dt * k3q;
        const double k4q = accel(t4, q4);
        theta += dt / 6.0 * (q + 2 * q2 + 2 * q3 + q4);
        q += dt / 6.0 * (k1q + 2 * k2q + 2 * k3q + k4q);
    }
    PivotState s1;
    s1.theta = theta;
    s1.q = q;
    const double slope = (std::log(lyapunov_energy(s1, gains)) - std::log(e0)) / 2.0;
    const double target = -2.0 * gains.k2;
    bool ok = expect(std::abs(slope - target) <= 0.02 * std::abs(target),
                     "ln E slope " + std::to_string(slope) + " vs " +
                         std::to_string(target),
                     detail);

    const ScenarioConfig config = canned_scenario("pivot_takeoff");
    const RunReport report = compute_report(simulate_scenario(config));
    ok &= expect(report.pivot_gate_time >= 0.0 && report.pivot_gate_time <= 5.0,
                 "closed-loop gate time " + std::to_string(report.pivot_gate_time),
                 detail);
    if (ok) {
        std::ostringstream os;
        os << "slope " << slope << " (target " << target << "), gate at "
           << report.pivot_gate_time << " s";
        detail = os.str();
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 3

AllocationProblem random_problem(std::mt19937& rng, bool wide) {
    std::uniform_real_distribution<double> entry(-2.0, 2.0);
    std::uniform_real_distribution<double> weight(0.2, 2.0);
    AllocationProblem p;
    p.G.resize(4, 6);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 6; ++j) p.G(i, j) = entry(rng);
    p.nu.resize(4);
    for (int i = 0; i < 4; ++i) p.nu(i) = entry(rng);
    p.u_p.resize(6);
    for (int i = 0; i < 6; ++i) p.u_p(i) = 0.25 * entry(rng);
    p.w_u.resize(6);
    for (int i = 0; i < 6; ++i) p.w_u(i) = weight(rng);
    p.w_v.resize(4);
    for (int i = 0; i < 4; ++i) p.w_v(i) = weight(rng);
    p.gamma = 10.0;
    p.lower = Eigen::VectorXd::Constant(6, wide ? -100.0 : -0.6);
    p.upper = Eigen::VectorXd::Constant(6, wide ? 100.0 : 0.6);
    return p;
}

bool allocation_optimality(std::string& detail) {
    std::mt19937 rng(101);
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        const AllocationProblem p = random_problem(rng, true);
        const Eigen::MatrixXd wu2 = p.w_u.array().square().matrix().asDiagonal();
        const Eigen::MatrixXd wv2 = p.w_v.array().square().matrix().asDiagonal();
        const Eigen::VectorXd closed_form =
            (wu2 + p.gamma * p.G.transpose() * wv2 * p.G)
                .ldlt()
                .solve(wu2 * p.u_p + p.gamma * p.G.transpose() * wv2 * p.nu);
        const WlsSolution sol = solve_wls(p);
        ok &= expect((sol.u - closed_form).lpNorm<Eigen::Infinity>() <= 1e-8,
                     "closed-form mismatch on trial " + std::to_string(trial), detail);
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100 && ok; ++trial) {
        const AllocationProblem p = random_problem(rng, false);
        const WlsSolution sol = solve_wls(p);
        const double best = allocation_cost(p, sol.u);
        for (int k = 0; k < 10000 && ok; ++k) {
            Eigen::VectorXd x(6);
            for (int i = 0; i < 6; ++i) {
                x(i) = p.lower(i) + unit(rng) * (p.upper(i) - p.lower(i));
            }
            ok &= expect(best <= allocation_cost(p, x) + 1e-9,
                         "random point beat the solver", detail);
        }
    }

    // Pivot weighted pseudo-inverse: exactness and minimum weighted norm.
    VehicleParams vp;
    std::uniform_real_distribution<double> angle(-kPi / 2.0, 0.2);
    std::uniform_real_distribution<double> du_dist(-1.0, 1.0);
    for (int trial = 0; trial < 100 && ok; ++trial) {
        const double theta = angle(rng);
        const double du = du_dist(rng);
        const PivotAllocation a = pivot_allocate(du, theta, vp);
        const PivotEquilibrium eq = pivot_equilibrium(theta, vp);
        const double b1 = std::sin(eq.deflection);
        const double b2 = eq.thrust * std::cos(eq.deflection);
        ok &= expect(std::abs(b1 * a.delta_thrust + b2 * a.delta_deflection - du) <=
                         1e-9,
                     "pivot allocation residual", detail);
        const double w1 = 1.0 / (kPivotThrustScale * kPivotThrustScale);
        const double w2 = 1.0 / (kPivotTiltScale * kPivotTiltScale);
        const double norm0 = w1 * a.delta_thrust * a.delta_thrust +
                             w2 * a.delta_deflection * a.delta_deflection;
        const double n1 = -b2, n2 = b1;
        for (double t = -1.0; t <= 1.0; t += 1e-3) {
            const double x1 = a.delta_thrust + t * n1;
            const double x2 = a.delta_deflection + t * n2;
            ok &= (w1 * x1 * x1 + w2 * x2 * x2 >= norm0 - 1e-12);
        }
        if (!ok) expect(false, "pivot allocation is not norm-minimal", detail);
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 4

bool effectiveness_correctness(std::string& detail) {
    VehicleParams vp;
    std::mt19937 rng(202);
    std::uniform_real_distribution<double> tilt(-1.0996, 1.0996);
    std::uniform_real_distribution<double> thrust(0.05, 8.56);
    std::uniform_real_distribution<double> pitch(-kPi / 2.0, 0.2);
    std::uniform_real_distribution<double> speed(0.0, 20.0);
    const double h = 1e-5;
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        Vec6 u = Vec6::Zero();
        u(kTiltLeft) = tilt(rng);
        u(kTiltRight) = tilt(rng);
        u(kThrustLeft) = thrust(rng);
        u(kThrustRight) = thrust(rng);
        const EffectivenessMatrix g =
            build_effectiveness(u, pitch(rng), speed(rng), vp);
        for (int j = 0; j < 4 && ok; ++j) {
            Vec6 up = u, dn = u;
            up(j) += h;
            dn(j) -= h;
            Vec4 fd;
            fd.head<3>() = (control_moment_from_tilt(up, vp) -
                            control_moment_from_tilt(dn, vp))
                               .cwiseQuotient(vp.inertia_diag) /
                           (2.0 * h);
            fd(3) = (specific_thrust(up, vp.mass) - specific_thrust(dn, vp.mass)) /
                    (2.0 * h);
            for (int r = 0; r < 4; ++r) {
                const double scale = std::max(1.0, std::abs(fd(r)));
                ok &= expect(std::abs(g(r, j) - fd(r)) <= 1e-5 * scale,
                             "inner effectiveness FD mismatch", detail);
            }
        }
    }

    std::uniform_real_distribution<double> yaw(-kPi, kPi);
    std::uniform_real_distribution<double> roll(-0.6, 0.6);
    std::uniform_real_distribution<double> tz(1.0, 30.0);
    const auto accel = [](double y, double r, double p, double t) {
        return Vec3(euler_zxy_to_rotation(y, r, p) * Vec3{0, 0, -t} + Vec3{0, 0, 9.81});
    };
    for (int i = 0; i < 1000 && ok; ++i) {
        const double y = yaw(rng), r = roll(rng), p = pitch(rng), t = tz(rng);
        const Mat3 jac = outer_effectiveness(y, r, p, t);
        Mat3 fd;
        fd.col(0) = (accel(y, r + h, p, t) - accel(y, r - h, p, t)) / (2 * h);
        fd.col(1) = (accel(y, r, p + h, t) - accel(y, r, p - h, t)) / (2 * h);
        fd.col(2) = (accel(y, r, p, t + h) - accel(y, r, p, t - h)) / (2 * h);
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                const double scale = std::max(1.0, std::abs(fd(a, b)));
                ok &= expect(std::abs(jac(a, b) - fd(a, b)) <= 1e-5 * scale,
                             "outer effectiveness FD mismatch", detail);
            }
        }
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 5

bool full_envelope(std::string& detail) {
    const ScenarioConfig config = canned_scenario("full_envelope");
    const TelemetryLog log = simulate_scenario(config);
    const RunReport report = compute_report(log);

    std::string sequence;
    for (const PhaseStats& p : report.phases) {
        if (!sequence.empty()) sequence += ',';
        sequence += phase_name(p.phase);
    }
    bool ok = true;
    ok &= expect(sequence ==
                     "GroundedPivotUp,Hover,TransitionToForward,Forward,"
                     "TransitionToHover,PivotDown,Landed",
                 "phase sequence was " + sequence, detail);
    ok &= expect(report.all_waypoints_hit,
                 "waypoints " + std::to_string(report.waypoints_reached.size()) + "/" +
                     std::to_string(report.waypoints_total),
                 detail);
    ok &= expect(report.sat_duty_outside_pivot == 0.0,
                 "saturation outside pivot " +
                     std::to_string(report.sat_duty_outside_pivot),
                 detail);
    ok &= expect(report.wind_peak >= 9.3 && report.wind_peak <= 11.3,
                 "wind peak " + std::to_string(report.wind_peak), detail);
    ok &= expect(!report.diverged, "diverged", detail);
    if (ok) {
        std::ostringstream os;
        os << "mission " << report.duration << " s, wind peak " << report.wind_peak
           << " m/s, all " << report.waypoints_total << " waypoints";
        detail = os.str();
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 6

bool descent_comparison(std::string& detail) {
    const RunReport e_mode =
        compute_report(simulate_scenario(canned_scenario("climb_descent_e")));
    const RunReport tre_mode =
        compute_report(simulate_scenario(canned_scenario("climb_descent")));

    const auto leg_stats = [](const RunReport& r, int idx) -> const LegStats& {
        for (const LegStats& leg : r.legs) {
            if (leg.leg == idx) return leg;
        }
        throw std::runtime_error("missing leg");
    };

    bool ok = true;
    try {
        const LegStats& e_climb = leg_stats(e_mode, 1);
        const LegStats& e_descent = leg_stats(e_mode, 3);
        const double e_elevon_lower = std::max(e_descent.lower_duty[kElevonLeft],
                                               e_descent.lower_duty[kElevonRight]);
        ok &= expect(e_elevon_lower > 0.0,
                     "no downward elevon saturation in the e-mode descent", detail);
        const double e_ratio = e_descent.mean_pos_error /
                               std::max(e_climb.mean_pos_error, 1e-9);
        ok &= expect(e_ratio >= 3.0,
                     "e-mode descent/climb error ratio " + std::to_string(e_ratio),
                     detail);

        const LegStats& t_climb = leg_stats(tre_mode, 1);
        const LegStats& t_descent = leg_stats(tre_mode, 3);
        ok &= expect(tre_mode.sat_duty_any == 0.0,
                     "tre mode saturated " + std::to_string(tre_mode.sat_duty_any),
                     detail);
        const double t_ratio = t_descent.mean_pos_error /
                               std::max(t_climb.mean_pos_error, 1e-9);
        ok &= expect(t_ratio <= 1.5,
                     "tre descent/climb error ratio " + std::to_string(t_ratio),
                     detail);
        if (ok) {
            std::ostringstream os;
            os << "e-mode ratio " << e_ratio << " with elevon duty " << e_elevon_lower
               << "; tre ratio " << t_ratio << " with zero saturation";
            detail = os.str();
        }
    } catch (const std::exception& e) {
        ok = expect(false, e.what(), detail);
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 7

bool pivot_robustness(std::string& detail) {
    const ScenarioConfig config = canned_scenario("pivot_robustness");
    const auto runs = run_sweep_parallel(config, sequential_seeds(1, 8));
    bool ok = true;
    double lo = 1e9, hi = -1e9;
    for (const SweepRun& run : runs) {
        ok &= expect(run.report.pivot_gate_time >= 0.0 &&
                         run.report.pivot_gate_time <= 5.0,
                     "seed " + std::to_string(run.seed) + " gate " +
                         std::to_string(run.report.pivot_gate_time),
                     detail);
        lo = std::min(lo, run.report.pivot_gate_time);
        hi = std::max(hi, run.report.pivot_gate_time);
    }
    if (ok) {
        std::ostringstream os;
        os << "8/8 runs reached the gate; crossing times in [" << lo << ", " << hi
           << "] s";
        detail = os.str();
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 8

bool determinism_and_integration(std::string& detail) {
    bool ok = true;

    ScenarioConfig config = canned_scenario("full_envelope");
    config.duration = 20.0;
    const TelemetryLog a = simulate_scenario(config);
    const TelemetryLog b = simulate_scenario(config);
    ok &= expect(a == b, "repeated seeds differ", detail);

    // Torque-free asymmetric top over 10 s.
    RigidBodyState s;
    s.omega = Vec3{2.0, 1.0, 0.5};
    const Vec3 inertia{0.0035, 0.0021, 0.0055};
    const auto fn = [](const RigidBodyState&, Vec3& f, Vec3& m) {
        f.setZero();
        m.setZero();
    };
    const double e0 = s.omega.dot(inertia.cwiseProduct(s.omega));
    const double h0 = inertia.cwiseProduct(s.omega).squaredNorm();
    for (int i = 0; i < 5000; ++i) s = rigid_body_step(s, 0.489, inertia, fn, 0.002);
    const double e1 = s.omega.dot(inertia.cwiseProduct(s.omega));
    const double h1 = inertia.cwiseProduct(s.omega).squaredNorm();
    ok &= expect(std::abs(e1 - e0) / e0 <= 1e-6, "energy drift", detail);
    ok &= expect(std::abs(h1 - h0) / h0 <= 1e-6, "momentum drift", detail);

    // Actuator 63.2 percent crossing at t = tau within one control step. The
    // servo uses a small-signal step so its rate limit stays inactive.
    VehicleParams vp;
    const double dt = 0.0005;
    const auto crossing_time = [&](double tau, double rate_limit, double amplitude) {
        double state = 0.0;
        for (int step = 1; step <= 1000; ++step) {
            state = actuator_step_single(state, amplitude, -10.0, 10.0, tau,
                                         rate_limit, dt);
            if (state >= 0.632 * amplitude) return step * dt;
        }
        return 1e9;
    };
    const double motor_cross = crossing_time(vp.tau_motor, 0.0, 1.0);
    ok &= expect(std::abs(motor_cross - vp.tau_motor) <= dt,
                 "motor 63.2% at " + std::to_string(motor_cross), detail);
    const double servo_cross = crossing_time(vp.tau_servo, vp.servo_rate_limit, 0.02);
    ok &= expect(std::abs(servo_cross - vp.tau_servo) <= dt,
                 "servo 63.2% at " + std::to_string(servo_cross), detail);
    if (ok) {
        std::ostringstream os;
        os << "telemetry bitwise equal; top drift within 1e-6; crossings at "
           << motor_cross << " s / " << servo_cross << " s";
        detail = os.str();
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 9

double routing_share(double pitch, double airspeed, int objective_row,
                     bool (*selector)(int), const Vec4& nu_demand) {
    VehicleParams vp;
    AttitudeLoopConfig cfg;
    ActuatorBank bank = ActuatorBank::from_params(vp);
    if (pitch > -0.5) {
        bank.state(kThrustLeft) = 0.5 * vp.weight();
        bank.state(kThrustRight) = 0.5 * vp.weight();
    } else {
        bank.state(kThrustLeft) = 0.4;
        bank.state(kThrustRight) = 0.4;
    }

    AllocationProblem p;
    p.G = build_effectiveness(bank.state, pitch, airspeed, vp);
    p.nu = p.G * bank.state + Eigen::VectorXd(nu_demand);
    p.u_p = bank.state;
    p.u_p(kThrustLeft) = 0.5 * vp.weight();
    p.u_p(kThrustRight) = 0.5 * vp.weight();
    p.w_u = mode_actuator_weights(pitch, cfg);
    p.w_v = cfg.objective_weights;
    p.gamma = cfg.gamma;
    p.lower = bank.lower;
    p.upper = bank.upper;
    const WlsSolution sol = solve_wls(p);
    const Eigen::VectorXd increment = sol.u - bank.state;
    double selected = 0.0, total = 0.0;
    for (int i = 0; i < kNumActuators; ++i) {
        const double c = p.G(objective_row, i) * increment(i);
        total += std::abs(c);
        if (selector(i)) selected += std::abs(c);
    }
    return total > 0.0 ? selected / total : 0.0;
}

bool weight_routing(std::string& detail) {
    const double tilt_share =
        routing_share(0.0, 0.0, 1, is_tilt, Vec4{0.0, 10.0, 0.0, 0.0});
    const double elevon_share =
        routing_share(-kPi / 2.0, 16.0, 2, is_elevon, Vec4{0.0, 0.0, 10.0, 0.0});
    bool ok = true;
    ok &= expect(tilt_share >= 0.90,
                 "hover pitch tilt share " + std::to_string(tilt_share), detail);
    ok &= expect(elevon_share >= 0.90,
                 "forward roll elevon share " + std::to_string(elevon_share), detail);
    if (ok) {
        std::ostringstream os;
        os << "tilt share " << tilt_share << ", elevon share " << elevon_share;
        detail = os.str();
    }
    return ok;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"1 scheduling exactness", scheduling_exactness},
        {"2 pivot Lyapunov law", pivot_lyapunov},
        {"3 allocation optimality", allocation_optimality},
        {"4 effectiveness correctness", effectiveness_correctness},
        {"5 full-envelope mission", full_envelope},
        {"6 descent comparison", descent_comparison},
        {"7 pivot robustness", pivot_robustness},
        {"8 determinism and integrator quality", determinism_and_integration},
        {"9 weight-routing property", weight_routing},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %s%s%s\n", ok ? "PASS" : "FAIL", c.name.c_str(),
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
