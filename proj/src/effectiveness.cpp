// SPDX-License-Identifier: Apache-2.0
#include "tresim/effectiveness.hpp"

#include <cmath>

#include "tresim/physics.hpp"

namespace tre {

double pitch_ratio(double pitch) {
    constexpr double kHigh = -kPi / 6.0;
    constexpr double kLow = -kPi / 3.0;
    if (pitch >= kHigh) return 0.0;
    if (pitch <= kLow) return 1.0;
    return (pitch + kPi / 6.0) / (-kPi / 6.0);
}

double elevon_pitch_effectiveness(double pitch, double airspeed) {
    if (airspeed >= 12.0) {
        return 13.10 + 0.1746 * airspeed * airspeed;
    }
    const double r = pitch_ratio(pitch);
    return 13.10 * (1.0 - r) + 21.83 * r;
}

double elevon_yaw_effectiveness(double pitch, double airspeed) {
    if (airspeed >= 12.0) {
        return 15.72 + 0.0873 * airspeed * airspeed;
    }
    const double r = pitch_ratio(pitch);
    return 15.72 * (1.0 - r) + 26.19 * r;
}

EffectivenessMatrix build_effectiveness(const Vec6& u, double pitch, double airspeed,
                                        const VehicleParams& params) {
    const double b = params.arm_b;
    const double l = params.arm_l;
    const double m = params.mass;
    const Vec3 inv_inertia = params.inertia_diag.cwiseInverse();

    const double tl = u(kTiltLeft), tr = u(kTiltRight);
    const double thl = u(kThrustLeft), thr = u(kThrustRight);
    const double cl = std::cos(tl), sl = std::sin(tl);
    const double cr = std::cos(tr), sr = std::sin(tr);

    EffectivenessMatrix g = EffectivenessMatrix::Zero();

    // Tilt columns: d(I^-1 M)/d(delta_T) and dT_Z/d(delta_T).
    g.col(kTiltLeft).head<3>() =
        inv_inertia.cwiseProduct(Vec3{-b * thl * sl, l * thl * cl, -b * thl * cl});
    g(3, kTiltLeft) = -thl * sl / m;
    g.col(kTiltRight).head<3>() =
        inv_inertia.cwiseProduct(Vec3{b * thr * sr, l * thr * cr, b * thr * cr});
    g(3, kTiltRight) = -thr * sr / m;

    // Thrust columns: d(I^-1 M)/dT and dT_Z/dT.
    g.col(kThrustLeft).head<3>() =
        inv_inertia.cwiseProduct(Vec3{b * cl, l * sl, -b * sl});
    g(3, kThrustLeft) = cl / m;
    g.col(kThrustRight).head<3>() =
        inv_inertia.cwiseProduct(Vec3{-b * cr, l * sr, b * sr});
    g(3, kThrustRight) = cr / m;

    // Elevon columns: scheduled aerodynamic effectiveness.
    const double pitch_eff = elevon_pitch_effectiveness(pitch, airspeed);
    const double yaw_eff = elevon_yaw_effectiveness(pitch, airspeed);
    g(1, kElevonLeft) = pitch_eff;
    g(1, kElevonRight) = pitch_eff;
    g(2, kElevonLeft) = yaw_eff;
    g(2, kElevonRight) = -yaw_eff;

    return g;
}

namespace {
double smoothstep01(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x * x * (3.0 - 2.0 * x);
}
}  // namespace

Vec6 actuator_weights(double pitch, const WeightSchedule& schedule) {
    double blend;  // 0 in vertical flight, 1 in forward flight
    if (pitch >= schedule.band_high) {
        blend = 0.0;
    } else if (pitch <= schedule.band_low) {
        blend = 1.0;
    } else {
        blend = (schedule.band_high - pitch) / (schedule.band_high - schedule.band_low);
    }
    const double span = schedule.weight_max - schedule.weight_min;
    const double tilt = schedule.weight_min + span * smoothstep01(blend);
    const double elevon = schedule.weight_min + span * smoothstep01(1.0 - blend);

    Vec6 w;
    w(kTiltLeft) = tilt;
    w(kTiltRight) = tilt;
    w(kThrustLeft) = schedule.motor_weight;
    w(kThrustRight) = schedule.motor_weight;
    w(kElevonLeft) = elevon;
    w(kElevonRight) = elevon;
    return w;
}

}  // namespace tre
