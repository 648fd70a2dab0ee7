// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tresim/actuators.hpp"
#include "tresim/types.hpp"

namespace tre {

/// Blend ratio between the vertical (0) and forward (1) flight regimes,
/// piecewise linear in pitch over [-pi/3, -pi/6].
double pitch_ratio(double pitch);

/// Elevon pitch-axis control effectiveness, (rad/s^2)/rad. Pitch-scheduled
/// below 12 m/s (pitot readings are unreliable there), airspeed-scheduled
/// above. The two branches do not meet at 12 m/s away from the forward
/// regime; the switch is applied as specified.
double elevon_pitch_effectiveness(double pitch, double airspeed);

/// Elevon yaw-axis (body z) control effectiveness, (rad/s^2)/rad.
double elevon_yaw_effectiveness(double pitch, double airspeed);

/// Control effectiveness of all six actuators at the current actuator state:
/// tilt and thrust columns are the analytic partials of the rotor moment and
/// specific-thrust maps, elevon columns come from the scheduled aerodynamic
/// effectiveness (equal pitch entries, opposing yaw entries, zero roll and
/// thrust rows).
EffectivenessMatrix build_effectiveness(const Vec6& actuator_state, double pitch,
                                        double airspeed, const VehicleParams& params);

/// Pitch band over which tilt and elevon weights cross-fade.
struct WeightSchedule {
    double band_low{-kPi / 3.0};   // forward-flight edge
    double band_high{-kPi / 6.0};  // vertical-flight edge
    double weight_min{0.001};
    double weight_max{1.0};
    double motor_weight{0.001};
};

/// Allocation input weights as a function of pitch: tilt cheap in vertical
/// flight, elevons cheap in forward flight, complementary smoothstep blends
/// across the band, identical left/right, motors constant.
Vec6 actuator_weights(double pitch, const WeightSchedule& schedule = {});

}  // namespace tre
