// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tresim/actuators.hpp"
#include "tresim/types.hpp"

namespace tre {

/// Flat-plate full-envelope wing model plus propwash-driven elevon
/// effectiveness. Elevon moment gains are split into a freestream part
/// (scales with the signed square of chordwise flow) and a propwash part
/// (scales with per-side thrust); the propwash part fades out in descent,
/// when the wing sinks into reversed airflow, and the chordwise term changes
/// sign outright under reversed flow.
struct AeroParams {
    double air_density{1.225};  // kg/m^3
    double wing_area{0.071};    // m^2
    double chord{0.16};         // m

    double lift_slope{3.6};   // C_L = lift_slope sin(a) cos(a)
    double drag_zero{0.03};   // C_D = drag_zero + drag_k sin^2(a)
    double drag_k{1.9};
    double side_area{0.02};   // m^2 lateral flat plate
    double side_cd{1.1};

    double ac_offset{0.0057};     // m, aerodynamic center behind the CG
    double cp_travel{0.010};      // m, extra CP shift toward mid-chord at |a|=90 deg
    Vec3 moment_damping{0.5, 0.8, 0.4};  // nondimensional rate damping

    // Elevon pitch/yaw effectiveness, (rad/s^2)/rad, as
    //   flow_gain * u|u| + prop_gain * fade(u) * T_side
    // calibrated against the hover and 15 m/s cruise operating points.
    double elevon_pitch_flow_gain{0.22909};
    double elevon_pitch_prop_gain{5.4617};
    double elevon_yaw_flow_gain{0.15036};
    double elevon_yaw_prop_gain{6.5541};
    double descent_fade_speed{1.4};  // m/s of reversed chordwise flow to fade out
    double descent_fade_floor{0.05};
    double elevon_arm{0.085};  // m, elevon station behind the CG

    double tilt_roll_washout{0.25};  // propwash cut of the differential-tilt moment
};

/// Per-elevon pitch-axis effectiveness of the plant, (rad/s^2)/rad.
double plant_elevon_pitch_effectiveness(double chordwise_flow, double thrust_side,
                                        const AeroParams& aero);
double plant_elevon_yaw_effectiveness(double chordwise_flow, double thrust_side,
                                      const AeroParams& aero);

struct AeroResult {
    Vec3 force_body{Vec3::Zero()};
    Vec3 moment_body{Vec3::Zero()};
};

/// Aerodynamic force and moment in the body frame. `air_velocity_body` is the
/// vehicle velocity relative to the air mass, expressed in body axes. Zero
/// airflow with zero thrust yields exactly zero force and moment.
AeroResult aero_forces_moments(const Vec3& air_velocity_body, const Vec3& omega,
                               const Vec6& actuator_state, const AeroParams& aero,
                               const VehicleParams& params);

}  // namespace tre
