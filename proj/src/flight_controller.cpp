// SPDX-License-Identifier: Apache-2.0
#include "tresim/flight_controller.hpp"

#include <algorithm>
#include <cmath>

namespace tre {

namespace {

double wrap_angle(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a < -kPi) a += 2.0 * kPi;
    return a;
}

double slew_toward(double value, double target, double max_step) {
    const double err = wrap_angle(target - value);
    return value + std::clamp(err, -max_step, max_step);
}

}  // namespace

FlightController::FlightController(const ScenarioConfig& config)
    : config_(config), outer_dt_(config.dt * config.outer_divisor) {}

void FlightController::initialize(const RigidBodyState& state) {
    const Vec3 euler = state.euler_zxy();
    yaw_ref_base_ = euler(0);
    att_ref_.yaw = euler(0);
    att_ref_.roll = 0.0;
    att_ref_.pitch = 0.0;
    att_ref_.specific_thrust = config_.vehicle.gravity;
    home_ = state.position;
    home_.z() = 0.0;
    pos_ref_ = state.position;
    profile_alt_ = -state.position.z();
    descent_alt_ref_ = profile_alt_;

    switch (config_.mission.start) {
        case StartState::kGrounded:
            phase_ = FlightPhase::kGroundedPivotUp;
            break;
        case StartState::kHover:
            phase_ = FlightPhase::kHover;
            break;
        case StartState::kForward:
            phase_ = FlightPhase::kForward;
            att_ref_.pitch = euler(2);
            break;
    }
}

Vec3 FlightController::final_waypoint() const {
    return config_.mission.plan.waypoints.back().position;
}

Vec3 FlightController::active_segment_start() const {
    const auto& wps = config_.mission.plan.waypoints;
    const int i = std::clamp(wp_target_, 1, static_cast<int>(wps.size()) - 1);
    return wps[i - 1].position;
}

Vec3 FlightController::active_segment_end() const {
    const auto& wps = config_.mission.plan.waypoints;
    const int i = std::clamp(wp_target_, 1, static_cast<int>(wps.size()) - 1);
    return wps[i].position;
}

double FlightController::active_segment_speed() const {
    const auto& wps = config_.mission.plan.waypoints;
    const int i = std::clamp(wp_target_, 1, static_cast<int>(wps.size()) - 1);
    return wps[i].speed;
}

void FlightController::update_phase(const ControllerInputs& in) {
    const RigidBodyState& s = *in.state;
    const Vec3 euler = s.euler_zxy();
    PhaseInputs pi;
    pi.pitch = euler(2);
    pi.pitch_rate = s.omega.y();
    pi.airspeed = in.airspeed;
    pi.altitude = -s.position.z();
    pi.mission_transition_commanded = transition_commanded_;
    pi.resting_on_tail = in.resting_on_tail;
    pi.dist_to_final_wp = 1e9;
    if (config_.mission.type == MissionType::kCircuit &&
        !config_.mission.plan.waypoints.empty()) {
        const Vec3 d = s.position - final_waypoint();
        pi.dist_to_final_wp = std::hypot(d.x(), d.y());
        // Keep cruising until the last segment is the active one.
        if (wp_target_ + 1 < static_cast<int>(config_.mission.plan.waypoints.size())) {
            pi.dist_to_final_wp = 1e9;
        }
    }

    const FlightPhase next = flight_phase_update(phase_, pi, config_.thresholds);
    if (next != phase_) {
        phase_ = next;
        phase_entry_t_ = t_;
        if (next == FlightPhase::kTransitionToHover) {
            descending_ = false;
            descent_alt_ref_ = -final_waypoint().z();
        }
        if (next == FlightPhase::kHover) {
            pos_ref_ = s.position;
            profile_alt_ = -s.position.z();
        }
    }
}

void FlightController::update_vertical_profile(double dt) {
    const auto& legs = config_.mission.legs;
    if (legs.empty()) return;
    const MissionLeg& leg = legs[std::min<size_t>(leg_, legs.size() - 1)];
    const double target = leg.target_altitude;
    const double step = leg.rate * dt;
    if (std::abs(target - profile_alt_) <= step) {
        profile_alt_ = target;
        leg_hold_elapsed_ += dt;
        if (leg_hold_elapsed_ >= leg.hold_time &&
            leg_ + 1 < static_cast<int>(legs.size())) {
            ++leg_;
            leg_hold_elapsed_ = 0.0;
        }
    } else {
        profile_alt_ += std::copysign(step, target - profile_alt_);
    }
}

void FlightController::update_yaw_reference(const ControllerInputs& in, double dt) {
    const double max_step = config_.yaw_rate_max * dt;
    if (config_.mission.type != MissionType::kCircuit) return;

    const bool tracking = phase_ == FlightPhase::kTransitionToForward ||
                          phase_ == FlightPhase::kForward;
    const bool aligning = phase_ == FlightPhase::kHover;
    if (!tracking && !aligning) return;

    const Vec3 track = active_segment_end() - active_segment_start();
    const double track_heading = std::atan2(track.y(), track.x());
    // Coordinated flight: once moving, the nose follows the velocity course
    // and the bank curves the path; turning the nose onto the new track
    // directly would fly the wing sideways through every corner.
    double heading_target = track_heading;
    const RigidBodyState& s = *in.state;
    const double ground_speed = std::hypot(s.velocity.x(), s.velocity.y());
    if (phase_ == FlightPhase::kForward && ground_speed > 5.0) {
        heading_target = std::atan2(s.velocity.y(), s.velocity.x());
    }
    yaw_ref_base_ = slew_toward(yaw_ref_base_, heading_target, max_step);

    if (phase_ == FlightPhase::kForward) {
        const double lateral_airflow = -in.air_velocity_body.y();
        const double yaw_rate_cmd = std::clamp(
            sideslip_correction(lateral_airflow, in.airspeed, config_.sideslip_gain,
                                config_.sideslip_airspeed_gate),
            -config_.yaw_rate_max, config_.yaw_rate_max);
        sideslip_integral_ =
            std::clamp(sideslip_integral_ + yaw_rate_cmd * dt, -0.45, 0.45);
    }
    att_ref_.yaw = wrap_angle(yaw_ref_base_ + sideslip_integral_);
}

double FlightController::pitch_window_low(double t_in_phase,
                                          bool fast_regime) const {
    switch (phase_) {
        case FlightPhase::kHover:
            return -config_.hover_tilt_max;
        case FlightPhase::kTransitionToForward:
            return std::max(config_.forward_pitch_min,
                            -config_.transition_pitch_rate * t_in_phase);
        case FlightPhase::kForward:
            return config_.forward_pitch_min;
        case FlightPhase::kTransitionToHover:
            // Dive recovery stays available while wing-borne; once slow the
            // window closes onto the hover envelope.
            return fast_regime ? config_.forward_pitch_min
                               : -config_.hover_tilt_max;
        default:
            return -config_.hover_tilt_max;
    }
}

double FlightController::pitch_window_high(double airspeed) const {
    switch (phase_) {
        case FlightPhase::kForward:
            return config_.forward_pitch_max;
        case FlightPhase::kTransitionToHover: {
            // The pitch-up is paced by the airspeed bleed: holding lift as the
            // dynamic pressure drops raises the nose naturally, and the
            // ceiling keeps the braking wing from zooming.
            if (airspeed >= 14.0) return config_.forward_pitch_max;
            if (airspeed <= 5.0) return config_.hover_tilt_max;
            const double blend = (14.0 - airspeed) / 9.0;
            return config_.forward_pitch_max +
                   blend * (config_.hover_tilt_max - config_.forward_pitch_max);
        }
        default:
            return config_.hover_tilt_max;
    }
}

Vec3 FlightController::mission_accel_reference(const ControllerInputs& in) {
    const RigidBodyState& s = *in.state;
    const MissionSpec& mission = config_.mission;

    switch (phase_) {
        case FlightPhase::kHover: {
            if (mission.type == MissionType::kVertical ||
                mission.type == MissionType::kHold) {
                update_vertical_profile(outer_dt_);
                const MissionLeg* leg =
                    mission.legs.empty()
                        ? nullptr
                        : &mission.legs[std::min<size_t>(leg_, mission.legs.size() - 1)];
                pos_ref_ = home_;
                pos_ref_.z() = -profile_alt_;
                vel_ref_.setZero();
                if (leg != nullptr && profile_alt_ != leg->target_altitude) {
                    vel_ref_.z() =
                        -std::copysign(leg->rate, leg->target_altitude - profile_alt_);
                }
            } else if (mission.type == MissionType::kCircuit) {
                // Climb over the pad toward the first waypoint, settle, then
                // request the transition.
                const Vec3 wp0 = config_.mission.plan.waypoints.front().position;
                const double target_alt = -wp0.z();
                profile_alt_ = std::min(target_alt,
                                        profile_alt_ + mission.climb_rate * outer_dt_);
                pos_ref_ = Vec3{wp0.x(), wp0.y(), -profile_alt_};
                vel_ref_ = Vec3{0.0, 0.0, profile_alt_ < target_alt
                                              ? -mission.climb_rate
                                              : 0.0};
                const Vec3 track =
                    config_.mission.plan.waypoints[1].position - wp0;
                const double heading_err = wrap_angle(
                    std::atan2(track.y(), track.x()) - s.euler_zxy()(0));
                const bool on_station = (s.position - wp0).norm() < 2.0 &&
                                        s.velocity.norm() < 1.0 &&
                                        std::abs(heading_err) < 0.26;
                hover_settle_elapsed_ =
                    on_station ? hover_settle_elapsed_ + outer_dt_ : 0.0;
                if (hover_settle_elapsed_ >= mission.settle_time) {
                    transition_commanded_ = true;
                }
            } else {
                // Pivot-only mission: hold the upright rest position.
                pos_ref_ = home_;
                pos_ref_.z() = -config_.vehicle.pivot_l2;
                vel_ref_.setZero();
            }
            return pd_accel_reference(pos_ref_ - s.position, vel_ref_ - s.velocity,
                                      config_.pd);
        }
        case FlightPhase::kTransitionToForward:
        case FlightPhase::kForward: {
            const Vec3 seg_a = active_segment_start();
            const Vec3 seg_b = active_segment_end();
            // Corner anticipation: bleed speed toward the turn so the radius
            // shrinks and the path stays near the waypoint sphere. The last
            // segment keeps full speed; the deceleration phase owns its end.
            double speed_cmd = active_segment_speed();
            if (phase_ == FlightPhase::kForward &&
                wp_target_ + 1 < static_cast<int>(config_.mission.plan.waypoints.size())) {
                const double remaining = (seg_b - s.position).norm();
                const double corner_speed = 11.0;
                speed_cmd = std::min(
                    speed_cmd, std::sqrt(corner_speed * corner_speed +
                                         2.0 * 1.0 * std::max(0.0, remaining - 10.0)));
            }
            const Vec3 v_des = vector_field_velocity(s.position, seg_a, seg_b,
                                                     speed_cmd, config_.field);
            // Log the track projection as the position reference.
            const Vec3 tangent = (seg_b - seg_a).normalized();
            const Vec3 rel = s.position - seg_a;
            pos_ref_ = seg_a + tangent * tangent.dot(rel);
            vel_ref_ = v_des;
            Vec3 a_ref =
                pd_accel_reference(Vec3::Zero(), v_des - s.velocity, config_.pd);
            // Carve corners at speed: cap the along-track deceleration so a
            // segment switch banks the velocity around instead of braking the
            // wing out of its forward envelope.
            const double speed = s.velocity.norm();
            if (phase_ == FlightPhase::kForward && speed > 5.0) {
                const Vec3 v_hat = s.velocity / speed;
                const double along = a_ref.dot(v_hat);
                if (along < -config_.forward_brake_max) {
                    a_ref += (-config_.forward_brake_max - along) * v_hat;
                }
            }
            return a_ref;
        }
        case FlightPhase::kTransitionToHover: {
            const Vec3 wp = final_waypoint();
            const double speed = s.velocity.norm();
            if (!descending_ && speed < 4.0 &&
                (s.position - wp).head<2>().norm() < 8.0) {
                descending_ = true;
            }
            if (!descending_ && speed > 4.0) {
                // Deceleration profile toward the pad: approach speed shrinks
                // with the square root of the remaining distance, so the PD's
                // position term cannot command a full-speed charge. Excess
                // speed beyond the profile raises the brake pitch demand; the
                // airspeed-scheduled pitch ceiling paces the resulting
                // lift-braking.
                const Vec3 to_pad{wp.x() - s.position.x(), wp.y() - s.position.y(),
                                  0.0};
                const double dist = to_pad.norm();
                const double brake = 0.8 * config_.forward_brake_max;
                const double approach =
                    std::min(active_segment_speed(),
                             std::sqrt(2.0 * brake * std::max(0.0, dist - 4.0)));
                brake_pitch_ = std::clamp(0.12 * (speed - approach), 0.0, 1.4);
                // The braking wing zooms; keep the gained altitude (damp only
                // the climb rate) and give it back in the descent, otherwise
                // the altitude hold turns the zoom into a fresh dive.
                descent_alt_ref_ = std::max(descent_alt_ref_, -s.position.z());
                vel_ref_ = dist > 0.1 ? Vec3(approach * to_pad / dist) : Vec3::Zero();
                pos_ref_ = Vec3{wp.x(), wp.y(), -descent_alt_ref_};
                Vec3 pos_err = pos_ref_ - s.position;
                pos_err.head<2>().setZero();  // horizontal handled by velocity
                return pd_accel_reference(pos_err, vel_ref_ - s.velocity,
                                          config_.pd);
            }
            brake_pitch_ = 0.0;
            if (descending_) {
                // Brisk descent from altitude, gentle close to the ground.
                const double altitude = -s.position.z();
                double rate = mission.descent_rate;
                if (altitude > 12.0) {
                    rate *= 2.0;
                } else if (altitude < 3.0) {
                    rate *= 0.4;
                }
                descent_alt_ref_ =
                    std::max(0.05, descent_alt_ref_ - rate * outer_dt_);
                vel_ref_ = Vec3{0.0, 0.0, rate};
            } else {
                vel_ref_.setZero();
            }
            pos_ref_ = Vec3{wp.x(), wp.y(), -descent_alt_ref_};
            return pd_accel_reference(pos_ref_ - s.position, vel_ref_ - s.velocity,
                                      config_.pd);
        }
        default:
            pos_ref_ = s.position;
            vel_ref_.setZero();
            return Vec3::Zero();
    }
}

void FlightController::run_outer(const ControllerInputs& in) {
    const RigidBodyState& s = *in.state;
    const Vec3 accel_ref = mission_accel_reference(in);
    const Vec3 euler = s.euler_zxy();
    const Vec3 residual = accel_ref - in.accel_meas;

    // Channel routing around the incremental allocation. The specific-force
    // model has no wing in it, so raw three-axis residuals let the
    // horizontal-priority weighting conscript whatever channel shows a
    // nonzero column, starving the vertical axis. Each regime owns its axes:
    // slow flight banks/pitches for horizontal and throttles for vertical;
    // fast flight banks for lateral, throttles along the path, and pitches
    // for vertical. The allocator sees only the residuals of the axes its
    // increments own; the rest are neutralized at the measured value.
    double bank_ref = 0.0;
    double delta_pitch = 0.0;
    double delta_thrust = 0.0;
    bool coordinated_bank = false;

    // Wing-borne when there is real airflow over the chord; a slow downwind
    // drift belongs to the hover regime no matter the ground speed.
    const double ground_speed = std::hypot(s.velocity.x(), s.velocity.y());
    const bool fast_regime = (phase_ == FlightPhase::kForward ||
                              phase_ == FlightPhase::kTransitionToHover) &&
                             in.airspeed > 8.0 && ground_speed > 2.0;

    if (fast_regime) {
        coordinated_bank = true;
        const Vec3 course{s.velocity.x() / ground_speed,
                          s.velocity.y() / ground_speed, 0.0};
        const Vec3 starboard{-course.y(), course.x(), 0.0};
        bank_ref = std::atan2(accel_ref.dot(starboard), config_.vehicle.gravity);

        const Vec3 thrust_axis = -s.rotation.col(2);
        const double projection = std::max(0.3, thrust_axis.dot(course));
        delta_thrust = residual.dot(course) / projection;

        Vec3 vertical_only_ref = in.accel_meas;
        vertical_only_ref.z() = accel_ref.z();
        const OuterIncrements inc =
            outer_indi_step(in.accel_meas, vertical_only_ref, euler,
                            in.specific_thrust_0, config_.outer);
        delta_pitch = inc.delta_pitch;
        if (phase_ == FlightPhase::kTransitionToHover && brake_pitch_ > 0.0) {
            // Bleeding speed takes priority over the altitude hold; the zoom
            // energy is recovered on the descent. The step clamp keeps the
            // pitch-up jolt inside the actuators' authority.
            delta_pitch = std::max(delta_pitch, std::min(brake_pitch_, 0.15));
        }
    } else {
        Vec3 horizontal_only_ref = accel_ref;
        horizontal_only_ref.z() = in.accel_meas.z();
        const OuterIncrements inc =
            outer_indi_step(in.accel_meas, horizontal_only_ref, euler,
                            in.specific_thrust_0, config_.outer);
        bank_ref = euler(1) + inc.delta_roll;
        delta_pitch = inc.delta_pitch;
        // Vertical residual inverted through the thrust column -r3_z.
        const double vertical_gain = std::max(s.rotation(2, 2), 0.35);
        delta_thrust = -residual.z() / vertical_gain;
    }
    delta_thrust = std::clamp(delta_thrust, -config_.outer.thrust_step_max,
                              config_.outer.thrust_step_max);

    (void)coordinated_bank;
    att_ref_.roll = std::clamp(bank_ref, -config_.bank_max, config_.bank_max);
    att_ref_.pitch = std::clamp(euler(2) + delta_pitch,
                                pitch_window_low(t_ - phase_entry_t_, fast_regime),
                                pitch_window_high(in.airspeed));
    att_ref_.specific_thrust =
        std::clamp(in.specific_thrust_0 + delta_thrust,
                   config_.outer.specific_thrust_min,
                   config_.outer.specific_thrust_max);
    update_yaw_reference(in, outer_dt_);
}

ControllerOutputs FlightController::step(const ControllerInputs& in, bool outer_due) {
    t_ = in.t;
    const RigidBodyState& s = *in.state;
    update_phase(in);

    ControllerOutputs out;
    out.phase = phase_;
    out.leg = leg_;
    out.wp_total = static_cast<int>(config_.mission.plan.waypoints.size());

    // Waypoint accounting (circuit missions): a waypoint is reached the first
    // time the vehicle enters its acceptance sphere.
    if (config_.mission.type == MissionType::kCircuit && out.wp_total > 0) {
        const auto& wps = config_.mission.plan.waypoints;
        const double radius = config_.mission.plan.acceptance_radius;
        wp_hit_.resize(wps.size(), false);
        if ((s.position - wps.front().position).norm() <= radius) {
            wp_hit_[0] = true;
        }
        if (wp_target_ < out.wp_total) {
            if ((s.position - wps[wp_target_].position).norm() <= radius) {
                wp_hit_[wp_target_] = true;
                const bool in_track_phase = phase_ == FlightPhase::kForward ||
                                            phase_ == FlightPhase::kTransitionToForward;
                if (in_track_phase && wp_target_ + 1 < out.wp_total) {
                    ++wp_target_;
                }
            } else if (phase_ == FlightPhase::kForward &&
                       wp_target_ + 1 < out.wp_total) {
                // Passing abeam an intermediate waypoint advances the segment
                // (the miss stays recorded) instead of chasing the old line
                // forever.
                const Vec3 seg = active_segment_end() - active_segment_start();
                const Vec3 rel = s.position - active_segment_end();
                if (seg.dot(rel) > 0.0) {
                    ++wp_target_;
                }
            }
        }
    }
    out.wp_index = wp_target_;
    out.wp_hits = 0;
    for (const bool hit : wp_hit_) out.wp_hits += hit ? 1 : 0;

    const bool pivot_phase = phase_ == FlightPhase::kGroundedPivotUp ||
                             phase_ == FlightPhase::kPivotDown;

    if (pivot_phase) {
        const double t_in_phase = t_ - phase_entry_t_;
        PivotRamp ramp;
        ramp.rate = deg2rad(config_.pivot_ramp_deg_s);
        if (phase_ == FlightPhase::kGroundedPivotUp) {
            ramp.start = -kPi / 2.0;
            ramp.target = 0.0;
        } else {
            ramp.start = 0.0;
            ramp.target = -kPi / 2.0;
        }
        PivotState ps;
        ps.theta = s.euler_zxy()(2);
        ps.q = s.omega.y();
        ps.theta_d = ramp.theta_d(t_in_phase);
        ps.theta_dot_d = ramp.theta_dot_d(t_in_phase);

        out.command = pivot_step(ps, config_.pivot_gains, config_.vehicle);
        out.pivot_z = ps.z(config_.pivot_gains);
        out.pitch_ref = ps.theta_d;
        pos_ref_ = s.position;
        out.position_ref = pos_ref_;
        return out;
    }

    if (phase_ == FlightPhase::kLanded) {
        out.command = Vec6::Zero();
        out.position_ref = s.position;
        out.pitch_ref = s.euler_zxy()(2);
        return out;
    }

    if (outer_due) {
        run_outer(in);
    }

    IndiMeasurement meas;
    meas.omega_dot = in.omega_dot;
    meas.specific_thrust = in.specific_thrust_0;
    const IndiCommand cmd = indi_attitude_step(meas, *in.bank, s, in.airspeed,
                                               att_ref_, config_.attitude,
                                               config_.vehicle);
    out.command = cmd.u_c;
    out.nu = cmd.nu;
    out.position_ref = pos_ref_;
    out.pitch_ref = att_ref_.pitch;
    return out;
}

}  // namespace tre
