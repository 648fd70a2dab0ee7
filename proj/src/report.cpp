// SPDX-License-Identifier: Apache-2.0
#include "tresim/report.hpp"

#include <cmath>
#include <sstream>

#include "tresim/actuators.hpp"

namespace tre {

namespace {

void accumulate_duty(std::array<double, 6>& upper, std::array<double, 6>& lower,
                     std::uint32_t mask) {
    for (int i = 0; i < 6; ++i) {
        if (mask & (1u << i)) upper[i] += 1.0;
        if (mask & (1u << (6 + i))) lower[i] += 1.0;
    }
}

void finalize_duty(std::array<double, 6>& upper, std::array<double, 6>& lower,
                   std::int64_t steps) {
    if (steps == 0) return;
    for (int i = 0; i < 6; ++i) {
        upper[i] /= static_cast<double>(steps);
        lower[i] /= static_cast<double>(steps);
    }
}

bool is_pivot_phase(FlightPhase p) {
    return p == FlightPhase::kGroundedPivotUp || p == FlightPhase::kPivotDown ||
           p == FlightPhase::kLanded;
}

std::vector<double> split_numbers(const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

double class_duty(const LegStats& leg, const std::string& cls, bool lower_only) {
    double duty = 0.0;
    for (int i = 0; i < 6; ++i) {
        const bool match = cls == "any" || (cls == "tilt" && is_tilt(i)) ||
                           (cls == "thrust" && is_motor(i)) ||
                           (cls == "elevon" && is_elevon(i));
        if (!match) continue;
        duty = std::max(duty, leg.lower_duty[i]);
        if (!lower_only) duty = std::max(duty, leg.upper_duty[i]);
    }
    return duty;
}

const LegStats& leg_by_index(const RunReport& r, int idx) {
    for (const LegStats& leg : r.legs) {
        if (leg.leg == idx) return leg;
    }
    throw std::out_of_range("no telemetry for mission leg " +
                            std::to_string(idx));
}

}  // namespace

RunReport compute_report(const TelemetryLog& log) {
    RunReport r;
    if (log.rows.empty()) return r;
    r.duration = log.rows.back().t;
    r.diverged = log.divergence.has_value();
    r.divergence_step = r.diverged ? log.divergence->step : -1;
    r.waypoints_total = log.rows.back().wp_total;

    std::int64_t outside_pivot_steps = 0;
    std::int64_t outside_pivot_saturated = 0;
    std::int64_t saturated = 0;
    int last_hits = 0;

    for (const TelemetryRow& row : log.rows) {
        const double err = (row.position - row.position_ref).norm();

        if (r.phases.empty() || r.phases.back().phase != row.phase) {
            PhaseStats ps;
            ps.phase = row.phase;
            ps.entry_t = row.t;
            r.phases.push_back(ps);
            if (row.phase == FlightPhase::kHover && r.pivot_gate_time < 0.0 &&
                r.phases.size() > 1 &&
                r.phases[r.phases.size() - 2].phase == FlightPhase::kGroundedPivotUp) {
                r.pivot_gate_time = row.t;
            }
        }
        PhaseStats& ps = r.phases.back();
        ps.exit_t = row.t;
        ps.steps += 1;
        ps.mean_pos_error += err;
        ps.max_pos_error = std::max(ps.max_pos_error, err);
        accumulate_duty(ps.upper_duty, ps.lower_duty, row.saturation);

        if (r.legs.empty() || r.legs.back().leg != row.leg) {
            LegStats ls;
            ls.leg = row.leg;
            ls.start_t = row.t;
            r.legs.push_back(ls);
        }
        LegStats& ls = r.legs.back();
        ls.end_t = row.t;
        ls.steps += 1;
        ls.mean_pos_error += err;
        ls.max_pos_error = std::max(ls.max_pos_error, err);
        accumulate_duty(ls.upper_duty, ls.lower_duty, row.saturation);

        if (row.saturation != 0) ++saturated;
        if (!is_pivot_phase(row.phase)) {
            ++outside_pivot_steps;
            if (row.saturation != 0) ++outside_pivot_saturated;
        }
        if (row.wp_hits > last_hits) {
            for (int i = last_hits; i < row.wp_hits; ++i) {
                r.waypoints_reached.push_back({i, row.t});
            }
            last_hits = row.wp_hits;
        }
        r.max_pitch = std::max(r.max_pitch, row.pitch);
        r.wind_peak = std::max(r.wind_peak, row.wind.norm());
        const auto bucket = static_cast<size_t>(row.t);
        if (r.max_error_per_second.size() <= bucket) {
            r.max_error_per_second.resize(bucket + 1, 0.0);
        }
        r.max_error_per_second[bucket] =
            std::max(r.max_error_per_second[bucket], err);
    }

    for (PhaseStats& ps : r.phases) {
        ps.mean_pos_error /= static_cast<double>(ps.steps);
        finalize_duty(ps.upper_duty, ps.lower_duty, ps.steps);
    }
    for (LegStats& ls : r.legs) {
        ls.mean_pos_error /= static_cast<double>(ls.steps);
        finalize_duty(ls.upper_duty, ls.lower_duty, ls.steps);
    }
    r.sat_duty_any =
        static_cast<double>(saturated) / static_cast<double>(log.rows.size());
    r.sat_duty_outside_pivot =
        outside_pivot_steps == 0
            ? 0.0
            : static_cast<double>(outside_pivot_saturated) /
                  static_cast<double>(outside_pivot_steps);
    r.all_waypoints_hit = r.waypoints_total > 0 &&
                          static_cast<int>(r.waypoints_reached.size()) ==
                              r.waypoints_total;

    // ln E fit over the pivot-up phase (least squares on ln(z^2/2) vs t).
    double sum_t = 0.0, sum_y = 0.0, sum_tt = 0.0, sum_ty = 0.0;
    std::int64_t n = 0;
    for (const TelemetryRow& row : log.rows) {
        if (row.phase != FlightPhase::kGroundedPivotUp) continue;
        const double e = 0.5 * row.pivot_z * row.pivot_z;
        if (e < 1e-16) continue;
        const double y = std::log(e);
        sum_t += row.t;
        sum_y += y;
        sum_tt += row.t * row.t;
        sum_ty += row.t * y;
        ++n;
    }
    if (n >= 10) {
        const double denom = n * sum_tt - sum_t * sum_t;
        if (std::abs(denom) > 1e-12) {
            r.pivot_lyapunov_slope = (n * sum_ty - sum_t * sum_y) / denom;
            r.pivot_fit_valid = true;
        }
    }

    r.mission_complete = !r.diverged;
    return r;
}

std::string report_text(const RunReport& r) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(3);
    out << "duration: " << r.duration << " s"
        << (r.diverged ? "  [DIVERGED at step " + std::to_string(r.divergence_step) + "]"
                       : "")
        << "\n";
    out << "phases:\n";
    for (const PhaseStats& p : r.phases) {
        out << "  " << phase_name(p.phase) << ": t=[" << p.entry_t << ", " << p.exit_t
            << "] mean_err=" << p.mean_pos_error << " m max_err=" << p.max_pos_error
            << " m\n";
    }
    if (r.legs.size() > 1) {
        out << "legs:\n";
        for (const LegStats& l : r.legs) {
            out << "  leg " << l.leg << ": t=[" << l.start_t << ", " << l.end_t
                << "] mean_err=" << l.mean_pos_error << " m max_err=" << l.max_pos_error
                << " m elevon_lower_duty="
                << std::max(l.lower_duty[kElevonLeft], l.lower_duty[kElevonRight])
                << "\n";
        }
    }
    out << "waypoints: " << r.waypoints_reached.size() << "/" << r.waypoints_total
        << (r.all_waypoints_hit ? " (all reached)" : "") << "\n";
    out << "saturation duty: total=" << r.sat_duty_any
        << " outside_pivot=" << r.sat_duty_outside_pivot << "\n";
    if (r.pivot_gate_time >= 0.0) {
        out << "pivot gate time: " << r.pivot_gate_time << " s\n";
    }
    if (r.pivot_fit_valid) {
        out << "pivot ln-energy slope: " << r.pivot_lyapunov_slope << " 1/s\n";
    }
    out << "wind peak: " << r.wind_peak << " m/s\n";
    out << "mission complete: " << (r.mission_complete ? "yes" : "no") << "\n";
    return out.str();
}

std::string report_key_values(const RunReport& r) {
    std::ostringstream out;
    out.precision(17);
    out << "duration = " << r.duration << "\n";
    out << "diverged = " << (r.diverged ? 1 : 0) << "\n";
    out << "mission_complete = " << (r.mission_complete ? 1 : 0) << "\n";
    out << "waypoints_total = " << r.waypoints_total << "\n";
    out << "waypoints_reached = " << r.waypoints_reached.size() << "\n";
    out << "sat_duty_any = " << r.sat_duty_any << "\n";
    out << "sat_duty_outside_pivot = " << r.sat_duty_outside_pivot << "\n";
    out << "pivot_gate_time = " << r.pivot_gate_time << "\n";
    out << "pivot_lyapunov_slope = " << r.pivot_lyapunov_slope << "\n";
    out << "max_pitch = " << r.max_pitch << "\n";
    out << "wind_peak = " << r.wind_peak << "\n";
    for (const PhaseStats& p : r.phases) {
        const std::string k = std::string("phase.") + phase_name(p.phase);
        out << k << ".entry_t = " << p.entry_t << "\n";
        out << k << ".mean_err = " << p.mean_pos_error << "\n";
        out << k << ".max_err = " << p.max_pos_error << "\n";
    }
    for (const LegStats& l : r.legs) {
        const std::string k = "leg." + std::to_string(l.leg);
        out << k << ".mean_err = " << l.mean_pos_error << "\n";
        out << k << ".max_err = " << l.max_pos_error << "\n";
    }
    return out.str();
}

std::vector<AssertionResult> check_assertions(
    const RunReport& r,
    const std::vector<std::pair<std::string, std::string>>& assertions) {
    std::vector<AssertionResult> results;
    for (const auto& [key, value] : assertions) {
        AssertionResult res{key, "", false};
        try {
            if (key == "assert.phase_sequence") {
                std::string seen;
                for (const PhaseStats& p : r.phases) {
                    if (!seen.empty()) seen += ',';
                    seen += phase_name(p.phase);
                }
                res.passed = seen == value;
                res.detail = "observed " + seen;
            } else if (key == "assert.pivot_gate_time_max") {
                const double bound = std::stod(value);
                res.passed = r.pivot_gate_time >= 0.0 && r.pivot_gate_time <= bound;
                res.detail = "gate at " + std::to_string(r.pivot_gate_time) + " s";
            } else if (key == "assert.pitch_overshoot_deg_max") {
                const double bound = std::stod(value);
                res.passed = rad2deg(r.max_pitch) <= bound;
                res.detail = "max pitch " + std::to_string(rad2deg(r.max_pitch)) + " deg";
            } else if (key == "assert.all_waypoints_hit") {
                res.passed = r.all_waypoints_hit == (value == "1");
                res.detail = std::to_string(r.waypoints_reached.size()) + "/" +
                             std::to_string(r.waypoints_total);
            } else if (key == "assert.sat_outside_pivot_max") {
                const double bound = std::stod(value);
                res.passed = r.sat_duty_outside_pivot <= bound;
                res.detail = "duty " + std::to_string(r.sat_duty_outside_pivot);
            } else if (key == "assert.sat_any_max") {
                const double bound = std::stod(value);
                res.passed = r.sat_duty_any <= bound;
                res.detail = "duty " + std::to_string(r.sat_duty_any);
            } else if (key == "assert.settled_pos_error_max") {
                const auto v = split_numbers(value);
                double max_err = 0.0;
                for (size_t i = static_cast<size_t>(v[0]);
                     i < r.max_error_per_second.size(); ++i) {
                    max_err = std::max(max_err, r.max_error_per_second[i]);
                }
                res.passed = max_err <= v[1];
                res.detail = "max err " + std::to_string(max_err) + " m";
            } else if (key == "assert.leg_error_ratio_min" ||
                       key == "assert.leg_error_ratio_max") {
                const auto v = split_numbers(value);
                const LegStats& a = leg_by_index(r, static_cast<int>(v[0]));
                const LegStats& b = leg_by_index(r, static_cast<int>(v[1]));
                const double ratio = a.mean_pos_error / std::max(b.mean_pos_error, 1e-9);
                res.passed = key == "assert.leg_error_ratio_min" ? ratio >= v[2]
                                                                 : ratio <= v[2];
                res.detail = "ratio " + std::to_string(ratio);
            } else if (key == "assert.leg_lower_sat_min") {
                std::stringstream ss(value);
                std::string leg_s, cls, bound_s;
                std::getline(ss, leg_s, ',');
                std::getline(ss, cls, ',');
                std::getline(ss, bound_s, ',');
                const LegStats& leg = leg_by_index(r, std::stoi(leg_s));
                const double duty = class_duty(leg, cls, true);
                res.passed = duty >= std::stod(bound_s);
                res.detail = "duty " + std::to_string(duty);
            } else if (key == "assert.leg_sat_max") {
                std::stringstream ss(value);
                std::string leg_s, cls, bound_s;
                std::getline(ss, leg_s, ',');
                std::getline(ss, cls, ',');
                std::getline(ss, bound_s, ',');
                const LegStats& leg = leg_by_index(r, std::stoi(leg_s));
                const double duty = class_duty(leg, cls, false);
                res.passed = duty <= std::stod(bound_s);
                res.detail = "duty " + std::to_string(duty);
            } else if (key == "assert.wind_peak_range") {
                const auto v = split_numbers(value);
                res.passed = r.wind_peak >= v[0] && r.wind_peak <= v[1];
                res.detail = "peak " + std::to_string(r.wind_peak) + " m/s";
            } else if (key == "assert.mission_complete") {
                res.passed = r.mission_complete == (value == "1");
                res.detail = r.mission_complete ? "complete" : "incomplete";
            } else {
                res.detail = "unknown assertion";
            }
        } catch (const std::exception& e) {
            res.passed = false;
            res.detail = e.what();
        }
        results.push_back(res);
    }
    return results;
}

}  // namespace tre
