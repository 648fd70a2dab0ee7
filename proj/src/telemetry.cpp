// SPDX-License-Identifier: Apache-2.0
#include "tresim/telemetry.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace tre {

namespace {

constexpr const char* kHeader =
    "step,t,phase,leg,wp_index,wp_hits,wp_total,"
    "pn,pe,pd,vn,ve,vd,yaw,roll,pitch,wx,wy,wz,airspeed,"
    "ref_n,ref_e,ref_d,pitch_ref,pivot_z,"
    "nu_x,nu_y,nu_z,nu_tz,"
    "uc_tilt_l,uc_tilt_r,uc_thrust_l,uc_thrust_r,uc_elevon_l,uc_elevon_r,"
    "u0_tilt_l,u0_tilt_r,u0_thrust_l,u0_thrust_r,u0_elevon_l,u0_elevon_r,"
    "sat_mask,wind_n,wind_e,wind_d";

// Column count of the header above.
constexpr int kColumns = 45;

void append(std::string& line, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), ",%.17g", v);
    line += buf;
}

}  // namespace

const char* TelemetryLog::csv_header() { return kHeader; }

std::uint32_t saturation_mask(const Vec6& command, const Vec6& lower, const Vec6& upper) {
    std::uint32_t mask = 0;
    for (int i = 0; i < 6; ++i) {
        if (lower(i) == upper(i)) continue;
        if (command(i) == upper(i)) mask |= 1u << i;
        if (command(i) == lower(i)) mask |= 1u << (6 + i);
    }
    return mask;
}

void TelemetryLog::write_csv(std::ostream& out) const {
    out << kHeader << '\n';
    std::string line;
    for (const TelemetryRow& r : rows) {
        line.clear();
        char head[96];
        std::snprintf(head, sizeof(head), "%" PRId64, r.step);
        line += head;
        append(line, r.t);
        line += ',';
        line += phase_name(r.phase);
        std::snprintf(head, sizeof(head), ",%d,%d,%d,%d", r.leg, r.wp_index, r.wp_hits,
                      r.wp_total);
        line += head;
        for (int i = 0; i < 3; ++i) append(line, r.position(i));
        for (int i = 0; i < 3; ++i) append(line, r.velocity(i));
        append(line, r.yaw);
        append(line, r.roll);
        append(line, r.pitch);
        for (int i = 0; i < 3; ++i) append(line, r.omega(i));
        append(line, r.airspeed);
        for (int i = 0; i < 3; ++i) append(line, r.position_ref(i));
        append(line, r.pitch_ref);
        append(line, r.pivot_z);
        for (int i = 0; i < 4; ++i) append(line, r.nu(i));
        for (int i = 0; i < 6; ++i) append(line, r.command(i));
        for (int i = 0; i < 6; ++i) append(line, r.actuator(i));
        std::snprintf(head, sizeof(head), ",%u", r.saturation);
        line += head;
        for (int i = 0; i < 3; ++i) append(line, r.wind(i));
        line += '\n';
        out << line;
    }
    if (divergence) {
        out << "# diverged at step " << divergence->step << ": " << divergence->what
            << '\n';
    }
}

void TelemetryLog::write_csv_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_csv(out);
}

TelemetryLog TelemetryLog::read_csv(std::istream& in) {
    TelemetryLog log;
    std::string line;
    if (!std::getline(in, line) || line != kHeader) {
        throw FormatError("missing or mismatched telemetry header");
    }
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string tag = "# diverged at step ";
            if (line.rfind(tag, 0) == 0) {
                DivergenceInfo info;
                const auto colon = line.find(':');
                info.step = std::strtoll(line.c_str() + tag.size(), nullptr, 10);
                info.what = colon == std::string::npos ? "" : line.substr(colon + 2);
                log.divergence = info;
            }
            continue;
        }
        std::vector<std::string> fields;
        fields.reserve(kColumns);
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) fields.push_back(item);
        if (static_cast<int>(fields.size()) != kColumns) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(kColumns) + " columns, got " +
                              std::to_string(fields.size()));
        }
        TelemetryRow r;
        int k = 0;
        auto num = [&]() -> double {
            char* end = nullptr;
            const double v = std::strtod(fields[k].c_str(), &end);
            if (end == fields[k].c_str()) {
                throw FormatError("line " + std::to_string(line_no) +
                                  ": bad number '" + fields[k] + "'");
            }
            ++k;
            return v;
        };
        r.step = static_cast<std::int64_t>(num());
        r.t = num();
        r.phase = phase_from_name(fields[k++]);
        r.leg = static_cast<int>(num());
        r.wp_index = static_cast<int>(num());
        r.wp_hits = static_cast<int>(num());
        r.wp_total = static_cast<int>(num());
        for (int i = 0; i < 3; ++i) r.position(i) = num();
        for (int i = 0; i < 3; ++i) r.velocity(i) = num();
        r.yaw = num();
        r.roll = num();
        r.pitch = num();
        for (int i = 0; i < 3; ++i) r.omega(i) = num();
        r.airspeed = num();
        for (int i = 0; i < 3; ++i) r.position_ref(i) = num();
        r.pitch_ref = num();
        r.pivot_z = num();
        for (int i = 0; i < 4; ++i) r.nu(i) = num();
        for (int i = 0; i < 6; ++i) r.command(i) = num();
        for (int i = 0; i < 6; ++i) r.actuator(i) = num();
        r.saturation = static_cast<std::uint32_t>(num());
        for (int i = 0; i < 3; ++i) r.wind(i) = num();
        log.rows.push_back(r);
    }
    return log;
}

TelemetryLog TelemetryLog::read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_csv(in);
}

}  // namespace tre
