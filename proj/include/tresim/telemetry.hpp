// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tresim/guidance.hpp"
#include "tresim/types.hpp"

namespace tre {

class FormatError : public std::runtime_error {
  public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// One control step of recorded outputs. Saturation mask: bit i set when
/// command i sits at its upper bound, bit 6+i at its lower bound; pinned
/// actuators (equal bounds) never flag.
struct TelemetryRow {
    std::int64_t step{0};
    double t{0.0};
    FlightPhase phase{FlightPhase::kGroundedPivotUp};
    int leg{0};
    int wp_index{0};
    int wp_hits{0};
    int wp_total{0};
    Vec3 position{Vec3::Zero()};
    Vec3 velocity{Vec3::Zero()};
    double yaw{0.0}, roll{0.0}, pitch{0.0};
    Vec3 omega{Vec3::Zero()};
    double airspeed{0.0};
    Vec3 position_ref{Vec3::Zero()};
    double pitch_ref{0.0};
    double pivot_z{0.0};
    Vec4 nu{Vec4::Zero()};
    Vec6 command{Vec6::Zero()};
    Vec6 actuator{Vec6::Zero()};
    std::uint32_t saturation{0};
    Vec3 wind{Vec3::Zero()};

    bool operator==(const TelemetryRow&) const = default;
};

struct DivergenceInfo {
    std::int64_t step;
    std::string what;

    bool operator==(const DivergenceInfo&) const = default;
};

struct TelemetryLog {
    std::vector<TelemetryRow> rows;
    std::optional<DivergenceInfo> divergence;

    static const char* csv_header();
    void write_csv(std::ostream& out) const;
    void write_csv_file(const std::string& path) const;
    static TelemetryLog read_csv(std::istream& in);
    static TelemetryLog read_csv_file(const std::string& path);

    bool operator==(const TelemetryLog&) const = default;
};

std::uint32_t saturation_mask(const Vec6& command, const Vec6& lower, const Vec6& upper);

}  // namespace tre
