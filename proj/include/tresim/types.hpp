// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace tre {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;

/// 4x6 map from actuator increments to [roll accel, pitch accel, yaw accel, T_Z].
using EffectivenessMatrix = Eigen::Matrix<double, 4, 6>;

constexpr double kPi = 3.14159265358979323846;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Physical constants and geometry of the airframe.
///
/// Frame conventions used throughout: NED inertial frame, right-handed body
/// frame with y_b out the right wing tip and z_b from nose to tail, so the
/// rotors thrust along -z_b at zero tilt and the wing's upper surface faces
/// -x_b. Zero attitude is the upright hover posture; forward flight sits at
/// pitch -90 deg.
struct VehicleParams {
    double mass{0.489};        // kg
    double gravity{9.81};      // m/s^2
    Vec3 inertia_diag{0.0035, 0.0021, 0.0055};  // kg m^2, body axes
    double pivot_inertia{0.0};  // I'_yy about the tail contact line; 0 = derive
    double arm_b{0.14};         // m, CG to tilt axis along y_b (per rotor)
    double arm_l{0.05};         // m, CG to tilt axis along z_b
    double pivot_l1{0.13};      // m, tilt axis to tail pivot line
    double pivot_l2{0.10};      // m, CG to tail pivot line
    double deflection_max{deg2rad(63.0)};  // rad, tilt and elevon limit
    double thrust_max{8.56};    // N per motor
    double tau_servo{0.00325};  // s
    double tau_motor{0.00707};  // s
    double servo_rate_limit{12.54};  // rad/s

    /// I'_yy: explicit override if set, otherwise parallel-axis transfer of
    /// I_yy to the tail line.
    double pivot_inertia_yy() const {
        if (pivot_inertia > 0.0) return pivot_inertia;
        return inertia_diag.y() + mass * pivot_l2 * pivot_l2;
    }

    double weight() const { return mass * gravity; }

    void validate() const;
};

/// Rigid-body state in NED with cached body-to-NED rotation.
struct RigidBodyState {
    Vec3 position{Vec3::Zero()};   // m, NED
    Vec3 velocity{Vec3::Zero()};   // m/s, NED
    Mat3 rotation{Mat3::Identity()};  // body -> NED
    Vec3 omega{Vec3::Zero()};      // rad/s, body rates [p, q, r]

    Vec3 euler_zxy() const;        // [yaw, roll, pitch]
    double pitch() const { return euler_zxy()(2); }
};

class DegenerateEffectiveness : public std::runtime_error {
  public:
    explicit DegenerateEffectiveness(const std::string& what)
        : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public ConfigError {
  public:
    ParseError(const std::string& what, int line)
        : ConfigError(what + " (line " + std::to_string(line) + ")"),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

class ValidationError : public ConfigError {
  public:
    ValidationError(const std::string& key, const std::string& what)
        : ConfigError("invalid value for '" + key + "': " + what), key_(key) {}
    const std::string& key() const { return key_; }

  private:
    std::string key_;
};

}  // namespace tre
