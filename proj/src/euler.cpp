// SPDX-License-Identifier: Apache-2.0
#include "tresim/euler.hpp"

#include <cmath>

namespace tre {

Mat3 rot_x(double a) {
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << 1, 0, 0,
         0, c, -s,
         0, s, c;
    return m;
}

Mat3 rot_y(double a) {
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << c, 0, s,
         0, 1, 0,
         -s, 0, c;
    return m;
}

Mat3 rot_z(double a) {
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << c, -s, 0,
         s, c, 0,
         0, 0, 1;
    return m;
}

Mat3 euler_zxy_to_rotation(double yaw, double roll, double pitch) {
    return rot_z(yaw) * rot_x(roll) * rot_y(pitch);
}

Vec3 rotation_to_euler_zxy(const Mat3& r) {
    // R = Rz(psi) Rx(phi) Ry(theta):
    //   r(2,1) = sin(phi)
    //   r(2,0) = -cos(phi) sin(theta),  r(2,2) = cos(phi) cos(theta)
    //   r(0,1) = -sin(psi) cos(phi),    r(1,1) = cos(psi) cos(phi)
    const double sphi = std::clamp(r(2, 1), -1.0, 1.0);
    const double roll = std::asin(sphi);
    const double pitch = std::atan2(-r(2, 0), r(2, 2));
    const double yaw = std::atan2(-r(0, 1), r(1, 1));
    return {yaw, roll, pitch};
}

Mat3 orthonormalize(const Mat3& m) {
    Mat3 q;
    q.col(0) = m.col(0).normalized();
    q.col(1) = (m.col(1) - q.col(0) * q.col(0).dot(m.col(1))).normalized();
    q.col(2) = q.col(0).cross(q.col(1));
    return q;
}

Mat3 skew(const Vec3& v) {
    Mat3 m;
    m << 0, -v.z(), v.y(),
         v.z(), 0, -v.x(),
         -v.y(), v.x(), 0;
    return m;
}

Vec3 attitude_error_vector(const Mat3& rotation, const Mat3& rotation_ref) {
    const Mat3 e = rotation.transpose() * rotation_ref;
    const double trace = std::clamp(e.trace(), -1.0, 3.0);
    const double angle = std::acos(std::clamp((trace - 1.0) / 2.0, -1.0, 1.0));
    Vec3 axis{e(2, 1) - e(1, 2), e(0, 2) - e(2, 0), e(1, 0) - e(0, 1)};
    if (angle < 1e-9) {
        return 0.5 * axis;  // small-angle limit of axis*angle/(2 sin angle)
    }
    const double s = std::sin(angle);
    if (s < 1e-9) {
        // Near 180 deg: fall back to the dominant diagonal column.
        Eigen::Index k;
        e.diagonal().maxCoeff(&k);
        Vec3 v = e.col(k);
        v(k) += 1.0;
        return angle * v.normalized();
    }
    return axis * (angle / (2.0 * s));
}

Vec3 RigidBodyState::euler_zxy() const { return rotation_to_euler_zxy(rotation); }

void VehicleParams::validate() const {
    if (!(mass > 0.0)) throw ValidationError("vehicle.mass", "must be > 0");
    if (!(gravity > 0.0)) throw ValidationError("vehicle.gravity", "must be > 0");
    if (!(inertia_diag.minCoeff() > 0.0))
        throw ValidationError("vehicle.inertia", "diagonals must be > 0");
    if (!(pivot_inertia_yy() > 0.0))
        throw ValidationError("vehicle.pivot_inertia", "must be > 0");
    if (!(pivot_l1 > pivot_l2 && pivot_l2 > 0.0))
        throw ValidationError("vehicle.pivot_l1", "requires l1 > l2 > 0");
    if (!(deflection_max > 0.0 && deflection_max < kPi))
        throw ValidationError("vehicle.deflection_max", "must be in (0, pi)");
    if (!(thrust_max > 0.0))
        throw ValidationError("vehicle.thrust_max", "must be > 0");
    if (!(tau_servo > 0.0 && tau_motor > 0.0))
        throw ValidationError("vehicle.tau", "time constants must be > 0");
    if (!(servo_rate_limit > 0.0))
        throw ValidationError("vehicle.servo_rate_limit", "must be > 0");
}

}  // namespace tre
