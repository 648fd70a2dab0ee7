// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tresim/types.hpp"

namespace tre {

/// Body-to-NED rotation for the ZXY Euler sequence: R = Rz(yaw)*Rx(roll)*Ry(pitch).
/// The sequence is singular at roll = +-90 deg, leaving the full pitch circle
/// usable for tailsitter flight.
Mat3 euler_zxy_to_rotation(double yaw, double roll, double pitch);

/// Extract [yaw, roll, pitch] from a body-to-NED rotation.
Vec3 rotation_to_euler_zxy(const Mat3& rotation);

/// Elementary right-handed rotations about the NED axes.
Mat3 rot_x(double angle);
Mat3 rot_y(double angle);
Mat3 rot_z(double angle);

/// Nearest orthonormal matrix (modified Gram-Schmidt on columns).
Mat3 orthonormalize(const Mat3& m);

Mat3 skew(const Vec3& v);

/// Rotation-vector error taking the current attitude onto the reference,
/// expressed in the body frame.
Vec3 attitude_error_vector(const Mat3& rotation, const Mat3& rotation_ref);

}  // namespace tre
