// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "tresim/types.hpp"

namespace tre {

/// Bounded weighted least-squares control allocation:
///
///   min  ||W_u (u - u_p)||^2 + gamma ||W_v (G u - nu)||^2
///   s.t. lower <= u <= upper
///
/// G maps actuators onto the control objective, u_p is the preferred input,
/// W_u / W_v are diagonal weights and gamma trades objective tracking against
/// staying near u_p.
struct AllocationProblem {
    Eigen::MatrixXd G;
    Eigen::VectorXd nu;
    Eigen::VectorXd u_p;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    Eigen::VectorXd w_u;  // diagonal of W_u
    Eigen::VectorXd w_v;  // diagonal of W_v
    double gamma{1.0e4};

    int num_actuators() const { return static_cast<int>(u_p.size()); }
    int num_objectives() const { return static_cast<int>(nu.size()); }
};

struct WlsSolution {
    Eigen::VectorXd u;
    int iterations{0};
    bool iteration_limit{false};  // best feasible iterate returned when set
};

/// Exact value of the allocation cost at u.
double allocation_cost(const AllocationProblem& problem, const Eigen::VectorXd& u);

/// Active-set solver on the stacked least-squares form. Starts from the
/// clamped preferred input, activates the blocking bound with the largest
/// violation on ties, and releases the active bound whose multiplier is most
/// negative. Deterministic: identical problems yield bitwise identical
/// solutions. The iteration cap defaults to twice the actuator count; on hit
/// the best feasible iterate is returned with `iteration_limit` set.
WlsSolution solve_wls(const AllocationProblem& problem, int max_iterations = -1);

}  // namespace tre
