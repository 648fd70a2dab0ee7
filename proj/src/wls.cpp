// SPDX-License-Identifier: Apache-2.0
#include "tresim/wls.hpp"

#include <cmath>
#include <vector>

namespace tre {

double allocation_cost(const AllocationProblem& p, const Eigen::VectorXd& u) {
    const Eigen::VectorXd input_term = p.w_u.cwiseProduct(u - p.u_p);
    const Eigen::VectorXd objective_term = p.w_v.cwiseProduct(p.G * u - p.nu);
    return input_term.squaredNorm() + p.gamma * objective_term.squaredNorm();
}

namespace {

// Stacked least-squares data: ||A u - b||^2 == C(u).
struct Stacked {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
};

Stacked stack(const AllocationProblem& p) {
    const int n = p.num_actuators();
    const int m = p.num_objectives();
    const double sg = std::sqrt(p.gamma);
    Stacked s;
    s.A.resize(m + n, n);
    s.A.topRows(m) = sg * p.w_v.asDiagonal() * p.G;
    s.A.bottomRows(n) = Eigen::MatrixXd(p.w_u.asDiagonal());
    s.b.resize(m + n);
    s.b.head(m) = sg * p.w_v.cwiseProduct(p.nu);
    s.b.tail(n) = p.w_u.cwiseProduct(p.u_p);
    return s;
}

enum BoundState : int { kFree = 0, kAtLower = -1, kAtUpper = 1 };

}  // namespace

WlsSolution solve_wls(const AllocationProblem& p, int max_iterations) {
    const int n = p.num_actuators();
    if (p.G.cols() != n || p.G.rows() != p.num_objectives() ||
        p.lower.size() != n || p.upper.size() != n || p.w_u.size() != n ||
        p.w_v.size() != p.num_objectives()) {
        throw std::invalid_argument("solve_wls: inconsistent problem dimensions");
    }
    if (max_iterations < 0) max_iterations = 2 * n;

    const Stacked s = stack(p);

    WlsSolution sol;
    sol.u = p.u_p.cwiseMax(p.lower).cwiseMin(p.upper);
    std::vector<int> bound(n, kFree);
    for (int i = 0; i < n; ++i) {
        if (sol.u(i) == p.lower(i)) {
            bound[i] = kAtLower;
        } else if (sol.u(i) == p.upper(i)) {
            bound[i] = kAtUpper;
        }
    }

    // Fallback for the iteration cap: the cheapest feasible iterate seen.
    Eigen::VectorXd best_u = sol.u;
    double best_cost = allocation_cost(p, sol.u);

    Eigen::VectorXd direction(n);
    while (sol.iterations < max_iterations) {
        ++sol.iterations;

        std::vector<int> free_idx;
        free_idx.reserve(n);
        for (int i = 0; i < n; ++i) {
            if (bound[i] == kFree) free_idx.push_back(i);
        }

        direction.setZero();
        if (!free_idx.empty()) {
            const Eigen::VectorXd residual = s.b - s.A * sol.u;
            Eigen::MatrixXd a_free(s.A.rows(), free_idx.size());
            for (size_t k = 0; k < free_idx.size(); ++k) {
                a_free.col(k) = s.A.col(free_idx[k]);
            }
            const Eigen::VectorXd d_free =
                a_free.colPivHouseholderQr().solve(residual);
            for (size_t k = 0; k < free_idx.size(); ++k) {
                direction(free_idx[k]) = d_free(k);
            }
        }

        // Longest feasible step along the free-variable direction.
        double alpha = 1.0;
        for (int i : free_idx) {
            if (direction(i) > 0.0 && sol.u(i) + direction(i) > p.upper(i)) {
                alpha = std::min(alpha, (p.upper(i) - sol.u(i)) / direction(i));
            } else if (direction(i) < 0.0 && sol.u(i) + direction(i) < p.lower(i)) {
                alpha = std::min(alpha, (p.lower(i) - sol.u(i)) / direction(i));
            }
        }

        if (alpha < 1.0) {
            // Blocked step: activate the coordinate that reached its bound,
            // taking the largest full-step violation when several tie.
            sol.u += alpha * direction;
            int blocking = -1;
            int blocking_side = kFree;
            double worst_violation = 0.0;
            for (int i : free_idx) {
                const double full = sol.u(i) + (1.0 - alpha) * direction(i);
                double violation = 0.0;
                int side = kFree;
                if (full > p.upper(i)) {
                    violation = full - p.upper(i);
                    side = kAtUpper;
                } else if (full < p.lower(i)) {
                    violation = p.lower(i) - full;
                    side = kAtLower;
                }
                if (side == kFree) continue;
                const double at = side == kAtUpper ? p.upper(i) : p.lower(i);
                const bool reached = std::abs(sol.u(i) - at) <= 1e-12 * (1.0 + std::abs(at));
                if (reached && violation > worst_violation) {
                    worst_violation = violation;
                    blocking = i;
                    blocking_side = side;
                }
            }
            if (blocking >= 0) {
                bound[blocking] = blocking_side;
                sol.u(blocking) =
                    blocking_side == kAtUpper ? p.upper(blocking) : p.lower(blocking);
            }
            continue;
        }

        sol.u += direction;
        const double cost = allocation_cost(p, sol.u);
        if (cost < best_cost) {
            best_cost = cost;
            best_u = sol.u;
        }

        // KKT check on the active bounds: at a lower bound the cost gradient
        // must point up (>= 0), at an upper bound down (<= 0). Pinned
        // coordinates (lower == upper) are never released.
        const Eigen::VectorXd gradient = 2.0 * s.A.transpose() * (s.A * sol.u - s.b);
        const double tol = 1e-10 * (1.0 + gradient.lpNorm<Eigen::Infinity>());
        int release = -1;
        double worst = tol;
        for (int i = 0; i < n; ++i) {
            if (bound[i] == kFree || p.lower(i) == p.upper(i)) continue;
            const double violation = bound[i] == kAtLower ? -gradient(i) : gradient(i);
            if (violation > worst) {
                worst = violation;
                release = i;
            }
        }
        if (release < 0) {
            return sol;  // optimal
        }
        bound[release] = kFree;
    }

    sol.iteration_limit = true;
    sol.u = sol.u.cwiseMax(p.lower).cwiseMin(p.upper);
    if (allocation_cost(p, sol.u) > best_cost) {
        sol.u = best_u;
    }
    return sol;
}

}  // namespace tre
