// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "tresim/types.hpp"

namespace tre {

/// Constant wind plus first-order colored (Ornstein-Uhlenbeck) gusts per NED
/// axis. Deterministic for a given seed.
struct WindModel {
    Vec3 mean{Vec3::Zero()};              // m/s NED
    Vec3 gust_sigma{Vec3::Zero()};        // m/s stationary std dev per axis
    double gust_correlation_time{2.0};    // s
    std::uint64_t seed{0};

    void reset();
    Vec3 step(double dt);
    Vec3 current() const { return mean + gust_; }

  private:
    Vec3 gust_{Vec3::Zero()};
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace tre
