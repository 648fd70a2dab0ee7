// SPDX-License-Identifier: Apache-2.0
#include "tresim/wind.hpp"

#include <cmath>

namespace tre {

void WindModel::reset() {
    gust_.setZero();
    rng_.seed(seed);
    normal_.reset();
}

Vec3 WindModel::step(double dt) {
    if (gust_sigma.isZero()) return current();
    // Exact OU update: stationary variance sigma^2 regardless of dt.
    const double decay = std::exp(-dt / gust_correlation_time);
    const double excite = std::sqrt(1.0 - decay * decay);
    for (int i = 0; i < 3; ++i) {
        gust_(i) = decay * gust_(i) + excite * gust_sigma(i) * normal_(rng_);
    }
    return current();
}

}  // namespace tre
