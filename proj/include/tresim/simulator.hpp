// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tresim/scenario.hpp"
#include "tresim/telemetry.hpp"
#include "tresim/types.hpp"

namespace tre {

/// Run the configured mission through the fixed-order loop
/// sense -> outer -> inner -> allocate -> actuate -> integrate.
/// Deterministic for a given config and seed. On numerical divergence the
/// partial log is returned with the divergence record set.
TelemetryLog simulate_scenario(const ScenarioConfig& config);

}  // namespace tre
