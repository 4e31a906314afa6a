#pragma once

#include "teleped/scenario.hpp"
#include "teleped/trace.hpp"

namespace teleped {

/// Runs one scripted bilateral scenario to completion and returns the full
/// per-step trace.  The update order within a step is fixed — left platform,
/// right platform, left arm, right arm, object — and every operation is
/// sequential and allocation-stable, so identical configs produce identical
/// traces bit for bit.
///
/// Force reflection closes over the previous step: the force each arm
/// exerted on the environment during step k is scaled, mirrored and rendered
/// at the master during step k+1 (plus any configured channel delay).
SimTrace run_scenario(const ScenarioConfig& config);

}  // namespace teleped
