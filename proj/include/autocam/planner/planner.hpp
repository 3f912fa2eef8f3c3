#pragma once

#include <string>

#include "autocam/planner/config.hpp"

namespace autocam {

struct PlanResult {
    Vec3 position;
    PolarCoord polar;
    CostBreakdown cost;
    int iterations{0};
    int evaluations{0};
    bool converged{false};
    // Set when no finite solution was found; position then holds the clamped x_t.
    bool solver_failure{false};
    std::string diagnostic;
};

// Minimizes J over the polar box, starting from the clamped current position
// (and, when enabled, from the best point of a coarse grid).  Never returns a
// point with a higher cost than the clamped current position.
PlanResult plan_next_position(const PlanningContext& ctx, const PlannerConfig& cfg);

} // namespace autocam
