#pragma once

#include <cstddef>
#include <numbers>

#include "autocam/planner/config.hpp"

namespace autocam {

struct GridResolution {
    double theta{std::numbers::pi / 180.0};
    double psi{std::numbers::pi / 180.0};
    double r{0.01};
};

struct GridAxis {
    double start{0.0};
    double step{0.0};
    std::size_t count{1};

    double at(std::size_t i) const { return start + step * static_cast<double>(i); }
};

// Samples [lo + margin, hi - margin] every `step`; a box thinner than twice the
// margin collapses to its midpoint.
GridAxis make_axis(double lo, double hi, double margin, double step);

struct PolarGrid {
    GridAxis theta, psi, r;

    std::size_t size() const { return theta.count * psi.count * r.count; }
};

inline constexpr std::size_t kMaxGridPoints = 10'000'000;

// Throws GridTooLarge above kMaxGridPoints and InvalidConfig for non-positive steps.
PolarGrid make_grid(const PolarBounds& bounds, const GridResolution& res);

struct GridResult {
    Vec3 position;
    PolarCoord polar;
    CostBreakdown cost;
    std::size_t points{0};
    bool found{false};
};

// Exhaustive argmin of J over the polar grid.  Ties go to the lexicographically
// smallest (theta, psi, R) index, so both versions return identical results.
GridResult grid_oracle(const PlanningContext& ctx, const PlannerConfig& cfg,
                       const GridResolution& res = {});

// Single-threaded reference implementation of grid_oracle.
GridResult grid_oracle_serial(const PlanningContext& ctx, const PlannerConfig& cfg,
                              const GridResolution& res = {});

} // namespace autocam
