#pragma once

#include <optional>

#include "autocam/planner/config.hpp"

namespace autocam {

// Camera-position cost
//
//   J = w_sm c_sm + w_dd q_dd c_dd + w_p q_p c_p + w_o q_o c_o
//
//   c_sm = |x - x_t|^2                         displacement since the last tick
//   c_dd = (|x - x_s| - d)^2                   distance to the subject
//   c_p  = (u . g - cos(beta))^2               u = unit(x_s - x), g = gravity
//   c_o  = |h - v_o|^2                         h = unit ground projection of u
//
// The pitch term compares the vertical component of the view with cos(beta),
// so beta = pi/2 asks for a level view and beta = 0 for a straight-down view.
// The heading term uses the normalized ground projection so that it constrains
// heading only; pitch is left to c_p.  The breakdown always carries the raw
// terms.  A disabled gate removes its term from J and from the gradient, and
// the orientation gate is ignored without a heading target (c_o is then 0).
//
// Throws DegenerateCandidate when the candidate coincides with the subject.
CostBreakdown cost(const Vec3& candidate, const PlanningContext& ctx, const PlannerConfig& cfg);

// Non-throwing variant: nullopt for a degenerate candidate.
std::optional<CostBreakdown> try_cost(const Vec3& candidate, const PlanningContext& ctx,
                                      const PlannerConfig& cfg);

// Analytic Cartesian gradient of J.
Vec3 cost_gradient(const Vec3& candidate, const PlanningContext& ctx, const PlannerConfig& cfg);

struct PolarCostGradient {
    double value{0.0};
    double d_theta{0.0};
    double d_psi{0.0};
    double d_r{0.0};
};

// J and its gradient in (theta, psi, R) about cfg.polar_origin.
std::optional<PolarCostGradient> polar_cost(const PolarCoord& c, const PlanningContext& ctx,
                                            const PlannerConfig& cfg);

// Pitch cost written with arccos(pi/2 - beta) in place of cos(beta):
// (u . g - arccos(pi/2 - beta))^2.  Kept only so tests can show why it is not
// used: arccos is undefined for beta < pi/2 - 1, which includes the high-angle
// target beta = 0, and the expression subtracts an angle from a cosine.
// Returns NaN where undefined.
double literal_pitch_cost(const Vec3& candidate, const Vec3& subject, double beta);

} // namespace autocam
