#include "autocam/planner/planner.hpp"

#include <cmath>
#include <limits>

#include "autocam/errors.hpp"
#include "autocam/planner/box_minimizer.hpp"
#include "autocam/planner/cost.hpp"
#include "autocam/planner/grid_oracle.hpp"

namespace autocam {

namespace {

using V3 = BoxVector<3>;

V3 to_vec(const PolarCoord& c) { return {c.theta, c.psi, c.R}; }
PolarCoord to_coord(const V3& v) { return {v[0], v[1], v[2]}; }

PlanningContext sanitized(const PlanningContext& ctx) {
    PlanningContext out = ctx;
    if (out.heading_target) {
        const Vec3 h = ground(*out.heading_target);
        if (norm(h) < 1e-12)
            out.heading_target.reset();
        else
            out.heading_target = normalized(h);
    }
    return out;
}

PolarCoord seed_from(const Vec3& x, const PlannerConfig& cfg) {
    if (norm(x - cfg.polar_origin) < 1e-12) {
        const PolarBounds& b = cfg.bounds;
        return b.clamp({0.5 * (b.theta_min + b.theta_max), 0.5 * (b.psi_min + b.psi_max),
                        0.5 * (b.r_min + b.r_max)});
    }
    return cfg.bounds.clamp(to_polar(x, cfg.polar_origin));
}

// Best point of a small grid spanning the box, used as a second start.
std::optional<PolarCoord> coarse_seed(const PlanningContext& ctx, const PlannerConfig& cfg) {
    const PolarBounds& b = cfg.bounds;
    const SolverOptions& s = cfg.solver;
    auto axis = [&](double lo, double hi, int n) {
        const GridAxis full = make_axis(lo, hi, b.margin, 1.0);
        if (n <= 1 || full.count == 1) return GridAxis{full.start, 0.0, 1};
        return GridAxis{full.start, ((hi - b.margin) - (lo + b.margin)) / (n - 1), static_cast<std::size_t>(n)};
    };
    const GridAxis th = axis(b.theta_min, b.theta_max, s.coarse_theta);
    const GridAxis ps = axis(b.psi_min, b.psi_max, s.coarse_psi);
    const GridAxis rr = axis(b.r_min, b.r_max, s.coarse_r);

    std::optional<PolarCoord> best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < th.count; ++i)
        for (std::size_t j = 0; j < ps.count; ++j)
            for (std::size_t k = 0; k < rr.count; ++k) {
                const PolarCoord c = b.clamp({th.at(i), ps.at(j), rr.at(k)});
                const auto cost = try_cost(from_polar(c, cfg.polar_origin), ctx, cfg);
                if (cost && cost->total < best_cost) {
                    best_cost = cost->total;
                    best = c;
                }
            }
    return best;
}

} // namespace

void PlannerConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw Error(ErrorCode::InvalidConfig, what);
    };
    require(weights.smoothness >= 0.0 && weights.distance >= 0.0 && weights.pitch >= 0.0 &&
                weights.orientation >= 0.0,
            "cost weights must be non-negative");
    bounds.validate();
    intrinsics.validate();
    require(tick_hz > 0.0, "tick_hz must be positive");
    require(solver.max_iterations > 0, "solver.max_iterations must be positive");
    require(orbit.distance > 0.0, "orbit.distance must be positive");
    require(orbit.arc > 0.0, "orbit.arc must be positive");
    require(orbit.waypoints >= 2, "orbit.waypoints must be >= 2");
}

PlanResult plan_next_position(const PlanningContext& raw_ctx, const PlannerConfig& cfg) {
    const PlanningContext ctx = sanitized(raw_ctx);
    const PolarBounds& b = cfg.bounds;
    const V3 lo{b.theta_min + b.margin, b.psi_min + b.margin, b.r_min + b.margin};
    const V3 hi{b.theta_max - b.margin, b.psi_max - b.margin, b.r_max - b.margin};

    BoxMinimizerOptions opt;
    opt.max_iterations = cfg.solver.max_iterations;
    opt.gradient_tolerance = cfg.solver.gradient_tolerance;
    opt.step_tolerance = cfg.solver.step_tolerance;

    const std::function<std::optional<ValueGradient<3>>(const V3&)> objective = [&](const V3& v) {
        const auto pc = polar_cost(to_coord(v), ctx, cfg);
        if (!pc) return std::optional<ValueGradient<3>>{};
        return std::optional<ValueGradient<3>>{ValueGradient<3>{pc->value, {pc->d_theta, pc->d_psi, pc->d_r}}};
    };

    const PolarCoord hold = seed_from(ctx.current, cfg);
    const auto hold_cost = try_cost(from_polar(hold, cfg.polar_origin), ctx, cfg);

    std::optional<BoxMinimum<3>> best = minimize_box<3>(objective, to_vec(hold), lo, hi, opt);
    int evaluations = best ? best->evaluations : 1;
    int iterations = best ? best->iterations : 0;
    if (cfg.solver.coarse_seed) {
        if (const auto seed = coarse_seed(ctx, cfg)) {
            auto alt = minimize_box<3>(objective, to_vec(*seed), lo, hi, opt);
            if (alt) {
                evaluations += alt->evaluations;
                iterations += alt->iterations;
                if (!best || alt->value < best->value) best = alt;
            }
        }
    }

    PlanResult out;
    out.iterations = iterations;
    out.evaluations = evaluations;
    if (!best || !std::isfinite(best->value) || (hold_cost && hold_cost->total < best->value)) {
        out.polar = hold;
        out.position = from_polar(hold, cfg.polar_origin);
        if (hold_cost) {
            out.cost = *hold_cost;
            out.converged = true;
        } else {
            out.solver_failure = true;
            out.diagnostic = "no finite cost in the workspace; holding position";
        }
        return out;
    }

    out.polar = b.clamp(to_coord(best->x));
    out.position = from_polar(out.polar, cfg.polar_origin);
    out.cost = cost(out.position, ctx, cfg);
    out.converged = best->converged;
    if (!best->converged) out.diagnostic = "iteration limit reached";
    return out;
}

} // namespace autocam
