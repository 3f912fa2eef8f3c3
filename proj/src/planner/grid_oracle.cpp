#include "autocam/planner/grid_oracle.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

#include "autocam/errors.hpp"
#include "autocam/planner/cost.hpp"

namespace autocam {

namespace {

struct Best {
    double cost{std::numeric_limits<double>::infinity()};
    std::size_t index{std::numeric_limits<std::size_t>::max()};

    void offer(double c, std::size_t i) {
        if (c < cost || (c == cost && i < index)) {
            cost = c;
            index = i;
        }
    }
};

PolarCoord grid_point(const PolarGrid& g, std::size_t flat) {
    const std::size_t ir = flat % g.r.count;
    const std::size_t ip = (flat / g.r.count) % g.psi.count;
    const std::size_t it = flat / (g.r.count * g.psi.count);
    return PolarCoord{g.theta.at(it), g.psi.at(ip), g.r.at(ir)};
}

double cost_at(const PolarGrid& g, std::size_t flat, const PlanningContext& ctx, const PlannerConfig& cfg) {
    const auto c = try_cost(from_polar(grid_point(g, flat), cfg.polar_origin), ctx, cfg);
    return c ? c->total : std::numeric_limits<double>::infinity();
}

GridResult finish(const PolarGrid& g, const Best& best, const PlanningContext& ctx, const PlannerConfig& cfg) {
    GridResult out;
    out.points = g.size();
    if (best.index == std::numeric_limits<std::size_t>::max()) return out;
    out.found = true;
    out.polar = grid_point(g, best.index);
    out.position = from_polar(out.polar, cfg.polar_origin);
    out.cost = cost(out.position, ctx, cfg);
    return out;
}

} // namespace

GridAxis make_axis(double lo, double hi, double margin, double step) {
    const double a = lo + margin;
    const double b = hi - margin;
    if (a > b) return GridAxis{0.5 * (lo + hi), step, 1};
    return GridAxis{a, step, static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1};
}

PolarGrid make_grid(const PolarBounds& bounds, const GridResolution& res) {
    if (!(res.theta > 0.0 && res.psi > 0.0 && res.r > 0.0))
        throw Error(ErrorCode::InvalidConfig, "grid resolution must be positive");
    PolarGrid g{make_axis(bounds.theta_min, bounds.theta_max, bounds.margin, res.theta),
                make_axis(bounds.psi_min, bounds.psi_max, bounds.margin, res.psi),
                make_axis(bounds.r_min, bounds.r_max, bounds.margin, res.r)};
    const double total = static_cast<double>(g.theta.count) * static_cast<double>(g.psi.count) *
                         static_cast<double>(g.r.count);
    if (total > static_cast<double>(kMaxGridPoints))
        throw Error(ErrorCode::GridTooLarge, std::to_string(static_cast<long long>(total)) + " grid points");
    return g;
}

GridResult grid_oracle_serial(const PlanningContext& ctx, const PlannerConfig& cfg, const GridResolution& res) {
    const PolarGrid g = make_grid(cfg.bounds, res);
    Best best;
    for (std::size_t i = 0; i < g.size(); ++i) best.offer(cost_at(g, i, ctx, cfg), i);
    return finish(g, best, ctx, cfg);
}

GridResult grid_oracle(const PlanningContext& ctx, const PlannerConfig& cfg, const GridResolution& res) {
    const PolarGrid g = make_grid(cfg.bounds, res);
    const auto n = static_cast<long long>(g.size());
    Best best;
    #pragma omp parallel
    {
        Best local;
        #pragma omp for schedule(static)
        for (long long i = 0; i < n; ++i)
            local.offer(cost_at(g, static_cast<std::size_t>(i), ctx, cfg), static_cast<std::size_t>(i));
        #pragma omp critical
        best.offer(local.cost, local.index);
    }
    return finish(g, best, ctx, cfg);
}

} // namespace autocam
