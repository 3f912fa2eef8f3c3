#include "autocam/planner/cost.hpp"

#include <cmath>
#include <limits>

#include "autocam/errors.hpp"

namespace autocam {

namespace {

constexpr double kDegenerate = 1e-12;

bool orientation_active(const PlanningContext& ctx) {
    return ctx.gates.orientation && ctx.heading_target.has_value();
}

struct Terms {
    CostBreakdown c;
    Vec3 grad;
};

std::optional<Terms> evaluate(const Vec3& x, const PlanningContext& ctx, const PlannerConfig& cfg,
                              bool want_grad) {
    const CostWeights& w = cfg.weights;
    const Vec3 to_subject = ctx.subject - x;
    const double L = norm(to_subject);
    if (L < kDegenerate) return std::nullopt;

    Terms t{};
    const Vec3 step = x - ctx.current;
    t.c.smoothness = dot(step, step);
    if (want_grad) t.grad = step * (2.0 * w.smoothness);

    // Raw terms are always reported; gates act on J and its gradient.
    {
        const double e = L - ctx.desired_distance;
        t.c.distance = e * e;
        // dL/dx = -(x_s - x)/L
        if (want_grad && ctx.gates.distance) t.grad -= to_subject * (w.distance * 2.0 * e / L);
    }

    {
        const double f = -to_subject.z / L;  // u . g with g = (0, 0, -1)
        const double e = f - std::cos(ctx.pitch_target);
        t.c.pitch = e * e;
        if (want_grad && ctx.gates.pitch) {
            const Vec3 df = kWorldUp / L - to_subject * (to_subject.z / (L * L * L));
            t.grad += df * (w.pitch * 2.0 * e);
        }
    }

    const bool heading = orientation_active(ctx);
    if (ctx.heading_target) {
        const Vec3 v_o = *ctx.heading_target;
        const Vec3 h = ground(to_subject);
        const double hn = norm(h);
        if (hn < kDegenerate) {
            t.c.orientation = 2.0;
        } else {
            const Vec3 hu = h / hn;
            const double c = dot(hu, v_o);
            const Vec3 diff = hu - v_o;
            t.c.orientation = dot(diff, diff);
            if (want_grad && heading) t.grad += ground(v_o - hu * c) * (w.orientation * 2.0 / hn);
        }
    }

    t.c.total = w.smoothness * t.c.smoothness + (ctx.gates.distance ? w.distance * t.c.distance : 0.0) +
                (ctx.gates.pitch ? w.pitch * t.c.pitch : 0.0) + (heading ? w.orientation * t.c.orientation : 0.0);
    return t;
}

} // namespace

std::optional<CostBreakdown> try_cost(const Vec3& candidate, const PlanningContext& ctx,
                                      const PlannerConfig& cfg) {
    auto t = evaluate(candidate, ctx, cfg, false);
    if (!t) return std::nullopt;
    return t->c;
}

CostBreakdown cost(const Vec3& candidate, const PlanningContext& ctx, const PlannerConfig& cfg) {
    auto c = try_cost(candidate, ctx, cfg);
    if (!c) throw Error(ErrorCode::DegenerateCandidate, "candidate coincides with the subject");
    return *c;
}

Vec3 cost_gradient(const Vec3& candidate, const PlanningContext& ctx, const PlannerConfig& cfg) {
    auto t = evaluate(candidate, ctx, cfg, true);
    if (!t) throw Error(ErrorCode::DegenerateCandidate, "candidate coincides with the subject");
    return t->grad;
}

std::optional<PolarCostGradient> polar_cost(const PolarCoord& c, const PlanningContext& ctx,
                                            const PlannerConfig& cfg) {
    const Vec3 x = from_polar(c, cfg.polar_origin);
    auto t = evaluate(x, ctx, cfg, true);
    if (!t) return std::nullopt;
    const auto J = polar_jacobian(c);
    return PolarCostGradient{t->c.total, dot(t->grad, J[0]), dot(t->grad, J[1]), dot(t->grad, J[2])};
}

double literal_pitch_cost(const Vec3& candidate, const Vec3& subject, double beta) {
    const Vec3 u = normalized(subject - candidate);
    const double arg = std::numbers::pi / 2.0 - beta;
    if (arg < -1.0 || arg > 1.0) return std::numeric_limits<double>::quiet_NaN();
    const double e = dot(u, kGravityDir) - std::acos(arg);
    return e * e;
}

} // namespace autocam
