#include "autocam/planner/orbit.hpp"

#include <cmath>

#include "autocam/errors.hpp"

namespace autocam {

namespace {

Vec3 raw_point(const Vec3& center, double azimuth, double radius, double height) {
    return center + Vec3{radius * std::cos(azimuth), radius * std::sin(azimuth), height};
}

struct ClampResult {
    Vec3 position;
    bool clamped{false};
};

ClampResult clamp_into(const Vec3& p, const PlannerConfig& cfg) {
    if (norm(p - cfg.polar_origin) < 1e-12) {
        const PolarCoord c = cfg.bounds.clamp({0.0, 0.0, cfg.bounds.r_min});
        return {from_polar(c, cfg.polar_origin), true};
    }
    const PolarCoord c = to_polar(p, cfg.polar_origin);
    if (cfg.bounds.contains(c)) return {p, false};
    return {from_polar(cfg.bounds.clamp(c), cfg.polar_origin), true};
}

} // namespace

OrbitPlan orbit_waypoints(const Vec3& center, const Vec3& current_camera, const PlannerConfig& cfg) {
    const OrbitConfig& oc = cfg.orbit;
    OrbitPlan plan;
    plan.center = center;
    if (oc.pitch_mode == OrbitPitchMode::Elevation) {
        plan.horizontal_radius = oc.distance * std::cos(oc.pitch);
        plan.height = oc.distance * std::sin(oc.pitch);
    } else {
        plan.horizontal_radius = oc.distance * std::sin(oc.pitch);
        plan.height = oc.distance * std::cos(oc.pitch);
    }
    const Vec3 offset = ground(current_camera - center);
    plan.start_azimuth = norm(offset) < 1e-12 ? 0.0 : std::atan2(offset.y, offset.x);

    const int n = oc.waypoints;
    auto count_clamped = [&](double dir) {
        int clamped = 0;
        for (int k = 0; k < n; ++k) {
            const double a = plan.start_azimuth + dir * oc.arc * k / (n - 1);
            clamped += clamp_into(raw_point(center, a, plan.horizontal_radius, plan.height), cfg).clamped;
        }
        return clamped;
    };
    const int ccw = count_clamped(1.0);
    const int cw = count_clamped(-1.0);
    plan.direction = cw < ccw ? -1.0 : 1.0;
    plan.clamped = std::min(ccw, cw);
    if (plan.clamped == n)
        throw Error(ErrorCode::UnreachableOrbit, "every orbit waypoint lies outside the workspace");

    Vec3 up = kWorldUp;
    for (int k = 0; k < n; ++k) {
        const Vec3 p = orbit_position(plan, oc.arc * k / (n - 1), cfg);
        CameraPose pose = look_at_or(p, center, up);
        up = pose.up;
        plan.waypoints.push_back(pose);
    }
    return plan;
}

Vec3 orbit_position(const OrbitPlan& plan, double progress, const PlannerConfig& cfg) {
    const double a = plan.start_azimuth + plan.direction * progress;
    return clamp_into(raw_point(plan.center, a, plan.horizontal_radius, plan.height), cfg).position;
}

} // namespace autocam
