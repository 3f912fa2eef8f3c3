#pragma once

#include <numbers>
#include <random>

#include "autocam/planner/config.hpp"

namespace autocam::fixtures {

// Random context with a subject the rig can actually frame: the subject sits in
// front of the base, below the ceiling of the shell, and the camera starts
// somewhere inside the polar box.
inline PlanningContext random_context(std::mt19937_64& rng, const PlannerConfig& cfg) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto lerp = [&](double a, double b) { return a + (b - a) * unit(rng); };
    const PolarBounds& b = cfg.bounds;

    PlanningContext ctx;
    ctx.current = from_polar({lerp(b.theta_min, b.theta_max), lerp(b.psi_min, b.psi_max), lerp(b.r_min, b.r_max)},
                             cfg.polar_origin);
    const double az = lerp(-0.3, 0.3) * std::numbers::pi;
    const double reach = lerp(0.45, 0.9);
    ctx.subject = Vec3{reach * std::sin(az), reach * std::cos(az), lerp(0.05, 0.6)};
    ctx.desired_distance = lerp(0.12, 0.5);

    const int kind = static_cast<int>(unit(rng) * 4.0);
    switch (kind) {
    case 0:  // object-like
        ctx.gates = {true, false, false};
        break;
    case 1:  // instructor-like
        ctx.gates = {true, true, true};
        ctx.pitch_target = std::numbers::pi / 2.0;
        break;
    case 2:  // high angle
        ctx.gates = {false, true, unit(rng) < 0.5};
        ctx.pitch_target = 0.0;
        break;
    default:  // action-like
        ctx.gates = {true, false, true};
        break;
    }
    if (ctx.gates.orientation) {
        const double h = lerp(-0.35, 0.35) * std::numbers::pi;
        // Roughly away from the base so the view heading is achievable.
        ctx.heading_target = Vec3{std::sin(az + h), std::cos(az + h), 0.0};
    }
    return ctx;
}

} // namespace autocam::fixtures
