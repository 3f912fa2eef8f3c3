#pragma once

#include <vector>

#include "autocam/planner/config.hpp"

namespace autocam {

struct OrbitPlan {
    Vec3 center;
    double start_azimuth{0.0};  // about the center, atan2(dy, dx)
    double direction{1.0};      // +1 counter-clockwise seen from above
    double horizontal_radius{0.0};
    double height{0.0};
    std::vector<CameraPose> waypoints;
    int clamped{0};  // waypoints moved back into the polar bounds
};

// Waypoints on a horizontal circular arc around `center` spanning cfg.orbit.arc
// of azimuth from the azimuth of `current_camera`, each looking at the center
// from cfg.orbit.distance at the configured pitch.  The sweep direction that
// needs fewer clamped waypoints wins (counter-clockwise on ties).  Throws
// UnreachableOrbit when every waypoint lies outside the bounds.
OrbitPlan orbit_waypoints(const Vec3& center, const Vec3& current_camera, const PlannerConfig& cfg);

// Camera position `progress` radians along the arc, clamped into the bounds.
Vec3 orbit_position(const OrbitPlan& plan, double progress, const PlannerConfig& cfg);

} // namespace autocam
