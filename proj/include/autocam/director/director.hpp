#pragma once

#include <span>
#include <string>
#include <vector>

#include "autocam/director/types.hpp"

namespace autocam {

// Subject for the active shot.  Action: midpoint of the visible fingertips with
// the rolling sphere radius.  Instructor: the eye point (head if the eyes are
// missing).  Object: a point object_offset ahead of the pointing fingertip.
// Throws JointNotVisible when the joints the shot needs are missing.
Subject resolve_subject(const DirectorState& state, const SkeletonFrame& frame, const DirectorConfig& cfg);

// Half the rolling mean inter-hand distance, never below cfg.min_radius.
double sphere_radius(const DirectorState& state, const DirectorConfig& cfg);

// Adds the current inter-hand distance and drops samples older than the window.
void update_hand_sphere(DirectorState& state, const SkeletonFrame& frame, const DirectorConfig& cfg);

// Action: see ActionDistanceMode.  Instructor and Object: configured constants.
// Throws NonPositiveRadius for an Action radius <= 0.
double desired_distance(ShotType shot, double radius, const CameraIntrinsics& intr,
                        const DirectorConfig& cfg = {});

// View heading that faces the instructor: ground(v_sh x v_g) normalized, with
// v_sh running from the right shoulder to the left one.  Throws DegenerateShoulders.
Vec3 heading_target(const SkeletonFrame& frame);
Vec3 heading_target(const Vec3& shoulder_l, const Vec3& shoulder_r);

// Heading perpendicular to a truck axis, on the same side as `reference`.
Vec3 truck_heading(const Vec3& axis, const Vec3& reference);

CostGates gates_for(ShotType shot, Angle angle, MovementKind movement);

// Orbit and Truck only occur during Object shots; every other combination of
// shot, framing, angle and movement is reachable.
bool is_reachable(ShotType shot, Framing framing, Angle angle, MovementKind movement);

struct DirectorStep {
    DirectorState state;
    PlanningGoal goal;
    bool changed{false};             // the (shot, framing, angle, movement) tuple changed
    std::vector<std::string> notes;  // diagnostics, e.g. unreachable orbit or subject fallback
};

// Applies time-ordered cues, advances any orbit, tracks the hand sphere and
// returns the next planning goal.  `camera` is the rig position, used to start orbits.
DirectorStep step_director(const DirectorState& state, std::span<const CueEvent> cues,
                           const SkeletonFrame* frame, double now, const Vec3& camera,
                           const DirectorConfig& cfg, const PlannerConfig& planner);

} // namespace autocam
