#pragma once

#include <deque>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autocam/cues/types.hpp"
#include "autocam/planner/config.hpp"
#include "autocam/planner/orbit.hpp"

namespace autocam {

enum class ShotType { Action, Instructor, Object };
enum class Framing { Normal, Tight };
enum class Angle { Standard, High };
enum class MovementKind { None, Orbit, Truck };

const char* to_string(ShotType v);
const char* to_string(Framing v);
const char* to_string(Angle v);
const char* to_string(MovementKind v);
std::optional<ShotType> shot_from_string(std::string_view s);
std::optional<Framing> framing_from_string(std::string_view s);
std::optional<Angle> angle_from_string(std::string_view s);
std::optional<MovementKind> movement_from_string(std::string_view s);

inline constexpr double kTightZoom = 2.0;

struct Movement {
    MovementKind kind{MovementKind::None};
    Vec3 center;          // orbit center
    double progress{0.0};  // radians along the orbit arc
    double started_at{0.0};
    Vec3 axis;            // truck axis, unit, ground plane
};

struct Subject {
    Vec3 position;                      // x_s
    double radius{0.0};                 // Action only
    std::optional<Vec3> heading_target;  // v_o
};

// Which formula sets the Action-shot distance from the subject radius.
enum class ActionDistanceMode {
    Geometric,  // d = 3 r / tan(alpha / 2): the sphere spans a third of the frame width
    Literal,    // d = 2 r tan(alpha / 2) / 3, as printed; too close by a factor of about 10
};

struct Box3 {
    Vec3 min;
    Vec3 max;

    bool contains(const Vec3& p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z && p.z <= max.z;
    }
};

struct DirectorConfig {
    double instructor_distance{0.20};
    double object_distance{0.12};
    double truck_distance{0.12};
    double object_offset{0.12};  // subject distance ahead of the fingertip along the pointing ray
    double min_radius{0.05};
    double sphere_window_s{5.0};
    double subject_hold_s{1.0};
    double orbit_duration_s{4.0};
    double instructor_exit_s{2.0};
    Box3 workbench{{-0.15, 0.15, -0.05}, {0.5, 0.95, 0.3}};
    ActionDistanceMode action_distance{ActionDistanceMode::Geometric};
    double eye_fraction_from_top{1.0 / 3.0};

    void validate() const;
};

struct HandSample {
    double t{0.0};
    double distance{0.0};
};

struct TimelineEntry {
    double t{0.0};
    ShotType shot{ShotType::Action};
    Framing framing{Framing::Normal};
    Angle angle{Angle::Standard};
    MovementKind movement{MovementKind::None};

    bool operator==(const TimelineEntry&) const = default;
};

struct DirectorState {
    ShotType shot{ShotType::Action};
    Framing framing{Framing::Normal};
    Angle angle{Angle::Standard};
    Movement movement;
    std::deque<HandSample> hand_sphere;
    std::optional<Hand> active_pointing_hand;
    std::array<bool, 2> hand_pointing{};
    std::array<std::optional<Ray>, 2> last_ray{};
    std::optional<OrbitPlan> orbit;
    std::vector<CueEvent> pending;  // cues queued while an orbit runs

    std::optional<Subject> last_subject;
    double last_subject_t{0.0};
    std::optional<double> instructor_exit_since;
    std::optional<Vec3> last_heading;

    TimelineEntry entry(double t) const { return {t, shot, framing, angle, movement.kind}; }
};

// One planning step's worth of goals for the planner and the camera head.
struct PlanningGoal {
    Subject subject;
    double desired_distance{0.0};
    double pitch_target{std::numbers::pi / 2.0};
    CostGates gates;
    double zoom{1.0};
    // Fraction of the frame height, from the top, where the subject point is placed.
    double subject_fraction_from_top{0.5};
    // Set during an orbit: the planner is bypassed and the camera goes here.
    std::optional<Vec3> waypoint;
    bool holding{false};  // subject could not be resolved; last one reused
};

} // namespace autocam
