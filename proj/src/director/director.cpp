#include "autocam/director/director.hpp"

#include <algorithm>
#include <cmath>

#include "autocam/errors.hpp"

namespace autocam {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(std::string_view s, const std::array<std::pair<E, const char*>, N>& names) {
    for (const auto& [v, n] : names)
        if (s == n) return v;
    return std::nullopt;
}

template <typename E, std::size_t N>
const char* name_of(E v, const std::array<std::pair<E, const char*>, N>& names) {
    for (const auto& [e, n] : names)
        if (e == v) return n;
    return "?";
}

constexpr std::array<std::pair<ShotType, const char*>, 3> kShotNames{
    {{ShotType::Action, "action"}, {ShotType::Instructor, "instructor"}, {ShotType::Object, "object"}}};
constexpr std::array<std::pair<Framing, const char*>, 2> kFramingNames{
    {{Framing::Normal, "normal"}, {Framing::Tight, "tight"}}};
constexpr std::array<std::pair<Angle, const char*>, 2> kAngleNames{
    {{Angle::Standard, "standard"}, {Angle::High, "high"}}};
constexpr std::array<std::pair<MovementKind, const char*>, 3> kMovementNames{
    {{MovementKind::None, "none"}, {MovementKind::Orbit, "orbit"}, {MovementKind::Truck, "truck"}}};

bool same_tuple(const TimelineEntry& a, const TimelineEntry& b) {
    return a.shot == b.shot && a.framing == b.framing && a.angle == b.angle && a.movement == b.movement;
}

Vec3 object_subject(const Ray& ray, const DirectorConfig& cfg) { return ray.at(cfg.object_offset); }

void end_truck(DirectorState& s) {
    if (s.movement.kind == MovementKind::Truck) s.movement = Movement{};
}

struct Applier {
    DirectorState& s;
    double now;
    const Vec3& camera;
    const PlannerConfig& planner;
    std::vector<std::string>& notes;

    void operator()(const CueEvent& cue) {
        switch (cue.kind) {
        case CueKind::PointStart: {
            const Hand h = cue.hand.value_or(Hand::Right);
            s.hand_pointing[index(h)] = true;
            s.active_pointing_hand = h;
            s.last_ray[index(h)] = cue.ray;
            s.shot = ShotType::Object;
            s.instructor_exit_since.reset();
            break;
        }
        case CueKind::PointEnd: {
            const Hand h = cue.hand.value_or(Hand::Right);
            s.hand_pointing[index(h)] = false;
            s.last_ray[index(h)].reset();
            end_truck(s);
            const Hand other = h == Hand::Left ? Hand::Right : Hand::Left;
            if (s.hand_pointing[index(other)]) {
                s.active_pointing_hand = other;
            } else {
                s.active_pointing_hand.reset();
                s.shot = ShotType::Action;
            }
            break;
        }
        case CueKind::RaiseHand:
            end_truck(s);
            s.shot = ShotType::Instructor;
            s.instructor_exit_since.reset();
            break;
        case CueKind::TwoHandPoint: {
            if (!cue.point) {
                notes.push_back("two_hand_point without a center ignored");
                break;
            }
            try {
                s.orbit = orbit_waypoints(*cue.point, camera, planner);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::UnreachableOrbit) throw;
                notes.push_back("orbit ignored: unreachable center");
                break;
            }
            if (s.orbit->clamped > 0)
                notes.push_back("orbit: " + std::to_string(s.orbit->clamped) + " waypoints clamped");
            s.movement = Movement{MovementKind::Orbit, *cue.point, 0.0, now, {}};
            s.shot = ShotType::Object;
            break;
        }
        case CueKind::TruckStart: {
            if (s.shot != ShotType::Object || s.movement.kind != MovementKind::None || !cue.point ||
                norm(ground(*cue.point)) < 1e-9) {
                notes.push_back("truck_start ignored");
                break;
            }
            s.movement = Movement{};
            s.movement.kind = MovementKind::Truck;
            s.movement.axis = normalized(ground(*cue.point));
            s.movement.started_at = now;
            break;
        }
        case CueKind::TruckEnd:
            end_truck(s);
            break;
        case CueKind::Speech:
            if (!cue.speech) break;
            if (cue.speech->label == SpeechLabel::TightFraming) s.framing = Framing::Tight;
            if (cue.speech->label == SpeechLabel::HighAngle) s.angle = Angle::High;
            break;
        case CueKind::HandHidden:
            s.framing = Framing::Normal;
            s.angle = Angle::Standard;
            break;
        }
    }
};

void advance_orbit(DirectorState& s, double now, const DirectorConfig& cfg, const PlannerConfig& planner) {
    if (s.movement.kind != MovementKind::Orbit) return;
    const double arc = planner.orbit.arc;
    // The final waypoint is held for one tick before the orbit ends.
    if (s.movement.progress >= arc) {
        s.movement = Movement{};
        s.orbit.reset();
        return;
    }
    const double frac = (now - s.movement.started_at) / cfg.orbit_duration_s;
    s.movement.progress = std::clamp(frac, 0.0, 1.0) * arc;
}

void check_instructor_exit(DirectorState& s, const SkeletonFrame& f, double now, const DirectorConfig& cfg) {
    if (s.shot != ShotType::Instructor) {
        s.instructor_exit_since.reset();
        return;
    }
    bool resting = true;
    for (Hand h : kHands) {
        if (!f.visible(fingertip(h))) {
            resting = false;
            break;
        }
        const Vec3 tip = f[fingertip(h)].position;
        const bool below = !f.visible(shoulder(h)) || tip.z < f[shoulder(h)].position.z;
        resting = resting && below && cfg.workbench.contains(tip);
    }
    if (!resting) {
        s.instructor_exit_since.reset();
        return;
    }
    if (!s.instructor_exit_since) s.instructor_exit_since = now;
    if (now - *s.instructor_exit_since >= cfg.instructor_exit_s - 1e-9) {
        s.shot = ShotType::Action;
        s.instructor_exit_since.reset();
    }
}

Vec3 box_center(const Box3& b) { return (b.min + b.max) * 0.5; }

} // namespace

const char* to_string(ShotType v) { return name_of(v, kShotNames); }
const char* to_string(Framing v) { return name_of(v, kFramingNames); }
const char* to_string(Angle v) { return name_of(v, kAngleNames); }
const char* to_string(MovementKind v) { return name_of(v, kMovementNames); }
std::optional<ShotType> shot_from_string(std::string_view s) { return lookup(s, kShotNames); }
std::optional<Framing> framing_from_string(std::string_view s) { return lookup(s, kFramingNames); }
std::optional<Angle> angle_from_string(std::string_view s) { return lookup(s, kAngleNames); }
std::optional<MovementKind> movement_from_string(std::string_view s) { return lookup(s, kMovementNames); }

void DirectorConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw Error(ErrorCode::InvalidConfig, what);
    };
    require(instructor_distance > 0.0 && object_distance > 0.0 && truck_distance > 0.0,
            "shot distances must be positive");
    require(object_offset >= 0.0, "object_offset must be non-negative");
    require(min_radius > 0.0, "min_radius must be positive");
    require(sphere_window_s > 0.0, "sphere_window_s must be positive");
    require(subject_hold_s >= 0.0, "subject_hold_s must be non-negative");
    require(orbit_duration_s > 0.0, "orbit_duration_s must be positive");
    require(instructor_exit_s > 0.0, "instructor_exit_s must be positive");
    require(eye_fraction_from_top > 0.0 && eye_fraction_from_top < 1.0, "eye_fraction_from_top must be in (0, 1)");
}

double sphere_radius(const DirectorState& state, const DirectorConfig& cfg) {
    if (state.hand_sphere.empty()) return cfg.min_radius;
    double sum = 0.0;
    for (const auto& s : state.hand_sphere) sum += s.distance;
    return std::max(cfg.min_radius, 0.5 * sum / static_cast<double>(state.hand_sphere.size()));
}

void update_hand_sphere(DirectorState& state, const SkeletonFrame& frame, const DirectorConfig& cfg) {
    const double t = frame.timestamp;
    if (frame.visible(Joint::FingertipL) && frame.visible(Joint::FingertipR)) {
        if (state.hand_sphere.empty() || t > state.hand_sphere.back().t)
            state.hand_sphere.push_back(
                {t, distance(frame[Joint::FingertipL].position, frame[Joint::FingertipR].position)});
    }
    while (!state.hand_sphere.empty() && state.hand_sphere.front().t < t - cfg.sphere_window_s)
        state.hand_sphere.pop_front();
}

Subject resolve_subject(const DirectorState& state, const SkeletonFrame& frame, const DirectorConfig& cfg) {
    Subject out;
    switch (state.shot) {
    case ShotType::Action: {
        Vec3 sum;
        int n = 0;
        for (Hand h : kHands)
            if (frame.visible(fingertip(h))) {
                sum += frame[fingertip(h)].position;
                ++n;
            }
        if (n == 0) throw Error(ErrorCode::JointNotVisible, "no fingertip visible for the action shot");
        out.position = sum / n;
        out.radius = sphere_radius(state, cfg);
        break;
    }
    case ShotType::Instructor:
        out.position = frame.visible(Joint::Eyes) ? frame[Joint::Eyes].position : frame.at(Joint::Head);
        break;
    case ShotType::Object: {
        const Hand h = state.active_pointing_hand.value_or(Hand::Right);
        if (!frame.hand_visible(h))
            throw Error(ErrorCode::JointNotVisible, std::string("pointing hand not visible: ") + to_string(h));
        const Vec3 w = frame[wrist(h)].position;
        const Vec3 tip = frame[fingertip(h)].position;
        if (norm(tip - w) < 1e-9) throw Error(ErrorCode::JointNotVisible, "degenerate pointing ray");
        out.position = object_subject(Ray{tip, normalized(tip - w)}, cfg);
        break;
    }
    }
    if (state.shot != ShotType::Object || state.movement.kind == MovementKind::Truck) {
        if (frame.torso_visible()) {
            try {
                out.heading_target = heading_target(frame);
            } catch (const Error&) {
            }
        }
    }
    return out;
}

double desired_distance(ShotType shot, double radius, const CameraIntrinsics& intr, const DirectorConfig& cfg) {
    switch (shot) {
    case ShotType::Instructor:
        return cfg.instructor_distance;
    case ShotType::Object:
        return cfg.object_distance;
    case ShotType::Action:
        break;
    }
    if (!(radius > 0.0)) throw Error(ErrorCode::NonPositiveRadius, "action subject radius must be positive");
    const double t = std::tan(intr.fov_h / 2.0);
    if (cfg.action_distance == ActionDistanceMode::Literal) return 2.0 * radius * t / 3.0;
    return 3.0 * radius / t;
}

Vec3 heading_target(const Vec3& shoulder_l, const Vec3& shoulder_r) {
    const Vec3 v_sh = shoulder_l - shoulder_r;
    const Vec3 h = ground(cross(v_sh, kGravityDir));
    if (norm(h) < 1e-9) throw Error(ErrorCode::DegenerateShoulders, "shoulders coincide or are stacked vertically");
    return normalized(h);
}

Vec3 heading_target(const SkeletonFrame& frame) {
    return heading_target(frame.at(Joint::ShoulderL), frame.at(Joint::ShoulderR));
}

Vec3 truck_heading(const Vec3& axis, const Vec3& reference) {
    const Vec3 a = normalized(ground(axis));
    Vec3 perp{-a.y, a.x, 0.0};
    if (dot(perp, reference) < 0.0) perp = -perp;
    return perp;
}

CostGates gates_for(ShotType shot, Angle angle, MovementKind movement) {
    CostGates g;
    g.distance = angle != Angle::High;
    g.pitch = angle == Angle::High || shot == ShotType::Instructor;
    g.orientation = shot == ShotType::Action || shot == ShotType::Instructor || movement == MovementKind::Truck;
    return g;
}

bool is_reachable(ShotType shot, Framing, Angle, MovementKind movement) {
    return movement == MovementKind::None || shot == ShotType::Object;
}

DirectorStep step_director(const DirectorState& state, std::span<const CueEvent> cues, const SkeletonFrame* frame,
                           double now, const Vec3& camera, const DirectorConfig& cfg, const PlannerConfig& planner) {
    DirectorStep out{state, {}, false, {}};
    DirectorState& s = out.state;
    const TimelineEntry before = s.entry(now);
    Applier apply{s, now, camera, planner, out.notes};

    auto drain_pending = [&] {
        while (!s.pending.empty() && s.movement.kind != MovementKind::Orbit) {
            const CueEvent cue = s.pending.front();
            s.pending.erase(s.pending.begin());
            apply(cue);
        }
    };

    advance_orbit(s, now, cfg, planner);
    drain_pending();
    for (const CueEvent& cue : cues) {
        if (s.movement.kind == MovementKind::Orbit)
            s.pending.push_back(cue);
        else
            apply(cue);
    }

    if (frame) {
        update_hand_sphere(s, *frame, cfg);
        check_instructor_exit(s, *frame, now, cfg);
    }

    PlanningGoal& goal = out.goal;
    std::optional<Subject> subject;
    auto try_resolve = [&]() -> bool {
        if (!frame) return false;
        try {
            subject = resolve_subject(s, *frame, cfg);
            return true;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::JointNotVisible && e.code() != ErrorCode::DegenerateRay) throw;
            return false;
        }
    };

    if (s.movement.kind == MovementKind::Orbit) {
        subject = Subject{s.movement.center, 0.0, std::nullopt};
    } else if (try_resolve()) {
        s.last_subject = subject;
        s.last_subject_t = now;
    } else if (s.last_subject && now - s.last_subject_t <= cfg.subject_hold_s + 1e-9) {
        subject = s.last_subject;
        goal.holding = true;
    } else {
        if (s.shot != ShotType::Action) {
            s.shot = ShotType::Action;
            end_truck(s);
            out.notes.push_back("subject lost; falling back to the action shot");
        }
        if (try_resolve()) {
            s.last_subject = subject;
            s.last_subject_t = now;
        } else {
            subject = s.last_subject.value_or(Subject{box_center(cfg.workbench), cfg.min_radius, std::nullopt});
            goal.holding = true;
        }
    }

    goal.subject = *subject;
    if (s.shot == ShotType::Action && goal.subject.radius <= 0.0) goal.subject.radius = sphere_radius(s, cfg);

    // Heading: shoulders when available, else the last known one.
    const bool wants_heading = s.shot != ShotType::Object || s.movement.kind == MovementKind::Truck;
    std::optional<Vec3> shoulders;
    if (frame && frame->torso_visible()) {
        try {
            shoulders = heading_target(*frame);
            s.last_heading = shoulders;
        } catch (const Error&) {
        }
    }
    const std::optional<Vec3> base_heading = shoulders ? shoulders : s.last_heading;
    if (s.movement.kind == MovementKind::Truck) {
        const Vec3 ref = base_heading.value_or(ground(goal.subject.position - planner.polar_origin));
        goal.subject.heading_target = truck_heading(s.movement.axis, ref);
    } else if (wants_heading) {
        goal.subject.heading_target = base_heading;
    } else {
        goal.subject.heading_target.reset();
    }

    if (s.movement.kind == MovementKind::Truck)
        goal.desired_distance = cfg.truck_distance;
    else
        goal.desired_distance = desired_distance(s.shot, std::max(goal.subject.radius, cfg.min_radius),
                                                 planner.intrinsics, cfg);
    goal.gates = gates_for(s.shot, s.angle, s.movement.kind);
    goal.pitch_target = s.angle == Angle::High ? 0.0 : std::numbers::pi / 2.0;
    goal.zoom = s.framing == Framing::Tight ? kTightZoom : 1.0;
    goal.subject_fraction_from_top = s.shot == ShotType::Instructor ? cfg.eye_fraction_from_top : 0.5;
    if (s.movement.kind == MovementKind::Orbit && s.orbit)
        goal.waypoint = orbit_position(*s.orbit, s.movement.progress, planner);

    out.changed = !same_tuple(before, s.entry(now));
    return out;
}

} // namespace autocam
