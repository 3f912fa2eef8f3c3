#include "autocam/session/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "autocam/errors.hpp"
#include "autocam/session/config.hpp"

namespace autocam {

namespace {

void tally(TimelineSummary& s, const TimelineEntry& e, double duration) {
    const std::string keys[] = {std::string("shot.") + to_string(e.shot), std::string("framing.") + to_string(e.framing),
                                std::string("angle.") + to_string(e.angle),
                                std::string("movement.") + to_string(e.movement)};
    for (const auto& k : keys) s.durations[k] += duration;
}

void count_entry(TimelineSummary& s, const TimelineEntry* prev, const TimelineEntry& e) {
    auto bump = [&](const std::string& key) { s.counts[key] += 1; };
    if (!prev || prev->shot != e.shot) {
        bump(std::string("shot.") + to_string(e.shot));
        if (prev) ++s.shot_changes;
    }
    if (!prev || prev->framing != e.framing) {
        bump(std::string("framing.") + to_string(e.framing));
        if (prev) ++s.framing_changes;
    }
    if (!prev || prev->angle != e.angle) {
        bump(std::string("angle.") + to_string(e.angle));
        if (prev) ++s.angle_changes;
    }
    if (!prev || prev->movement != e.movement) {
        bump(std::string("movement.") + to_string(e.movement));
        if (prev) ++s.movement_changes;
    }
}

} // namespace

Stats summarize(std::span<const double> values) {
    Stats s;
    s.count = values.size();
    if (values.empty()) return s;
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(v.size())));
    s.p95 = v[std::max<std::size_t>(rank, 1) - 1];
    s.max = v.back();
    return s;
}

double subject_width_fraction(const CameraPose& pose, const CameraIntrinsics& intr, const Vec3& center,
                              double radius) {
    // Diameter along the camera's horizontal axis through the center.
    const Vec3 across = pose.right();
    const double a = project(pose, intr, center + across * radius).u;
    const double b = project(pose, intr, center - across * radius).u;
    return std::abs(a - b);
}

Metrics compute_metrics(const SessionRecording& rec) {
    const auto ticks = rec.ticks();
    if (ticks.empty()) throw Error(ErrorCode::EmptyRecording, "recording has no planner ticks");

    SessionConfig cfg;
    apply_overrides(cfg, rec.config);
    const CameraIntrinsics& intr = cfg.planner.intrinsics;

    std::vector<double> width, eye, dist, heading, smooth;
    const Vec3* prev_camera = nullptr;
    for (const TickRecord& t : ticks) {
        if (prev_camera) smooth.push_back(distance(*prev_camera, t.camera.position));
        prev_camera = &t.camera.position;
        if (t.status != RigStatus::Tracking || t.waypoint) continue;

        const bool still = t.state.movement == MovementKind::None;
        try {
            if (t.state.shot == ShotType::Action && t.state.framing == Framing::Normal && still && t.radius > 0.0) {
                width.push_back(std::abs(subject_width_fraction(t.camera, intr, t.subject, t.radius) * 3.0 - 1.0));
            }
            if (t.state.shot == ShotType::Instructor) {
                const double v = project(t.camera, intr, t.subject).v;
                eye.push_back(std::abs(v / t.fraction_from_top - 1.0));
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::BehindCamera && e.code() != ErrorCode::DegenerateRay) throw;
            // Subject behind the camera: count as a full miss.
            if (t.state.shot == ShotType::Action) width.push_back(1.0);
            else eye.push_back(1.0);
        }
        if (t.gates.distance) dist.push_back(std::abs(distance(t.camera.position, t.subject) - t.desired_distance));
        if (t.gates.orientation && t.heading) {
            const Vec3 view = ground(t.camera.forward);
            const double n = norm(view);
            if (n > 1e-9) {
                const double c = std::clamp(dot(view / n, *t.heading), -1.0, 1.0);
                heading.push_back(std::acos(c));
            } else {
                heading.push_back(std::numbers::pi);
            }
        }
    }

    Metrics m;
    m.action_width_error = summarize(width);
    m.eye_line_error = summarize(eye);
    m.distance_error = summarize(dist);
    m.heading_error = summarize(heading);
    m.smoothness = summarize(smooth);

    const auto timeline = rec.timeline();
    const double end = std::max(rec.duration, ticks.back().t);
    for (std::size_t i = 0; i < timeline.size(); ++i) {
        count_entry(m.timeline, i ? &timeline[i - 1] : nullptr, timeline[i]);
        const double until = i + 1 < timeline.size() ? timeline[i + 1].t : end;
        tally(m.timeline, timeline[i], until - timeline[i].t);
    }
    return m;
}

} // namespace autocam
