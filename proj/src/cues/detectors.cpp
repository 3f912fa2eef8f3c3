#include "autocam/cues/detectors.hpp"

#include <algorithm>
#include <cmath>

#include "autocam/errors.hpp"

namespace autocam {

namespace {

constexpr double kTimeEps = 1e-9;

bool hand_above_shoulder(const SkeletonFrame& f, Hand h) {
    return f.visible(fingertip(h)) && f.visible(shoulder(h)) &&
           f[fingertip(h)].position.z > f[shoulder(h)].position.z;
}

// First index of the trailing window spanning at least `window` seconds.
std::optional<std::size_t> window_start(std::span<const FingertipSample> history, double window) {
    if (history.empty()) return std::nullopt;
    const double t_end = history.back().t;
    for (std::size_t i = history.size(); i-- > 0;)
        if (t_end - history[i].t >= window - kTimeEps) return i;
    return std::nullopt;
}

} // namespace

bool detect_raise_hand(std::span<const SkeletonFrame> window, const CueConfig& cfg) {
    if (window.empty() || window.back().timestamp - window.front().timestamp < cfg.raise_hand_s - kTimeEps)
        throw Error(ErrorCode::InsufficientHistory, "raise-hand window is shorter than the dwell time");
    for (Hand h : kHands) {
        std::optional<double> since;
        for (const SkeletonFrame& f : window) {
            if (!hand_above_shoulder(f, h)) {
                since.reset();
                continue;
            }
            if (!since) since = f.timestamp;
            if (f.timestamp - *since >= cfg.raise_hand_s - kTimeEps) return true;
        }
    }
    return false;
}

std::optional<CueEvent> RaiseHandDetector::update(const SkeletonFrame& frame) {
    std::optional<CueEvent> out;
    for (Hand h : kHands) {
        auto& since = above_since_[index(h)];
        bool& fired = fired_[index(h)];
        if (!hand_above_shoulder(frame, h)) {
            since.reset();
            fired = false;
            continue;
        }
        if (!since) since = frame.timestamp;
        if (!fired && frame.timestamp - *since >= cfg_.raise_hand_s - kTimeEps) {
            fired = true;
            if (!out) out = CueEvent{CueKind::RaiseHand, h, {}, {}, {}, frame.timestamp};
        }
    }
    return out;
}

void RaiseHandDetector::reset() {
    above_since_ = {};
    fired_ = {};
}

std::optional<double> trailing_horizontal_speed(std::span<const FingertipSample> history, double window) {
    const auto start = window_start(history, window);
    if (!start) return std::nullopt;
    const FingertipSample& a = history[*start];
    const FingertipSample& b = history.back();
    const double dt = b.t - a.t;
    if (dt <= 0.0) return std::nullopt;
    return norm(ground(b.p - a.p)) / dt;
}

std::optional<TruckSpec> detect_truck(std::span<const FingertipSample> history, bool pointing_active,
                                      const CueConfig& cfg) {
    if (!pointing_active) return std::nullopt;
    const auto start = window_start(history, cfg.truck_sustain_s);
    if (!start) return std::nullopt;
    const auto win = history.subspan(*start);

    const auto speed = trailing_horizontal_speed(history, cfg.truck_sustain_s);
    if (!speed || *speed < cfg.truck_start_speed) return std::nullopt;

    double zmin = win.front().p.z, zmax = zmin;
    double mx = 0.0, my = 0.0;
    for (const auto& s : win) {
        zmin = std::min(zmin, s.p.z);
        zmax = std::max(zmax, s.p.z);
        mx += s.p.x;
        my += s.p.y;
    }
    if (zmax - zmin >= cfg.truck_vertical_tolerance) return std::nullopt;
    mx /= static_cast<double>(win.size());
    my /= static_cast<double>(win.size());

    double cxx = 0.0, cyy = 0.0, cxy = 0.0;
    for (const auto& s : win) {
        cxx += (s.p.x - mx) * (s.p.x - mx);
        cyy += (s.p.y - my) * (s.p.y - my);
        cxy += (s.p.x - mx) * (s.p.y - my);
    }
    const double angle = 0.5 * std::atan2(2.0 * cxy, cxx - cyy);
    Vec3 axis{std::cos(angle), std::sin(angle), 0.0};
    const Vec3 net = ground(win.back().p - win.front().p);
    if (dot(axis, net) < 0.0) axis = -axis;

    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < win.size(); ++i) {
        const double s = dot(win[i].p, axis);
        if (i == 0 || s < lo) lo = s;
        if (i == 0 || s > hi) hi = s;
    }
    return TruckSpec{axis, hi - lo};
}

std::optional<CueEvent> TruckDetector::update(double t, const Vec3& tip, bool pointing_active,
                                              std::optional<Hand> hand) {
    if (!pointing_active) {
        history_.clear();
        if (!active_) return std::nullopt;
        active_ = false;
        return CueEvent{CueKind::TruckEnd, hand, {}, {}, {}, t};
    }

    history_.push_back({t, tip});
    const double keep = 2.0 * cfg_.truck_sustain_s + 0.1;
    while (!history_.empty() && t - history_.front().t > keep) history_.pop_front();
    const std::vector<FingertipSample> samples(history_.begin(), history_.end());

    if (!active_) {
        const auto spec = detect_truck(samples, true, cfg_);
        if (!spec) return std::nullopt;
        active_ = true;
        return CueEvent{CueKind::TruckStart, hand, {}, spec->axis, {}, t};
    }
    const auto speed = trailing_horizontal_speed(samples, cfg_.truck_sustain_s);
    if (speed && *speed < cfg_.truck_end_speed) {
        active_ = false;
        return CueEvent{CueKind::TruckEnd, hand, {}, {}, {}, t};
    }
    return std::nullopt;
}

void TruckDetector::reset() {
    history_.clear();
    active_ = false;
}

std::optional<Vec3> detect_two_hand_point(const SkeletonFrame& frame, bool both_hands_pointing) {
    if (!both_hands_pointing) return std::nullopt;
    return (frame.at(Joint::FingertipL) + frame.at(Joint::FingertipR)) * 0.5;
}

bool HandHiddenDetector::update(const SkeletonFrame& frame) {
    bool hidden = false;
    hidden_hand_.reset();
    for (Hand h : kHands) {
        auto& since = hidden_since_[index(h)];
        if (frame.torso_visible() && !frame.hand_visible(h)) {
            if (!since) since = frame.timestamp;
            if (frame.timestamp - *since >= cfg_.hand_hidden_s - kTimeEps && !hidden) {
                hidden = true;
                hidden_hand_ = h;
            }
        } else {
            since.reset();
        }
    }
    return hidden;
}

std::optional<CueEvent> HandHiddenDetector::update_event(const SkeletonFrame& frame) {
    if (!update(frame)) {
        fired_ = false;
        return std::nullopt;
    }
    if (fired_) return std::nullopt;
    fired_ = true;
    return CueEvent{CueKind::HandHidden, hidden_hand_, {}, {}, {}, frame.timestamp};
}

void HandHiddenDetector::reset() {
    hidden_since_ = {};
    fired_ = false;
    hidden_hand_.reset();
}

} // namespace autocam
