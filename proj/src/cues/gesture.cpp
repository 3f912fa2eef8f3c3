#include "autocam/cues/gesture.hpp"

#include <algorithm>
#include <cmath>

#include "autocam/errors.hpp"

namespace autocam {

namespace {

constexpr std::size_t kIndexBase = 5;
constexpr std::size_t kMiddleBase = 9;
constexpr std::size_t kRingBase = 13;
constexpr std::size_t kPinkyBase = 17;

double extension(const HandKeypoints& kp, std::size_t base, const CueConfig& cfg) {
    const Point2 w = kp.points[0];
    const Point2 b = kp.points[base];
    const Point2 t = kp.points[base + 3];
    const double base_len = std::hypot(b.x - w.x, b.y - w.y);
    if (base_len < 1e-9) return 0.0;
    const double ratio = std::hypot(t.x - w.x, t.y - w.y) / base_len;
    return std::clamp((ratio - cfg.curled_ratio) / (cfg.extended_ratio - cfg.curled_ratio), 0.0, 1.0);
}

} // namespace

void CueConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw Error(ErrorCode::InvalidConfig, what);
    };
    require(pointing_threshold > 0.0 && pointing_threshold <= 1.0, "pointing_threshold must be in (0, 1]");
    require(extended_ratio > curled_ratio, "extended_ratio must exceed curled_ratio");
    require(debounce_frames >= 1, "debounce_frames must be >= 1");
    require(raise_hand_s > 0.0, "raise_hand_s must be positive");
    require(truck_start_speed > truck_end_speed && truck_end_speed >= 0.0,
            "truck_start_speed must exceed truck_end_speed");
    require(truck_vertical_tolerance > 0.0, "truck_vertical_tolerance must be positive");
    require(truck_sustain_s > 0.0, "truck_sustain_s must be positive");
    require(hand_hidden_s > 0.0, "hand_hidden_s must be positive");
    require(keypoint_timeout_s > 0.0, "keypoint_timeout_s must be positive");
}

FingerExtension finger_extension(const HandKeypoints& kp, const CueConfig& cfg) {
    const HandKeypoints n = normalize_keypoints(kp);
    return FingerExtension{extension(n, kIndexBase, cfg), extension(n, kMiddleBase, cfg),
                           extension(n, kRingBase, cfg), extension(n, kPinkyBase, cfg)};
}

GestureScore score_from_confidence(double confidence, const CueConfig& cfg) {
    return GestureScore{confidence >= cfg.pointing_threshold, confidence};
}

GestureScore classify_gesture(const HandKeypoints& kp, const CueConfig& cfg) {
    const FingerExtension e = finger_extension(kp, cfg);
    const double others = std::max({e.middle, e.ring, e.pinky});
    return score_from_confidence(e.index * (1.0 - others), cfg);
}

Ray pointing_ray(const SkeletonFrame& frame, Hand hand) {
    const Vec3 w = frame.at(wrist(hand));
    const Vec3 tip = frame.at(fingertip(hand));
    if (norm(tip - w) < 1e-9)
        throw Error(ErrorCode::DegenerateRay, "wrist and fingertip coincide");
    return Ray{tip, normalized(tip - w)};
}

} // namespace autocam
