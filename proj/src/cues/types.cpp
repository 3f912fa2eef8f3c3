#include "autocam/cues/types.hpp"

#include <algorithm>
#include <cmath>

#include "autocam/errors.hpp"

namespace autocam {

const char* to_string(Hand hand) { return hand == Hand::Left ? "left" : "right"; }

const char* to_string(Joint joint) {
    switch (joint) {
        case Joint::Head:       return "head";
        case Joint::Eyes:       return "eyes";
        case Joint::ShoulderL:  return "shoulder_l";
        case Joint::ShoulderR:  return "shoulder_r";
        case Joint::WristL:     return "wrist_l";
        case Joint::WristR:     return "wrist_r";
        case Joint::FingertipL: return "fingertip_l";
        case Joint::FingertipR: return "fingertip_r";
    }
    return "unknown";
}

std::optional<Hand> hand_from_string(std::string_view s) {
    if (s == "left") return Hand::Left;
    if (s == "right") return Hand::Right;
    return std::nullopt;
}

std::optional<Joint> joint_from_string(std::string_view s) {
    for (Joint j : kAllJoints)
        if (s == to_string(j)) return j;
    return std::nullopt;
}

Vec3 SkeletonFrame::at(Joint j) const {
    const JointSample& s = (*this)[j];
    if (!s.visible) throw Error(ErrorCode::JointNotVisible, std::string(to_string(j)) + " is not visible");
    return s.position;
}

void HandKeypoints::validate() const {
    if (points.size() != kHandKeypointCount)
        throw Error(ErrorCode::MalformedKeypoints,
                    "expected 21 keypoints, got " + std::to_string(points.size()));
    for (const Point2& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw Error(ErrorCode::MalformedKeypoints, "non-finite keypoint");
}

HandKeypoints normalize_keypoints(const HandKeypoints& kp) {
    kp.validate();
    HandKeypoints out = kp;
    const Point2 wrist = kp.points[0];
    double span = 0.0;
    for (std::size_t i = 0; i < kp.points.size(); ++i)
        for (std::size_t j = i + 1; j < kp.points.size(); ++j)
            span = std::max(span, std::hypot(kp.points[i].x - kp.points[j].x,
                                             kp.points[i].y - kp.points[j].y));
    if (span <= 0.0) throw Error(ErrorCode::MalformedKeypoints, "all keypoints coincide");
    for (Point2& p : out.points) p = Point2{(p.x - wrist.x) / span, (p.y - wrist.y) / span};
    return out;
}

const char* to_string(SpeechLabel label) {
    switch (label) {
        case SpeechLabel::TightFraming: return "tight_framing";
        case SpeechLabel::HighAngle:    return "high_angle";
        case SpeechLabel::Normal:       return "normal";
        case SpeechLabel::None:         return "none";
    }
    return "none";
}

std::optional<SpeechLabel> speech_label_from_string(std::string_view s) {
    for (SpeechLabel l : {SpeechLabel::TightFraming, SpeechLabel::HighAngle, SpeechLabel::Normal,
                          SpeechLabel::None})
        if (s == to_string(l)) return l;
    return std::nullopt;
}

const char* to_string(CueKind kind) {
    switch (kind) {
        case CueKind::PointStart:   return "point_start";
        case CueKind::PointEnd:     return "point_end";
        case CueKind::RaiseHand:    return "raise_hand";
        case CueKind::TwoHandPoint: return "two_hand_point";
        case CueKind::TruckStart:   return "truck_start";
        case CueKind::TruckEnd:     return "truck_end";
        case CueKind::HandHidden:   return "hand_hidden";
        case CueKind::Speech:       return "speech";
    }
    return "unknown";
}

std::optional<CueKind> cue_kind_from_string(std::string_view s) {
    for (CueKind k : {CueKind::PointStart, CueKind::PointEnd, CueKind::RaiseHand,
                      CueKind::TwoHandPoint, CueKind::TruckStart, CueKind::TruckEnd,
                      CueKind::HandHidden, CueKind::Speech})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

} // namespace autocam
