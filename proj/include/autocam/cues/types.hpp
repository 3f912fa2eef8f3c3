#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autocam/scene/geometry.hpp"

namespace autocam {

enum class Hand { Left, Right };

inline constexpr std::array<Hand, 2> kHands{Hand::Left, Hand::Right};

enum class Joint {
    Head,
    Eyes,
    ShoulderL,
    ShoulderR,
    WristL,
    WristR,
    FingertipL,
    FingertipR,
};

inline constexpr std::size_t kJointCount = 8;

inline constexpr std::array<Joint, kJointCount> kAllJoints{
    Joint::Head,   Joint::Eyes,   Joint::ShoulderL,  Joint::ShoulderR,
    Joint::WristL, Joint::WristR, Joint::FingertipL, Joint::FingertipR};

const char* to_string(Hand hand);
const char* to_string(Joint joint);
std::optional<Hand> hand_from_string(std::string_view s);
std::optional<Joint> joint_from_string(std::string_view s);

constexpr Joint wrist(Hand h) { return h == Hand::Left ? Joint::WristL : Joint::WristR; }
constexpr Joint fingertip(Hand h) { return h == Hand::Left ? Joint::FingertipL : Joint::FingertipR; }
constexpr Joint shoulder(Hand h) { return h == Hand::Left ? Joint::ShoulderL : Joint::ShoulderR; }
constexpr std::size_t index(Hand h) { return h == Hand::Left ? 0 : 1; }

struct JointSample {
    Vec3 position;
    bool visible{false};

    bool operator==(const JointSample&) const = default;
};

struct SkeletonFrame {
    double timestamp{0.0};
    std::array<JointSample, kJointCount> joints{};

    JointSample& operator[](Joint j) { return joints[static_cast<std::size_t>(j)]; }
    const JointSample& operator[](Joint j) const { return joints[static_cast<std::size_t>(j)]; }

    bool visible(Joint j) const { return (*this)[j].visible; }
    bool hand_visible(Hand h) const { return visible(wrist(h)) && visible(fingertip(h)); }
    bool torso_visible() const { return visible(Joint::ShoulderL) && visible(Joint::ShoulderR); }

    // Position of a visible joint; throws JointNotVisible otherwise.
    Vec3 at(Joint j) const;

    bool operator==(const SkeletonFrame&) const = default;
};

struct Point2 {
    double x{0.0};
    double y{0.0};

    bool operator==(const Point2&) const = default;
};

inline constexpr std::size_t kHandKeypointCount = 21;

// 2-D hand landmarks in normalized image coordinates, MediaPipe ordering:
// 0 wrist, 1-4 thumb, 5-8 index, 9-12 middle, 13-16 ring, 17-20 pinky
// (each finger listed base to tip).
struct HandKeypoints {
    Hand hand{Hand::Right};
    std::vector<Point2> points;
    double timestamp{0.0};

    // Throws MalformedKeypoints unless there are exactly 21 finite points.
    void validate() const;

    bool operator==(const HandKeypoints&) const = default;
};

// Translates the wrist to the origin and scales the largest pairwise distance to 1.
HandKeypoints normalize_keypoints(const HandKeypoints& kp);

struct GestureScore {
    bool pointing{false};
    double confidence{0.0};
};

enum class SpeechLabel { TightFraming, HighAngle, Normal, None };

const char* to_string(SpeechLabel label);
std::optional<SpeechLabel> speech_label_from_string(std::string_view s);

struct SpeechIntent {
    SpeechLabel label{SpeechLabel::None};
    std::string source_text;
    double timestamp{0.0};

    bool operator==(const SpeechIntent&) const = default;
};

struct Utterance {
    double timestamp{0.0};
    std::string text;

    bool operator==(const Utterance&) const = default;
};

enum class CueKind {
    PointStart,
    PointEnd,
    RaiseHand,
    TwoHandPoint,
    TruckStart,
    TruckEnd,
    HandHidden,
    Speech,
};

const char* to_string(CueKind kind);
std::optional<CueKind> cue_kind_from_string(std::string_view s);

struct CueEvent {
    CueKind kind{CueKind::PointStart};
    std::optional<Hand> hand;
    std::optional<Ray> ray;        // pointing ray for PointStart
    std::optional<Vec3> point;     // orbit center (TwoHandPoint) or truck axis (TruckStart)
    std::optional<SpeechIntent> speech;
    double timestamp{0.0};
};

} // namespace autocam
