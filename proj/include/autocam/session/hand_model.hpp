#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "autocam/cues/types.hpp"

namespace autocam {

// Articulated 3-D hand rendered to 2-D keypoints by orthographic projection.
// Hand frame: wrist at the origin, fingers along +y, palm facing the camera (+z).
struct HandPose {
    // 0 straight, 1 fully flexed.  Thumb, index, middle, ring, pinky.
    std::array<double, 5> curl{};
    double roll{0.0};   // in-plane rotation, radians
    double pitch{0.0};  // tilt about the hand's x axis
    double yaw{0.0};    // tilt about the hand's y axis
    double scale{0.12};  // palm length in image units
    Point2 offset{0.5, 0.5};
};

HandPose pointing_pose();
HandPose fist_pose();
HandPose open_pose();

// Keypoints in MediaPipe order; noise_sigma is in palm lengths.
HandKeypoints render_hand(const HandPose& pose, Hand hand, double timestamp, double noise_sigma = 0.0,
                          std::mt19937_64* rng = nullptr);

struct LabeledHand {
    HandKeypoints keypoints;
    bool pointing{false};
    std::string category;
};

// Mixed corpus of pointing and non-pointing hands with random orientation,
// scale, position and keypoint noise.  Deterministic for a given seed.
std::vector<LabeledHand> generate_gesture_corpus(std::uint64_t seed, std::size_t count);

} // namespace autocam
