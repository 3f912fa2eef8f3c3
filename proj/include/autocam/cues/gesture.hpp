#pragma once

#include "autocam/cues/config.hpp"
#include "autocam/cues/types.hpp"

namespace autocam {

// Per-finger extension in [0, 1] from normalized keypoints: 0 fully curled, 1 straight.
struct FingerExtension {
    double index{0.0};
    double middle{0.0};
    double ring{0.0};
    double pinky{0.0};
};

FingerExtension finger_extension(const HandKeypoints& kp, const CueConfig& cfg = {});

// Pointing = index extended while middle, ring and pinky are curled.  The
// confidence is index extension times the curl of the most extended of the
// other three fingers; the label is pointing iff confidence >= threshold.
// Throws MalformedKeypoints.
GestureScore classify_gesture(const HandKeypoints& kp, const CueConfig& cfg = {});

GestureScore score_from_confidence(double confidence, const CueConfig& cfg = {});

// Ray from the fingertip along wrist->fingertip.  Throws JointNotVisible, or
// DegenerateRay when wrist and fingertip coincide.
Ray pointing_ray(const SkeletonFrame& frame, Hand hand);

} // namespace autocam
