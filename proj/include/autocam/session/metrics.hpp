#pragma once

#include <span>

#include "autocam/session/recording.hpp"

namespace autocam {

// Mean, 95th percentile (nearest rank) and maximum.  Empty input gives zeros.
Stats summarize(std::span<const double> values);

// Statistics over the tick diagnostics of a recording.  Intrinsics come from
// the recorded config.  Throws EmptyRecording when there are no ticks.
Metrics compute_metrics(const SessionRecording& recording);

// Projected width of the subject sphere as a fraction of the frame width,
// measured along the camera's horizontal axis through the sphere center.
double subject_width_fraction(const CameraPose& pose, const CameraIntrinsics& intr, const Vec3& center,
                              double radius);

} // namespace autocam
