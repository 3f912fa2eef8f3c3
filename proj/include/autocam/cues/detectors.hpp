#pragma once

#include <array>
#include <deque>
#include <optional>
#include <span>

#include "autocam/cues/config.hpp"
#include "autocam/cues/types.hpp"

namespace autocam {

// True iff either fingertip stays above its same-side shoulder for at least
// cfg.raise_hand_s within the window.  Throws InsufficientHistory when the
// window is shorter than that.
bool detect_raise_hand(std::span<const SkeletonFrame> window, const CueConfig& cfg = {});

// Streaming form: emits RaiseHand once per raise, re-arming when the hand drops.
class RaiseHandDetector {
public:
    explicit RaiseHandDetector(const CueConfig& cfg = {}) : cfg_(cfg) {}

    std::optional<CueEvent> update(const SkeletonFrame& frame);
    void reset();

private:
    CueConfig cfg_;
    std::array<std::optional<double>, 2> above_since_{};
    std::array<bool, 2> fired_{};
};

struct FingertipSample {
    double t{0.0};
    Vec3 p;
};

struct TruckSpec {
    Vec3 axis;  // unit, ground plane
    double extent{0.0};
};

// Looks at the trailing cfg.truck_sustain_s of history.  A truck needs a mean
// horizontal speed of at least truck_start_speed and a vertical spread below
// truck_vertical_tolerance; the axis is the principal direction of the trace.
std::optional<TruckSpec> detect_truck(std::span<const FingertipSample> history, bool pointing_active,
                                      const CueConfig& cfg = {});

// Mean horizontal speed over the trailing window, or nullopt if history is too short.
std::optional<double> trailing_horizontal_speed(std::span<const FingertipSample> history, double window);

class TruckDetector {
public:
    explicit TruckDetector(const CueConfig& cfg = {}) : cfg_(cfg) {}

    // Feed the pointing hand's fingertip; emits TruckStart / TruckEnd.
    std::optional<CueEvent> update(double t, const Vec3& fingertip, bool pointing_active,
                                   std::optional<Hand> hand);
    bool active() const { return active_; }
    void reset();

private:
    CueConfig cfg_;
    std::deque<FingertipSample> history_;
    bool active_{false};
};

// Midpoint of the two fingertips while both hands are pointing.
std::optional<Vec3> detect_two_hand_point(const SkeletonFrame& frame, bool both_hands_pointing);

// Reports a hand whose wrist or fingertip has been invisible for at least
// cfg.hand_hidden_s while both shoulders remain visible.
class HandHiddenDetector {
public:
    explicit HandHiddenDetector(const CueConfig& cfg = {}) : cfg_(cfg) {}

    // True while the condition holds.
    bool update(const SkeletonFrame& frame);
    // Emits HandHidden once per hiding episode.
    std::optional<CueEvent> update_event(const SkeletonFrame& frame);
    void reset();

private:
    CueConfig cfg_;
    std::array<std::optional<double>, 2> hidden_since_{};
    bool fired_{false};
    std::optional<Hand> hidden_hand_;
};

} // namespace autocam
