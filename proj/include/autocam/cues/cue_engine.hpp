#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "autocam/cues/config.hpp"
#include "autocam/cues/detectors.hpp"
#include "autocam/cues/speech.hpp"
#include "autocam/cues/types.hpp"

namespace autocam {

// Low-pass filter over per-frame pointing classifications: the state flips
// only after `frames` consecutive disagreeing observations.
class PointingDebouncer {
public:
    explicit PointingDebouncer(int frames = 3) : frames_(frames) {}

    // Returns PointStart / PointEnd when the state flips.  Throws
    // NonMonotoneTimestamp if t does not increase.
    std::optional<CueKind> update(double t, bool pointing);

    bool pointing() const { return state_; }
    std::optional<double> last_timestamp() const { return last_t_; }
    // Overrides the filtered state (injected cues).
    void force(bool pointing);
    void reset();

private:
    int frames_;
    bool state_{false};
    int disagree_{0};
    std::optional<double> last_t_;
};

// Turns skeleton frames, hand keypoints and utterances into an ordered cue stream.
class CueEngine {
public:
    explicit CueEngine(const CueConfig& cfg = {},
                       std::shared_ptr<const SpeechLabeler> labeler = nullptr);

    std::vector<CueEvent> on_hand(const HandKeypoints& kp);
    std::vector<CueEvent> on_skeleton(const SkeletonFrame& frame);
    std::vector<CueEvent> on_utterance(const Utterance& u);

    // Feeds a cue straight to the debounced output, bypassing classification.
    // PointStart/PointEnd that would break per-hand alternation are dropped.
    std::vector<CueEvent> inject(const CueEvent& cue);

    bool pointing(Hand h) const { return debouncers_[index(h)].pointing(); }
    const std::optional<GestureScore>& last_score(Hand h) const { return last_score_[index(h)]; }
    const std::optional<SkeletonFrame>& last_frame() const { return last_frame_; }
    void reset();

private:
    std::optional<CueEvent> flip(Hand h, CueKind kind, double t);
    void after_pointing_change(double t, std::vector<CueEvent>& out);

    CueConfig cfg_;
    std::shared_ptr<const SpeechLabeler> labeler_;
    std::array<PointingDebouncer, 2> debouncers_;
    std::array<std::optional<double>, 2> last_keypoints_t_{};
    std::array<std::optional<GestureScore>, 2> last_score_{};
    RaiseHandDetector raise_;
    TruckDetector truck_;
    HandHiddenDetector hidden_;
    bool two_hand_fired_{false};
    std::optional<SkeletonFrame> last_frame_;
};

} // namespace autocam
