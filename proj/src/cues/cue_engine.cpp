#include "autocam/cues/cue_engine.hpp"

#include "autocam/cues/gesture.hpp"
#include "autocam/errors.hpp"

namespace autocam {

std::optional<CueKind> PointingDebouncer::update(double t, bool pointing) {
    if (last_t_ && !(t > *last_t_))
        throw Error(ErrorCode::NonMonotoneTimestamp, "classification timestamps must increase");
    last_t_ = t;
    if (pointing == state_) {
        disagree_ = 0;
        return std::nullopt;
    }
    if (++disagree_ < frames_) return std::nullopt;
    state_ = pointing;
    disagree_ = 0;
    return state_ ? CueKind::PointStart : CueKind::PointEnd;
}

void PointingDebouncer::force(bool pointing) {
    state_ = pointing;
    disagree_ = 0;
}

void PointingDebouncer::reset() {
    state_ = false;
    disagree_ = 0;
    last_t_.reset();
}

CueEngine::CueEngine(const CueConfig& cfg, std::shared_ptr<const SpeechLabeler> labeler)
    : cfg_(cfg),
      labeler_(std::move(labeler)),
      debouncers_{PointingDebouncer(cfg.debounce_frames), PointingDebouncer(cfg.debounce_frames)},
      raise_(cfg),
      truck_(cfg),
      hidden_(cfg) {
    cfg_.validate();
}

std::optional<CueEvent> CueEngine::flip(Hand h, CueKind kind, double t) {
    CueEvent ev{kind, h, {}, {}, {}, t};
    if (kind == CueKind::PointStart && last_frame_ && last_frame_->hand_visible(h)) {
        try {
            ev.ray = pointing_ray(*last_frame_, h);
        } catch (const Error&) {
        }
    }
    return ev;
}

void CueEngine::after_pointing_change(double t, std::vector<CueEvent>& out) {
    const bool both = pointing(Hand::Left) && pointing(Hand::Right);
    if (!both) {
        two_hand_fired_ = false;
        return;
    }
    if (two_hand_fired_ || !last_frame_) return;
    if (!last_frame_->visible(Joint::FingertipL) || !last_frame_->visible(Joint::FingertipR)) return;
    two_hand_fired_ = true;
    out.push_back(CueEvent{CueKind::TwoHandPoint, {}, {}, detect_two_hand_point(*last_frame_, true), {}, t});
}

std::vector<CueEvent> CueEngine::on_hand(const HandKeypoints& kp) {
    const GestureScore score = classify_gesture(kp, cfg_);
    const Hand h = kp.hand;
    last_score_[index(h)] = score;
    last_keypoints_t_[index(h)] = kp.timestamp;

    std::vector<CueEvent> out;
    if (auto kind = debouncers_[index(h)].update(kp.timestamp, score.pointing)) {
        out.push_back(*flip(h, *kind, kp.timestamp));
        after_pointing_change(kp.timestamp, out);
    }
    return out;
}

std::vector<CueEvent> CueEngine::on_skeleton(const SkeletonFrame& frame) {
    std::vector<CueEvent> out;
    const double t = frame.timestamp;
    last_frame_ = frame;

    // Keypoints that stopped arriving count as "not pointing".
    for (Hand h : kHands) {
        auto& deb = debouncers_[index(h)];
        const auto& last_kp = last_keypoints_t_[index(h)];
        const bool stale = !last_kp || t - *last_kp > cfg_.keypoint_timeout_s;
        if (!stale || !deb.pointing()) continue;
        if (deb.last_timestamp() && !(t > *deb.last_timestamp())) continue;
        if (auto kind = deb.update(t, false)) {
            out.push_back(*flip(h, *kind, t));
            after_pointing_change(t, out);
        }
    }
    after_pointing_change(t, out);

    if (auto ev = raise_.update(frame)) out.push_back(*ev);

    const bool left = pointing(Hand::Left), right = pointing(Hand::Right);
    std::optional<Hand> single;
    if (left != right) single = left ? Hand::Left : Hand::Right;
    const bool tip_visible = single && frame.visible(fingertip(*single));
    const Vec3 tip = tip_visible ? frame[fingertip(*single)].position : Vec3{};
    if (auto ev = truck_.update(t, tip, tip_visible, single)) out.push_back(*ev);

    if (auto ev = hidden_.update_event(frame)) out.push_back(*ev);
    return out;
}

std::vector<CueEvent> CueEngine::on_utterance(const Utterance& u) {
    const SpeechLabeler& labeler = labeler_ ? *labeler_ : default_speech_labeler();
    const SpeechIntent intent = label_speech(u.text, u.timestamp, labeler);
    return {CueEvent{CueKind::Speech, {}, {}, {}, intent, u.timestamp}};
}

std::vector<CueEvent> CueEngine::inject(const CueEvent& cue) {
    std::vector<CueEvent> out;
    if (cue.kind == CueKind::PointStart || cue.kind == CueKind::PointEnd) {
        const Hand h = cue.hand.value_or(Hand::Right);
        const bool start = cue.kind == CueKind::PointStart;
        auto& deb = debouncers_[index(h)];
        if (deb.pointing() == start) return out;
        deb.force(start);
        CueEvent ev = cue;
        ev.hand = h;
        if (start && !ev.ray && last_frame_ && last_frame_->hand_visible(h)) {
            try {
                ev.ray = pointing_ray(*last_frame_, h);
            } catch (const Error&) {
            }
        }
        out.push_back(ev);
        after_pointing_change(cue.timestamp, out);
        return out;
    }
    out.push_back(cue);
    return out;
}

void CueEngine::reset() {
    for (auto& d : debouncers_) d.reset();
    last_keypoints_t_ = {};
    last_score_ = {};
    raise_.reset();
    truck_.reset();
    hidden_.reset();
    two_hand_fired_ = false;
    last_frame_.reset();
}

} // namespace autocam
