#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>

#include "autocam/cues/cue_engine.hpp"
#include "autocam/director/director.hpp"
#include "autocam/servo/servo.hpp"
#include "autocam/session/config.hpp"
#include "autocam/session/recording.hpp"
#include "autocam/session/trace.hpp"

namespace autocam {

// Cue engine, director, planner and servo in simulated-time lockstep.  The
// clock counts whole microseconds; each substep feeds the queued inputs that
// are due, runs a planner tick on tick boundaries and advances the servo by
// one dt.  Replay and live sessions both drive this class.
class Pipeline {
public:
    using Sink = std::function<void(const RecordingItem&)>;

    explicit Pipeline(SessionConfig cfg, std::shared_ptr<const SpeechLabeler> labeler = nullptr);

    // Queues an input.  Inputs stamped earlier than the next substep (or than the
    // last queued input) are restamped so that feeding order equals queue order.
    // Returns the input as it will be fed.
    TraceRecord push(TraceRecord record);

    void substep();
    // Runs substeps until the clock reaches `us`.
    void run_until(std::int64_t us);

    std::int64_t now_us() const { return now_us_; }
    double now() const { return static_cast<double>(now_us_) / 1e6; }

    const SessionConfig& config() const { return cfg_; }
    const DirectorState& director() const { return director_; }
    const CameraRig& rig() const { return servo_.rig(); }
    const CameraPose& target() const { return servo_.target(); }
    bool pointing(Hand h) const { return cues_.pointing(h); }
    const std::optional<TickRecord>& last_tick() const { return last_tick_; }

    // Every output item is passed to the sink as it is produced.  Items are
    // also kept in recording() unless keep_items is off.
    void set_sink(Sink sink) { sink_ = std::move(sink); }
    void set_keep_items(bool keep) { keep_ = keep; }
    SessionRecording& recording() { return recording_; }
    const SessionRecording& recording() const { return recording_; }

    // Rig back to the neutral pose, director to its default state, cue
    // history and queued inputs dropped.  The clock keeps running.
    void reset();

private:
    void feed(const TraceRecord& r);
    void tick();
    void emit(RecordingItem item);
    void apply_patches();

    SessionConfig cfg_;
    std::shared_ptr<const SpeechLabeler> labeler_;
    CueEngine cues_;
    DirectorState director_;
    Servo servo_;
    std::deque<std::pair<std::int64_t, TraceRecord>> queue_;
    std::int64_t last_queued_us_{0};
    std::int64_t now_us_{0};
    bool last_restamped_{false};
    std::int64_t substeps_{0};
    std::optional<SkeletonFrame> frame_;
    std::vector<CueEvent> pending_cues_;
    std::vector<Json> pending_patches_;
    std::optional<TickRecord> last_tick_;
    bool state_emitted_{false};
    SessionRecording recording_;
    Sink sink_;
    bool keep_{true};
};

// Effective config for a trace: defaults, then the header intrinsics, then the
// header overrides, then `overrides` (e.g. a config file).  Throws InvalidConfig.
SessionConfig effective_config(const SessionTrace& trace, const Json& overrides = Json::object());

// Replays the trace for its header duration (or up to the last record if longer).
SessionRecording replay(const SessionTrace& trace, const SessionConfig& cfg);

} // namespace autocam
