#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "autocam/session/pipeline.hpp"
#include "autocam/studio/protocol.hpp"

namespace autocam::studio {

enum class SessionState { Idle, Running, Paused };

const char* to_string(SessionState s);

// One client's outbound queue.  seq is assigned on enqueue, so a gap in the
// sequence a client sees means telemetry was dropped for it.
class Subscriber {
public:
    explicit Subscriber(std::size_t capacity = 256) : capacity_(capacity) {}

    // When full, the oldest rig_state is dropped; snapshots, acks and
    // diagnostics are never dropped.
    void publish(Json msg);
    std::optional<std::string> pop();
    std::vector<Json> drain();

    // Called (outside the queue lock) after every publish.
    void set_notify(std::function<void()> fn);
    std::size_t dropped() const;
    std::size_t size() const;

private:
    mutable std::mutex m_;
    std::deque<Json> q_;
    std::size_t capacity_;
    std::uint64_t next_seq_{1};
    std::size_t dropped_{0};
    std::function<void()> notify_;
};

struct SessionOptions {
    Json config = Json::object();  // overrides on top of the defaults
    bool manual_clock{false};      // advanced only by Step controls (tests, scripted runs)
    std::string trace_dir;         // where live traces are written; empty for none
};

// A live session: one pipeline, paced at the servo rate by its own control
// thread (unless the clock is manual).
class LiveSession {
public:
    LiveSession(std::string id, SessionOptions opts);
    ~LiveSession();
    LiveSession(const LiveSession&) = delete;
    LiveSession& operator=(const LiveSession&) = delete;

    const std::string& id() const { return id_; }
    SessionState state() const;
    bool manual_clock() const { return opts_.manual_clock; }

    // Throws InvalidTransition.
    SessionState control(ControlAction action, int substeps = 0);

    // Routes one inbound message and returns its cue_ack.  Throws StaleSeq,
    // MalformedPayload or InvalidTransition; a rejected message changes nothing.
    Json ingest(const Inbound& msg);

    // The new subscriber's queue starts with the current snapshot and rig state.
    std::shared_ptr<Subscriber> subscribe(std::size_t capacity = 256);
    void unsubscribe(const std::shared_ptr<Subscriber>& sub);

    // Inputs accepted since start or the last Reset, replayable as is.
    SessionTrace trace() const;
    DirectorSnapshot snapshot() const;
    RigState rig_state() const;
    std::int64_t now_us() const;

private:
    void loop();
    void step_locked();
    void broadcast_locked(const Json& msg);
    void publish_state_locked(bool force);
    void start_segment_locked();
    DirectorSnapshot snapshot_locked() const;
    RigState rig_state_locked() const;

    std::string id_;
    SessionOptions opts_;
    SessionConfig cfg_;
    int telemetry_every_{5};

    mutable std::mutex m_;
    std::condition_variable cv_;
    SessionState state_{SessionState::Idle};
    std::unique_ptr<Pipeline> pipeline_;
    SessionTrace trace_;
    int segment_{0};
    std::ofstream trace_file_;
    std::optional<std::uint64_t> last_in_seq_;
    std::optional<DirectorSnapshot> last_snapshot_;
    std::int64_t substeps_{0};
    std::vector<std::shared_ptr<Subscriber>> subs_;
    bool stop_{false};
    std::thread thread_;
};

class StudioService {
public:
    explicit StudioService(std::string trace_dir = {}) : trace_dir_(std::move(trace_dir)) {}

    // Request body: {"config": {...}, "clock": "wall" | "manual"}.  Returns the id.
    // Throws InvalidConfig or MalformedPayload.
    std::string create_session(const Json& request);
    // Throws UnknownSession.
    std::shared_ptr<LiveSession> find(const std::string& id) const;
    std::vector<std::string> list() const;

private:
    std::string trace_dir_;
    mutable std::mutex m_;
    std::map<std::string, std::shared_ptr<LiveSession>> sessions_;
    std::uint64_t next_id_{1};
};

} // namespace autocam::studio
