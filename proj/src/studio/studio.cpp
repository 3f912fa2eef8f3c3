#include "autocam/studio/studio.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <filesystem>

#include "autocam/errors.hpp"

namespace autocam::studio {

namespace {

bool droppable(const Json& msg) { return msg.value("kind", "") == "rig_state"; }

std::string kind_name(const TraceRecord& r) {
    return encode(r).value("type", "record");
}

} // namespace

const char* to_string(SessionState s) {
    switch (s) {
    case SessionState::Idle: return "idle";
    case SessionState::Running: return "running";
    case SessionState::Paused: return "paused";
    }
    return "?";
}

void Subscriber::publish(Json msg) {
    std::function<void()> notify;
    {
        std::lock_guard lock(m_);
        if (q_.size() >= capacity_) {
            const auto it = std::find_if(q_.begin(), q_.end(), droppable);
            if (it != q_.end()) {
                q_.erase(it);
                ++dropped_;
            } else if (droppable(msg)) {
                ++dropped_;
                return;
            }
        }
        msg["seq"] = next_seq_++;
        q_.push_back(std::move(msg));
        notify = notify_;
    }
    if (notify) notify();
}

std::optional<std::string> Subscriber::pop() {
    std::lock_guard lock(m_);
    if (q_.empty()) return std::nullopt;
    std::string s = q_.front().dump();
    q_.pop_front();
    return s;
}

std::vector<Json> Subscriber::drain() {
    std::lock_guard lock(m_);
    std::vector<Json> out(q_.begin(), q_.end());
    q_.clear();
    return out;
}

void Subscriber::set_notify(std::function<void()> fn) {
    std::lock_guard lock(m_);
    notify_ = std::move(fn);
}

std::size_t Subscriber::dropped() const {
    std::lock_guard lock(m_);
    return dropped_;
}

std::size_t Subscriber::size() const {
    std::lock_guard lock(m_);
    return q_.size();
}

LiveSession::LiveSession(std::string id, SessionOptions opts) : id_(std::move(id)), opts_(std::move(opts)) {
    SessionTrace empty;
    cfg_ = effective_config(empty, opts_.config);
    telemetry_every_ = std::min(cfg_.recording.telemetry_decimation, 5);  // at least 20 Hz on the wire
    std::lock_guard lock(m_);
    start_segment_locked();
    if (!opts_.manual_clock) thread_ = std::thread([this] { loop(); });
    spdlog::info("event=session_created session={} clock={}", id_, opts_.manual_clock ? "manual" : "wall");
}

LiveSession::~LiveSession() {
    {
        std::lock_guard lock(m_);
        stop_ = true;
    }
    cv_.notify_all();
    if (thread_.joinable()) thread_.join();
}

void LiveSession::start_segment_locked() {
    pipeline_ = std::make_unique<Pipeline>(cfg_);
    pipeline_->set_keep_items(false);
    pipeline_->set_sink([this](const RecordingItem& item) {
        // Called with m_ held, from step_locked.
        if (const auto* tick = std::get_if<TickRecord>(&item)) {
            for (const auto& note : tick->notes)
                if (note.rfind("recovering", 0) != 0) broadcast_locked(encode_diagnostics(id_, tick->t, "info", "director", note));
        } else if (const auto* ev = std::get_if<RigEventRecord>(&item)) {
            broadcast_locked(encode_diagnostics(id_, ev->t, "warning", "rig",
                                                ev->kind == RigEventKind::Recovery ? "limit recovery started"
                                                                                   : "tracking resumed"));
        }
    });
    trace_ = SessionTrace{};
    trace_.header.intrinsics = cfg_.planner.intrinsics;
    trace_.header.config = opts_.config;
    trace_.header.layout = {{"scenario", "live"}, {"session", id_}, {"segment", segment_}};
    last_snapshot_.reset();
    substeps_ = 0;

    trace_file_.close();
    if (!opts_.trace_dir.empty()) {
        std::filesystem::create_directories(opts_.trace_dir);
        const auto path = std::filesystem::path(opts_.trace_dir) / (id_ + "-" + std::to_string(segment_) + ".jsonl");
        trace_file_.open(path, std::ios::binary | std::ios::trunc);
        write_trace(trace_, trace_file_);  // header only; records are appended as they arrive
        trace_file_.flush();
        spdlog::info("event=trace_segment session={} path={}", id_, path.string());
    }
    ++segment_;
}

SessionState LiveSession::state() const {
    std::lock_guard lock(m_);
    return state_;
}

SessionState LiveSession::control(ControlAction action, int substeps) {
    std::unique_lock lock(m_);
    auto invalid = [&](const char* why) {
        throw Error(ErrorCode::InvalidTransition,
                    std::string(autocam::studio::to_string(action)) + " while " + to_string(state_) + ": " + why);
    };
    switch (action) {
    case ControlAction::Run:
        if (state_ == SessionState::Running) invalid("already running");
        state_ = SessionState::Running;
        publish_state_locked(true);
        break;
    case ControlAction::Pause:
        if (state_ != SessionState::Running) invalid("not running");
        state_ = SessionState::Paused;
        break;
    case ControlAction::Reset:
        start_segment_locked();
        last_in_seq_.reset();
        publish_state_locked(true);
        break;
    case ControlAction::Step:
        if (!opts_.manual_clock) invalid("stepping needs a manual-clock session");
        if (state_ != SessionState::Running) invalid("not running");
        for (int i = 0; i < substeps && state_ == SessionState::Running; ++i) step_locked();
        break;
    }
    spdlog::log(action == ControlAction::Step ? spdlog::level::debug : spdlog::level::info,
                "event=control session={} action={} state={}", id_, autocam::studio::to_string(action),
                to_string(state_));
    const SessionState s = state_;
    lock.unlock();
    cv_.notify_all();
    return s;
}

Json LiveSession::ingest(const Inbound& msg) {
    if (msg.session_id != id_)
        throw Error(ErrorCode::MalformedPayload, "message for session '" + msg.session_id + "' sent to '" + id_ + "'");
    if (const auto* c = std::get_if<SessionControl>(&msg.body)) {
        {
            std::lock_guard lock(m_);
            if (last_in_seq_ && msg.seq <= *last_in_seq_)
                throw Error(ErrorCode::StaleSeq, "seq " + std::to_string(msg.seq) + " after " + std::to_string(*last_in_seq_));
        }
        control(c->action, c->substeps);
        std::lock_guard lock(m_);
        // Reset clears the inbound sequence; anything else records it.
        if (c->action != ControlAction::Reset) last_in_seq_ = msg.seq;
        return encode_cue_ack(id_, msg.seq, pipeline_->now(), "session_control");
    }

    std::lock_guard lock(m_);
    if (last_in_seq_ && msg.seq <= *last_in_seq_)
        throw Error(ErrorCode::StaleSeq, "seq " + std::to_string(msg.seq) + " after " + std::to_string(*last_in_seq_));
    if (state_ != SessionState::Running)
        throw Error(ErrorCode::InvalidTransition, std::string("cannot ingest while ") + to_string(state_));
    const TraceRecord& rec = std::get<TraceRecord>(msg.body);
    if (const auto* patch = std::get_if<ConfigPatch>(&rec)) {
        // Validate now so a bad patch is rejected here rather than at the tick.
        SessionConfig probe = pipeline_->config();
        apply_overrides(probe, patch->patch);
        if (patch->patch.contains("cues") || patch->patch.contains("recording"))
            throw Error(ErrorCode::InvalidConfig, "the cues and recording sections cannot change mid-session");
        probe.validate();
    }
    const TraceRecord fed = pipeline_->push(rec);
    last_in_seq_ = msg.seq;
    trace_.records.push_back(fed);
    if (trace_file_.is_open()) {
        trace_file_ << encode(fed).dump() << '\n';
        trace_file_.flush();
    }
    return encode_cue_ack(id_, msg.seq, timestamp_of(fed), kind_name(fed));
}

std::shared_ptr<Subscriber> LiveSession::subscribe(std::size_t capacity) {
    auto sub = std::make_shared<Subscriber>(capacity);
    std::lock_guard lock(m_);
    sub->publish(encode_snapshot(snapshot_locked(), id_));
    sub->publish(encode_rig_state(rig_state_locked(), id_));
    subs_.push_back(sub);
    return sub;
}

void LiveSession::unsubscribe(const std::shared_ptr<Subscriber>& sub) {
    std::lock_guard lock(m_);
    subs_.erase(std::remove(subs_.begin(), subs_.end(), sub), subs_.end());
}

SessionTrace LiveSession::trace() const {
    std::lock_guard lock(m_);
    SessionTrace t = trace_;
    t.header.duration = pipeline_->now();
    return t;
}

DirectorSnapshot LiveSession::snapshot_locked() const {
    const DirectorState& d = pipeline_->director();
    return {pipeline_->now(),  d.shot,
            d.framing,         d.angle,
            d.movement.kind,   pipeline_->pointing(Hand::Left),
            pipeline_->pointing(Hand::Right)};
}

RigState LiveSession::rig_state_locked() const {
    const CameraRig& r = pipeline_->rig();
    return {pipeline_->now(), r.pose, r.linear_vel, r.status};
}

DirectorSnapshot LiveSession::snapshot() const {
    std::lock_guard lock(m_);
    return snapshot_locked();
}

RigState LiveSession::rig_state() const {
    std::lock_guard lock(m_);
    return rig_state_locked();
}

std::int64_t LiveSession::now_us() const {
    std::lock_guard lock(m_);
    return pipeline_->now_us();
}

void LiveSession::broadcast_locked(const Json& msg) {
    for (const auto& s : subs_) s->publish(msg);
}

void LiveSession::publish_state_locked(bool force) {
    const DirectorSnapshot snap = snapshot_locked();
    if (force || !last_snapshot_ || !last_snapshot_->same_state(snap)) {
        broadcast_locked(encode_snapshot(snap, id_));
        last_snapshot_ = snap;
    }
    if (force) broadcast_locked(encode_rig_state(rig_state_locked(), id_));
}

void LiveSession::step_locked() {
    try {
        pipeline_->substep();
    } catch (const Error& e) {
        state_ = SessionState::Paused;
        spdlog::error("event=pipeline_error session={} error=\"{}\"", id_, e.what());
        broadcast_locked(encode_diagnostics(id_, pipeline_->now(), "error", autocam::to_string(e.code()), e.what()));
        return;
    }
    ++substeps_;
    publish_state_locked(false);
    if (substeps_ % telemetry_every_ == 0) broadcast_locked(encode_rig_state(rig_state_locked(), id_));
}

void LiveSession::loop() {
    using clock = std::chrono::steady_clock;
    const auto dt = std::chrono::microseconds(cfg_.substep_us());
    auto next = clock::now();
    std::unique_lock lock(m_);
    while (!stop_) {
        if (state_ != SessionState::Running) {
            cv_.wait(lock, [&] { return stop_ || state_ == SessionState::Running; });
            next = clock::now();
            continue;
        }
        step_locked();
        next += dt;
        const auto now = clock::now();
        if (now - next > std::chrono::seconds(1)) next = now;  // fell far behind: resync instead of bursting
        cv_.wait_until(lock, next, [&] { return stop_ || state_ != SessionState::Running; });
    }
}

std::string StudioService::create_session(const Json& request) {
    SessionOptions opts;
    opts.trace_dir = trace_dir_;
    if (!request.is_null()) {
        if (!request.is_object()) throw Error(ErrorCode::MalformedPayload, "session request must be an object");
        for (const auto& [k, _] : request.items())
            if (k != "config" && k != "clock") throw Error(ErrorCode::MalformedPayload, "unknown field '" + k + "'");
        if (request.contains("config")) opts.config = request["config"];
        if (request.contains("clock")) {
            const Json& c = request["clock"];
            if (c == "manual") opts.manual_clock = true;
            else if (c != "wall") throw Error(ErrorCode::MalformedPayload, "clock must be \"wall\" or \"manual\"");
        }
    }
    std::string id;
    {
        std::lock_guard lock(m_);
        id = "s" + std::to_string(next_id_++);
    }
    auto session = std::make_shared<LiveSession>(id, std::move(opts));
    std::lock_guard lock(m_);
    sessions_.emplace(id, std::move(session));
    return id;
}

std::shared_ptr<LiveSession> StudioService::find(const std::string& id) const {
    std::lock_guard lock(m_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session '" + id + "'");
    return it->second;
}

std::vector<std::string> StudioService::list() const {
    std::lock_guard lock(m_);
    std::vector<std::string> out;
    for (const auto& [id, _] : sessions_) out.push_back(id);
    return out;
}

} // namespace autocam::studio
