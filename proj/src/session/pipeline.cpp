#include "autocam/session/pipeline.hpp"

#include <cmath>
#include <cstdio>

#include "autocam/errors.hpp"
#include "autocam/planner/planner.hpp"

namespace autocam {

namespace {

std::int64_t to_us(double t) { return std::llround(t * 1e6); }

std::string bare(const Error& e) {
    const std::string w = e.what();
    const auto pos = w.find(": ");
    return pos == std::string::npos ? w : w.substr(pos + 2);
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

Pipeline::Pipeline(SessionConfig cfg, std::shared_ptr<const SpeechLabeler> labeler)
    : cfg_((cfg.validate(), cfg)),
      labeler_(std::move(labeler)),
      cues_(cfg_.cues, labeler_),
      servo_(cfg_.servo) {
    recording_.config = to_json(cfg_);
}

TraceRecord Pipeline::push(TraceRecord record) {
    const std::int64_t ts = to_us(timestamp_of(record));
    std::int64_t us = ts;
    // Late: move it just past everything already queued, so a stream of late
    // frames stays strictly increasing.
    const bool late = ts < now_us_ || ts < last_queued_us_ || (ts == last_queued_us_ && last_restamped_);
    if (late) us = std::max(now_us_, last_queued_us_ + 1);
    last_restamped_ = us != ts;
    if (us != ts) set_timestamp(record, static_cast<double>(us) / 1e6);
    last_queued_us_ = us;
    queue_.emplace_back(us, record);
    return record;
}

void Pipeline::emit(RecordingItem item) {
    if (sink_) sink_(item);
    if (keep_) recording_.items.push_back(std::move(item));
}

void Pipeline::feed(const TraceRecord& r) {
    std::vector<CueEvent> out;
    std::visit(overloaded{[&](const SkeletonFrame& f) {
                              frame_ = f;
                              out = cues_.on_skeleton(f);
                          },
                          [&](const HandKeypoints& k) { out = cues_.on_hand(k); },
                          [&](const Utterance& u) { out = cues_.on_utterance(u); },
                          [&](const InjectedCue& c) { out = cues_.inject(c.cue); },
                          [&](const ConfigPatch& p) { pending_patches_.push_back(p.patch); }},
               r);
    for (auto& c : out) {
        emit(CueRecord{c});
        pending_cues_.push_back(std::move(c));
    }
}

void Pipeline::apply_patches() {
    if (pending_patches_.empty()) return;
    SessionConfig next = cfg_;
    for (const Json& patch : pending_patches_) {
        if (patch.contains("cues") || patch.contains("recording"))
            throw Error(ErrorCode::InvalidConfig, "the cues and recording sections cannot change mid-session");
        apply_overrides(next, patch);
    }
    pending_patches_.clear();
    if (to_us(1.0 / next.planner.tick_hz) != cfg_.tick_us())
        throw Error(ErrorCode::InvalidConfig, "planner.tick_hz cannot change mid-session");
    next.validate();
    servo_.configure(next.servo);
    cfg_ = std::move(next);
}

void Pipeline::tick() {
    const double t = now();
    apply_patches();

    const PlannerConfig planning = cfg_.planning();
    const Vec3 camera = servo_.rig().pose.position;
    const SkeletonFrame* frame = frame_ ? &*frame_ : nullptr;
    DirectorStep step = step_director(director_, pending_cues_, frame, t, camera, cfg_.director, planning);
    pending_cues_.clear();
    director_ = std::move(step.state);
    if (step.changed || !state_emitted_) {
        emit(StateRecord{director_.entry(t)});
        state_emitted_ = true;
    }

    const PlanningGoal& goal = step.goal;
    TickRecord rec;
    rec.t = t;
    rec.state = director_.entry(t);
    rec.subject = goal.subject.position;
    rec.radius = goal.subject.radius;
    rec.heading = goal.subject.heading_target;
    rec.fraction_from_top = goal.subject_fraction_from_top;
    rec.zoom = goal.zoom;
    rec.desired_distance = goal.desired_distance;
    rec.pitch_target = goal.pitch_target;
    rec.gates = goal.gates;
    rec.camera = servo_.rig().pose;
    rec.status = servo_.rig().status;
    rec.waypoint = goal.waypoint;
    rec.holding = goal.holding;
    rec.notes = std::move(step.notes);

    if (rec.status == RigStatus::Tracking) {
        Vec3 position;
        if (goal.waypoint) {
            position = *goal.waypoint;
            rec.converged = true;
        } else {
            PlanningContext ctx;
            ctx.current = camera;
            ctx.subject = goal.subject.position;
            ctx.desired_distance = goal.desired_distance;
            ctx.pitch_target = goal.pitch_target;
            ctx.heading_target = goal.subject.heading_target;
            ctx.gates = goal.gates;
            const PlanResult plan = plan_next_position(ctx, planning);
            position = plan.position;
            rec.cost = plan.cost;
            rec.iterations = plan.iterations;
            rec.evaluations = plan.evaluations;
            rec.converged = plan.converged;
            if (plan.solver_failure) rec.notes.push_back("solver failure: " + plan.diagnostic);
        }
        rec.planned = position;
        try {
            servo_.set_target(aim_feature_at_fraction(position, goal.subject.position, cfg_.planner.intrinsics,
                                                      goal.zoom, goal.subject_fraction_from_top,
                                                      servo_.rig().pose.up));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegeneratePose) throw;
            rec.notes.push_back("target kept: camera would sit on the subject");
        }
    } else {
        rec.notes.push_back("recovering; planner output ignored");
    }
    last_tick_ = rec;
    emit(std::move(rec));
}

void Pipeline::substep() {
    try {
        while (!queue_.empty() && queue_.front().first <= now_us_) {
            const TraceRecord r = std::move(queue_.front().second);
            queue_.pop_front();
            feed(r);
        }
        if (now_us_ % cfg_.tick_us() == 0) tick();

        const std::int64_t next = now_us_ + cfg_.substep_us();
        const Servo::StepResult res = servo_.step(static_cast<double>(next) / 1e6);
        const double tn = static_cast<double>(next) / 1e6;
        if (res.recovery) emit(RigEventRecord{tn, RigEventKind::Recovery, res.recovery->polar, res.recovery->clearance});
        if (res.resumed) {
            const PolarCoord p = to_polar(servo_.rig().pose.position, cfg_.planner.polar_origin);
            emit(RigEventRecord{tn, RigEventKind::Resume, p, cfg_.planner.bounds.clearance(p)});
        }
        ++substeps_;
        now_us_ = next;
        if (substeps_ % cfg_.recording.telemetry_decimation == 0) {
            const CameraRig& rig = servo_.rig();
            emit(TelemetryRecord{tn, rig.pose, rig.linear_vel, rig.status});
        }
    } catch (const Error& e) {
        char stamp[48];
        std::snprintf(stamp, sizeof stamp, "at t=%.6f s: ", now());
        throw Error(e.code(), stamp + bare(e));
    }
}

void Pipeline::run_until(std::int64_t us) {
    while (now_us_ < us) substep();
}

void Pipeline::reset() {
    cues_.reset();
    director_ = DirectorState{};
    servo_.reset(neutral_pose(cfg_.servo));
    queue_.clear();
    last_queued_us_ = now_us_;
    last_restamped_ = false;
    frame_.reset();
    pending_cues_.clear();
    pending_patches_.clear();
    last_tick_.reset();
    state_emitted_ = false;
}

SessionConfig effective_config(const SessionTrace& trace, const Json& overrides) {
    SessionConfig cfg;
    cfg.planner.intrinsics = trace.header.intrinsics;
    apply_overrides(cfg, trace.header.config);
    apply_overrides(cfg, overrides);
    cfg.validate();
    return cfg;
}

SessionRecording replay(const SessionTrace& trace, const SessionConfig& cfg) {
    Pipeline p(cfg);
    p.recording().layout = trace.header.layout;
    std::int64_t end = to_us(trace.header.duration);
    for (const auto& r : trace.records) {
        p.push(r);
        end = std::max(end, to_us(timestamp_of(r)));
    }
    p.run_until(end);
    p.recording().duration = static_cast<double>(p.now_us()) / 1e6;
    return std::move(p.recording());
}

} // namespace autocam
