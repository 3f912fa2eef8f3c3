// Acceptance run: one PASS/FAIL line per criterion, measured values alongside.
// Exit status is the number of failed criteria.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "autocam/cues/cue_engine.hpp"
#include "autocam/cues/detectors.hpp"
#include "autocam/cues/gesture.hpp"
#include "autocam/cues/speech.hpp"
#include "autocam/errors.hpp"
#include "autocam/planner/grid_oracle.hpp"
#include "autocam/planner/orbit.hpp"
#include "autocam/planner/planner.hpp"
#include "autocam/servo/servo.hpp"
#include "autocam/session/generator.hpp"
#include "autocam/session/hand_model.hpp"
#include "autocam/session/metrics.hpp"
#include "autocam/session/pipeline.hpp"
#include "planner_fixtures.hpp"

using namespace autocam;

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass{true};
    std::string detail;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [x]");
    }
};

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double mean(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return v.empty() ? std::nan("") : s / static_cast<double>(v.size());
}

double max_abs(const std::vector<double>& v, double center) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x - center));
    return m;
}

SessionRecording run(const std::string& scenario, std::uint64_t seed = 1) {
    const SessionTrace trace = generate_scenario(scenario, seed);
    return replay(trace, effective_config(trace));
}

// Settled ticks: past `from`, tracking, in the expected shot.
std::vector<TickRecord> settled(const SessionRecording& rec, double from, ShotType shot) {
    std::vector<TickRecord> out;
    for (const auto& t : rec.ticks())
        if (t.t >= from && t.status == RigStatus::Tracking && t.state.shot == shot && !t.waypoint) out.push_back(t);
    return out;
}

double heading_error(const TickRecord& t) {
    const Vec3 g = ground(t.camera.forward);
    return std::acos(std::clamp(dot(normalized(g), *t.heading), -1.0, 1.0));
}

// ---------------------------------------------------------------------------

Outcome optimizer_oracle() {
    Outcome o;
    const PlannerConfig cfg;
    std::mt19937_64 rng(2718);
    const auto t0 = Clock::now();
    int agree = 0, worst_i = -1;
    double worst = -1e9;
    for (int i = 0; i < 50; ++i) {
        const PlanningContext ctx = fixtures::random_context(rng, cfg);
        const PlanResult r = plan_next_position(ctx, cfg);
        const GridResult g = grid_oracle(ctx, cfg);
        const double tol = std::max(0.02 * g.cost.total, 1e-4);
        const double excess = r.cost.total - g.cost.total;
        agree += g.found && excess <= tol;
        if (excess - tol > worst) {
            worst = excess - tol;
            worst_i = i;
        }
    }
    const double elapsed = seconds_since(t0);
    o.check(agree == 50, fmt("%d/50 contexts within max(2%%, 1e-4) of the 1 cm/1 deg grid (tightest #%d, margin %.2g)",
                             agree, worst_i, -worst));
    o.check(elapsed < 60.0, fmt("%.1f s total on %d thread(s)", elapsed, omp_get_max_threads()));
    return o;
}

Outcome framing() {
    Outcome o;
    const SessionConfig cfg;
    const CameraIntrinsics& intr = cfg.planner.intrinsics;

    const SessionRecording still = run("stationary");
    std::vector<double> width;
    for (const auto& t : settled(still, 10.0, ShotType::Action))
        width.push_back(subject_width_fraction(t.camera, intr, t.subject, t.radius));
    const double w = mean(width);
    o.check(!width.empty() && std::abs(3.0 * w - 1.0) <= 0.05,
            fmt("Action width %.4f of frame (target 1/3, %+.1f%%, worst tick %+.1f%%, n=%zu)", w,
                100.0 * (3.0 * w - 1.0), 100.0 * 3.0 * max_abs(width, 1.0 / 3.0), width.size()));

    const SessionRecording instr = run("instructor");
    std::vector<double> eye;
    for (const auto& t : settled(instr, 10.0, ShotType::Instructor)) eye.push_back(project(t.camera, intr, t.subject).v);
    const double v = mean(eye);
    o.check(!eye.empty() && std::abs(3.0 * v - 1.0) <= 0.05,
            fmt("eye line %.4f from top (target 1/3, %+.1f%%, worst tick %+.1f%%, n=%zu)", v, 100.0 * (3.0 * v - 1.0),
                100.0 * 3.0 * max_abs(eye, 1.0 / 3.0), eye.size()));
    return o;
}

Outcome distances() {
    Outcome o;
    auto check = [&](const char* scenario, ShotType shot, double target) {
        const SessionRecording rec = run(scenario);
        std::vector<double> d;
        for (const auto& t : settled(rec, 10.0, shot)) d.push_back(distance(t.camera.position, t.subject));
        const double m = mean(d);
        o.check(!d.empty() && std::abs(m - target) <= 0.01,
                fmt("%s %.4f m (target %.2f, worst tick %.1f mm off, n=%zu)", to_string(shot), m, target,
                    1000.0 * max_abs(d, target), d.size()));
    };
    check("instructor", ShotType::Instructor, 0.20);
    check("object", ShotType::Object, 0.12);
    return o;
}

Outcome pitch_heading() {
    Outcome o;
    const SessionRecording high = run("high");
    std::vector<double> down;
    for (const auto& t : settled(high, 10.0, ShotType::Action))
        if (t.state.angle == Angle::High) down.push_back(dot(normalized(t.subject - t.camera.position), kGravityDir));
    const double m = mean(down);
    o.check(!down.empty() && m >= 0.94 && *std::min_element(down.begin(), down.end()) >= 0.94,
            fmt("high angle view.gravity %.4f (min %.4f, n=%zu)", m,
                down.empty() ? 0.0 : *std::min_element(down.begin(), down.end()), down.size()));

    for (auto [scenario, shot] : {std::pair{"stationary", ShotType::Action}, std::pair{"instructor", ShotType::Instructor}}) {
        std::vector<double> err;
        for (const auto& t : settled(run(scenario), 10.0, shot))
            if (t.heading) err.push_back(heading_error(t) * 180.0 / kPi);
        const double e = mean(err);
        o.check(!err.empty() && e <= 5.0,
                fmt("%s heading %.2f deg off shoulder-perpendicular (worst tick %.2f, n=%zu)", to_string(shot), e,
                    max_abs(err, 0.0), err.size()));
    }
    return o;
}

Outcome orbit_geometry() {
    Outcome o;
    const PlannerConfig cfg;
    int plans = 0, waypoints = 0, bad = 0, clamped = 0;
    double worst_d = 0, worst_el = 0, worst_span = 0;
    // Centers whose whole arc lies inside the rig's reach, from both sides.
    for (double x : {-0.04, 0.0, 0.04})
        for (double y : {0.92, 0.95, 0.98})
            for (double z : {0.0, 0.033, 0.06})
                for (double side : {-1.0, 1.0}) {
                    const Vec3 center{x, y, z};
                    const double start = side > 0 ? -0.625 * kPi : -0.375 * kPi;
                    const Vec3 cam = center + Vec3{0.52 * std::cos(start), 0.52 * std::sin(start), 0.3};
                    const OrbitPlan plan = orbit_waypoints(center, cam, cfg);
                    ++plans;
                    clamped += plan.clamped;
                    for (const auto& w : plan.waypoints) {
                        const Vec3 d = center - w.position;
                        const double dd = std::abs(norm(d) - 0.6);
                        const double el = std::abs(std::asin(-d.z / norm(d)) - kPi / 6.0);
                        worst_d = std::max(worst_d, dd);
                        worst_el = std::max(worst_el, el);
                        bad += dd > 1e-6 || el > 1e-6;
                        ++waypoints;
                    }
                    const Vec3 a = ground(plan.waypoints.front().position - center);
                    const Vec3 b = ground(plan.waypoints.back().position - center);
                    worst_span = std::max(worst_span,
                                          std::abs(std::acos(std::clamp(dot(normalized(a), normalized(b)), -1.0, 1.0)) -
                                                   kPi / 4.0));
                }
    o.check(bad == 0 && clamped == 0,
            fmt("%d waypoints over %d arcs: distance within %.1e m of 0.60, elevation within %.1e rad of pi/6, %d clamped",
                waypoints, plans, worst_d, worst_el, clamped));
    o.check(worst_span < 1e-9, fmt("azimuth span pi/4 within %.1e rad", worst_span));
    return o;
}

SkeletonFrame standing(double t) {
    SkeletonFrame f;
    f.timestamp = t;
    auto set = [&](Joint j, Vec3 p) { f[j] = {p, true}; };
    set(Joint::Head, {0.0, 1.0, 1.2});
    set(Joint::Eyes, {0.0, 0.95, 1.15});
    set(Joint::ShoulderL, {0.2, 1.0, 1.0});
    set(Joint::ShoulderR, {-0.2, 1.0, 1.0});
    set(Joint::WristL, {0.15, 0.8, 0.7});
    set(Joint::WristR, {-0.15, 0.8, 0.7});
    set(Joint::FingertipL, {0.15, 0.7, 0.7});
    set(Joint::FingertipR, {-0.15, 0.7, 0.7});
    return f;
}

// How many RaiseHand cues a streamed raise of `held` seconds produces.
int raise_cues(double held) {
    CueEngine engine;
    int n = 0;
    for (int i = 0; i <= 120; ++i) {
        const double t = i / 30.0;
        SkeletonFrame f = standing(t);
        if (t >= 0.5 && t < 0.5 + held - 1e-9) {
            f[fingertip(Hand::Right)].position.z = 1.3;
            f[wrist(Hand::Right)].position.z = 1.1;
        }
        for (const auto& c : engine.on_skeleton(f)) n += c.kind == CueKind::RaiseHand;
    }
    return n;
}

Outcome cue_suite() {
    Outcome o;
    const auto corpus = generate_gesture_corpus(2024, 600);
    int tp = 0, fp = 0, fn = 0;
    for (const auto& s : corpus) {
        const bool p = classify_gesture(s.keypoints).pointing;
        tp += p && s.pointing;
        fp += p && !s.pointing;
        fn += !p && s.pointing;
    }
    const double precision = static_cast<double>(tp) / (tp + fp);
    const double recall = static_cast<double>(tp) / (tp + fn);
    o.check(corpus.size() >= 500 && precision >= 0.90 && recall >= 0.85,
            fmt("pointing precision %.3f recall %.3f on %zu frames", precision, recall, corpus.size()));

    const std::pair<const char*, SpeechLabel> quoted[] = {
        {"If you look closer, you can see this socket takes a hexagon shape", SpeechLabel::TightFraming},
        {"Pay more attention to how I take the lid off.", SpeechLabel::TightFraming},
        {"If you take a closer look, ...", SpeechLabel::TightFraming},
        {"It is better to look from the top to see how I take the headband off", SpeechLabel::HighAngle},
        {"I want you to take a top-down perspective now so that you see the full model.", SpeechLabel::HighAngle},
        {"Now if you look at how I put A into B from the top", SpeechLabel::HighAngle},
        {"You can see from the top ...", SpeechLabel::HighAngle},
        {"Now I will glue these parts together", SpeechLabel::Normal},
    };
    int right = 0;
    for (const auto& [text, label] : quoted) right += label_speech(text).label == label;
    o.check(right == static_cast<int>(std::size(quoted)), fmt("speech %d/%zu quoted sentences", right, std::size(quoted)));

    const int at_1_0 = raise_cues(1.0 + 1.0 / 30.0), at_1_5 = raise_cues(1.5), at_0_9 = raise_cues(0.9),
              at_0_5 = raise_cues(0.5);
    o.check(at_1_0 == 1 && at_1_5 == 1 && at_0_9 == 0 && at_0_5 == 0,
            fmt("raise-hand cues for 1.03/1.5/0.9/0.5 s holds: %d/%d/%d/%d", at_1_0, at_1_5, at_0_9, at_0_5));

    PointingDebouncer deb;
    int flips = 0;
    double t = 0;
    for (bool p : {false, false, true, false, false, true, false, true, false, false, true, false})
        flips += deb.update(t += 1.0 / 30.0, p).has_value();
    o.check(flips == 0, fmt("%d cues from isolated single-frame flips", flips));
    return o;
}

Outcome golden_timeline() {
    Outcome o;
    struct Row {
        double t;
        ShotType shot;
        Framing framing;
        Angle angle;
        MovementKind movement;
    };
    using S = ShotType;
    using F = Framing;
    using A = Angle;
    using M = MovementKind;
    const std::vector<Row> golden{
        {0.0, S::Action, F::Normal, A::Standard, M::None},      {2.2, S::Object, F::Normal, A::Standard, M::None},
        {4.2, S::Action, F::Normal, A::Standard, M::None},      {6.4, S::Instructor, F::Normal, A::Standard, M::None},
        {7.6, S::Instructor, F::Tight, A::Standard, M::None},   {9.0, S::Instructor, F::Tight, A::High, M::None},
        {11.0, S::Instructor, F::Normal, A::Standard, M::None}, {14.0, S::Action, F::Normal, A::Standard, M::None},
        {15.2, S::Object, F::Normal, A::Standard, M::Orbit},    {19.4, S::Action, F::Normal, A::Standard, M::None},
        {21.2, S::Object, F::Normal, A::Standard, M::None},     {22.4, S::Object, F::Normal, A::Standard, M::Truck},
        {23.4, S::Object, F::Normal, A::Standard, M::None},     {24.6, S::Action, F::Normal, A::Standard, M::None},
    };
    const SessionTrace trace = generate_scenario("lego", 1);
    const SessionConfig cfg = effective_config(trace);
    const SessionRecording rec = replay(trace, cfg);
    const auto tl = rec.timeline();
    std::size_t match = 0;
    for (std::size_t i = 0; i < std::min(tl.size(), golden.size()); ++i) {
        const auto& g = golden[i];
        match += std::abs(tl[i].t - g.t) < 1e-9 && tl[i].shot == g.shot && tl[i].framing == g.framing &&
                 tl[i].angle == g.angle && tl[i].movement == g.movement;
    }
    o.check(tl.size() == golden.size() && match == golden.size(),
            fmt("%zu/%zu timeline entries exact (%zu produced)", match, golden.size(), tl.size()));

    const std::string a = recording_to_string(rec);
    const std::string b = recording_to_string(replay(trace, cfg));
    const int threads = omp_get_max_threads();
    omp_set_num_threads(threads > 1 ? 1 : 2);
    const std::string c = recording_to_string(replay(trace, cfg));
    omp_set_num_threads(threads);
    o.check(a == b && a == c, fmt("two replays and a replay at another thread count byte-identical (%zu bytes)", a.size()));
    return o;
}

Outcome servo() {
    Outcome o;
    const ServoConfig cfg;
    {
        const CameraPose start = neutral_pose(cfg);
        Servo s(cfg, start);
        CameraPose target = start;
        target.position.x += 0.1;
        s.set_target(target);
        double settle = -1, peak = 0;
        for (int i = 1; i <= 300; ++i) {
            const double t = i * cfg.dt;
            s.step(t);
            const double x = s.rig().pose.position.x - start.position.x;
            peak = std::max(peak, x);
            if (std::abs(0.1 - x) > 0.002) settle = -1;
            else if (settle < 0) settle = t;
        }
        o.check(settle > 0 && settle <= 1.0 && peak <= 0.11,
                fmt("0.1 m step settles (2%% band) at %.2f s, overshoot %.1f%%", settle, 100.0 * (peak - 0.1) / 0.1));
    }
    {
        Servo s(cfg);
        CameraPose target = look_along(neutral_pose(cfg).position + Vec3{0.3, -0.2, -0.1}, {1, 0.2, -0.3}, kWorldUp);
        s.set_target(target);
        double v = 0, w = 0, rig_v = 0;
        for (int i = 1; i <= 400; ++i) {
            const auto r = s.step(i * cfg.dt);
            v = std::max(v, norm(r.command.linear));
            w = std::max(w, norm(r.command.angular));
            rig_v = std::max(rig_v, norm(s.rig().linear_vel));
        }
        o.check(v <= cfg.v_max + 1e-12 && w <= cfg.omega_max + 1e-12 && rig_v <= cfg.v_max + 1e-12,
                fmt("peak |v| %.3f <= %.2f m/s, |w| %.3f <= %.2f rad/s", std::max(v, rig_v), cfg.v_max, w, cfg.omega_max));
    }
    {
        const CameraPose parked = look_along(from_polar({0.3, 0.2, 0.655}, cfg.polar_origin), {0, 1, -0.2}, kWorldUp);
        Servo s(cfg, parked);
        s.set_target(parked);
        std::optional<double> fired, resumed;
        for (int i = 1; i <= 1000 && !resumed; ++i) {
            const auto r = s.step(i * cfg.dt);
            if (r.recovery) fired = i * cfg.dt;
            if (r.resumed) resumed = i * cfg.dt;
        }
        const bool at_neutral =
            resumed && distance(s.rig().pose.position, neutral_pose(cfg).position) < cfg.arrive_position;
        CameraPose next = neutral_pose(cfg);
        next.position += Vec3{0.05, 0, 0};
        s.set_target(next);
        for (int i = 1; i <= 200 && resumed; ++i) s.step(*resumed + i * cfg.dt);
        const bool tracks = s.rig().status == RigStatus::Tracking && distance(s.rig().pose.position, next.position) < 2e-3;
        o.check(fired && resumed && *resumed - *fired <= 5.0 && at_neutral && tracks,
                fmt("recovery fired at %.2f s, neutral reached %.2f s later, tracking %s", fired.value_or(-1),
                    resumed && fired ? *resumed - *fired : -1.0, tracks ? "resumed" : "not resumed"));
    }
    return o;
}

Outcome timing() {
    Outcome o;
    const SessionTrace trace = generate_scenario("full", 1);
    Pipeline p(effective_config(trace));
    p.set_keep_items(false);
    for (const auto& r : trace.records) p.push(r);
    const auto end = static_cast<std::int64_t>(std::llround(trace.header.duration * 1e6));
    const std::int64_t tick = p.config().tick_us();
    double worst = 0;
    int ticks = 0;
    const auto t0 = Clock::now();
    while (p.now_us() < end) {
        const bool is_tick = p.now_us() % tick == 0;
        const auto s0 = Clock::now();
        p.substep();
        if (is_tick) {
            worst = std::max(worst, seconds_since(s0));
            ++ticks;
        }
    }
    const double wall = seconds_since(t0);
    o.check(worst <= 0.2, fmt("slowest of %d ticks %.2f ms (budget 200 ms)", ticks, 1000.0 * worst));
    o.check(wall < trace.header.duration,
            fmt("%.0f s trace replayed in %.2f s (%.0fx real time)", trace.header.duration, wall,
                trace.header.duration / wall));
    return o;
}

} // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"optimizer-oracle agreement", optimizer_oracle},
        {"framing fidelity", framing},
        {"distance targets", distances},
        {"pitch and heading", pitch_heading},
        {"orbit geometry", orbit_geometry},
        {"cue suite", cue_suite},
        {"state-machine golden timeline", golden_timeline},
        {"servo", servo},
        {"timing budget", timing},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s  %-30s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed;
}
