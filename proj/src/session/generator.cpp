#include "autocam/session/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "autocam/errors.hpp"

namespace autocam {

namespace {

Vec3 lerp(const Vec3& a, const Vec3& b, double s) { return a + (b - a) * s; }

PuppetHand pointing_at(Hand, Vec3 tip, Vec3 wrist) { return {wrist, tip, true, pointing_pose()}; }

struct Builder {
    PuppetScript s;
    PuppetKey cur{0.0, rest_hand(Hand::Left), rest_hand(Hand::Right)};

    Builder() { s.keys.push_back(cur); }

    PuppetHand& hand(Hand h) { return h == Hand::Left ? cur.left : cur.right; }

    // Holds the current state until t, then switches discrete fields and
    // moves positions to the new values over `move` seconds.
    template <typename F>
    void at(double t, double move, F&& change) {
        cur.t = t;
        s.keys.push_back(cur);
        const PuppetKey before = cur;
        change(*this);
        if (move > 0.0) {
            // Same instant, new pose and visibility, old positions.
            PuppetKey mid = cur;
            mid.t = t;
            mid.left.wrist = before.left.wrist;
            mid.left.tip = before.left.tip;
            mid.right.wrist = before.right.wrist;
            mid.right.tip = before.right.tip;
            s.keys.push_back(mid);
        }
        cur.t = t + move;
        s.keys.push_back(cur);
    }

    void say(double t, std::string text) { s.utterances.push_back({t, std::move(text)}); }
};

// Offsets used when rendering keypoints; they only set where the hand sits in the image.
Point2 image_offset(Hand h) { return h == Hand::Left ? Point2{0.62, 0.62} : Point2{0.38, 0.62}; }

void lego_cycle(Builder& b, double t0) {
    using H = Hand;
    // Point at a part on the bench with the right hand, then stop.
    b.at(t0 + 2.0, 0.3, [](Builder& k) {
        k.hand(H::Right) = pointing_at(H::Right, {0.10, 0.62, 0.10}, {0.22, 0.60, 0.14});
    });
    b.at(t0 + 4.0, 0.3, [](Builder& k) { k.hand(H::Right) = rest_hand(H::Right); });
    // Raise the right hand above the shoulder, then bring it to the chest.
    b.at(t0 + 5.0, 0.4, [](Builder& k) {
        k.hand(H::Right).tip = {0.40, 0.72, 0.60};
        k.hand(H::Right).wrist = {0.42, 0.70, 0.48};
    });
    b.at(t0 + 7.0, 0.3, [](Builder& k) {
        k.hand(H::Right).tip = {0.30, 0.62, 0.34};
        k.hand(H::Right).wrist = {0.38, 0.64, 0.33};
    });
    b.say(t0 + 7.5, "If you look closer, you can see this socket takes a hexagon shape");
    b.say(t0 + 9.0, "It is better to look from the top to see how I take the headband off");
    // Hide the right hand, then put it back on the bench.
    b.at(t0 + 10.5, 0.0, [](Builder& k) { k.hand(H::Right).visible = false; });
    b.at(t0 + 12.0, 0.0, [](Builder& k) { k.hand(H::Right) = rest_hand(H::Right); });
    // Point with both hands: orbit around the spot between the fingertips.
    b.at(t0 + 15.0, 0.3, [](Builder& k) {
        k.hand(H::Left) = pointing_at(H::Left, {0.05, 0.45, 0.10}, {0.17, 0.43, 0.13});
        k.hand(H::Right) = pointing_at(H::Right, {0.05, 0.55, 0.10}, {0.17, 0.57, 0.13});
    });
    b.at(t0 + 17.0, 0.3, [](Builder& k) {
        k.hand(H::Left) = rest_hand(H::Left);
        k.hand(H::Right) = rest_hand(H::Right);
    });
    // Point and sweep sideways along the bench: truck.
    b.at(t0 + 21.0, 0.3, [](Builder& k) {
        k.hand(H::Right) = pointing_at(H::Right, {0.10, 0.62, 0.10}, {0.22, 0.60, 0.14});
    });
    b.at(t0 + 22.0, 1.0, [](Builder& k) {
        k.hand(H::Right).tip = {0.10, 0.22, 0.10};
        k.hand(H::Right).wrist = {0.22, 0.20, 0.14};
    });
    b.at(t0 + 24.5, 0.3, [](Builder& k) { k.hand(H::Right) = rest_hand(H::Right); });
    b.say(t0 + 25.5, "Now I will glue these parts together");
}

constexpr double kLegoCycle = 28.0;

} // namespace

SkeletonFrame seated_rest_frame(double t) {
    SkeletonFrame f;
    f.timestamp = t;
    auto set = [&](Joint j, Vec3 p) { f[j] = {p, true}; };
    set(Joint::Head, {0.42, 0.5, 0.62});
    set(Joint::Eyes, {0.40, 0.5, 0.55});
    set(Joint::ShoulderL, {0.45, 0.32, 0.38});
    set(Joint::ShoulderR, {0.45, 0.68, 0.38});
    set(Joint::WristL, {0.25, 0.42, 0.12});
    set(Joint::WristR, {0.25, 0.58, 0.12});
    set(Joint::FingertipL, {0.15, 0.42, 0.12});
    set(Joint::FingertipR, {0.15, 0.58, 0.12});
    return f;
}

PuppetHand rest_hand(Hand h) {
    const SkeletonFrame f = seated_rest_frame();
    return {f[wrist(h)].position, f[fingertip(h)].position, true, open_pose()};
}

SessionTrace render_script(const PuppetScript& script, std::uint64_t seed, const std::string& scenario) {
    if (script.keys.empty()) throw Error(ErrorCode::InvalidConfig, "script has no keys");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, script.joint_noise);
    const SkeletonFrame rest = seated_rest_frame();

    SessionTrace trace;
    trace.header.duration = script.duration;
    Json rest_joints = Json::object();
    for (Joint j : kAllJoints) rest_joints[to_string(j)] = encode(rest[j].position);
    trace.header.layout = {{"scenario", scenario}, {"seed", seed}, {"posture", "seated"}, {"rest", rest_joints}};

    std::vector<TraceRecord> frames;
    const auto n = static_cast<std::size_t>(std::floor(script.duration * script.frame_rate + 1e-9));
    std::size_t key = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / script.frame_rate;
        while (key + 1 < script.keys.size() && script.keys[key + 1].t <= t) ++key;
        const PuppetKey& a = script.keys[key];
        const PuppetKey& b = key + 1 < script.keys.size() ? script.keys[key + 1] : a;
        const double s = b.t > a.t ? std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0) : 0.0;

        SkeletonFrame f = rest;
        f.timestamp = t;
        for (Joint j : {Joint::Head, Joint::Eyes, Joint::ShoulderL, Joint::ShoulderR})
            f[j].position += Vec3{jitter(rng), jitter(rng), jitter(rng)};
        for (Hand h : kHands) {
            const PuppetHand& ha = h == Hand::Left ? a.left : a.right;
            const PuppetHand& hb = h == Hand::Left ? b.left : b.right;
            const Vec3 noise_w{jitter(rng), jitter(rng), jitter(rng)};
            const Vec3 noise_t{jitter(rng), jitter(rng), jitter(rng)};
            f[wrist(h)] = {lerp(ha.wrist, hb.wrist, s) + noise_w, ha.visible};
            f[fingertip(h)] = {lerp(ha.tip, hb.tip, s) + noise_t, ha.visible};
        }
        frames.emplace_back(f);
        for (Hand h : kHands) {
            const PuppetHand& ha = h == Hand::Left ? a.left : a.right;
            if (!ha.visible) continue;
            HandPose pose = ha.pose;
            pose.offset = image_offset(h);
            frames.emplace_back(render_hand(pose, h, t, script.keypoint_noise, &rng));
        }
    }

    // Merge: utterances and injected cues go after sensor records with the same timestamp.
    std::vector<TraceRecord> extra;
    for (const auto& u : script.utterances) extra.emplace_back(u);
    for (const auto& c : script.injected) extra.emplace_back(c);
    std::stable_sort(extra.begin(), extra.end(),
                     [](const TraceRecord& x, const TraceRecord& y) { return timestamp_of(x) < timestamp_of(y); });
    std::merge(frames.begin(), frames.end(), extra.begin(), extra.end(), std::back_inserter(trace.records),
               [](const TraceRecord& x, const TraceRecord& y) { return timestamp_of(x) < timestamp_of(y); });
    return trace;
}

std::vector<std::string> scenario_names() { return {"lego", "full", "stationary", "instructor", "object", "high"}; }

PuppetScript scenario_script(const std::string& name) {
    Builder b;
    if (name == "lego") {
        lego_cycle(b, 0.0);
        b.s.duration = kLegoCycle;
    } else if (name == "full") {
        constexpr double kFive = 300.0;
        for (double t0 = 0.0; t0 < kFive; t0 += kLegoCycle) lego_cycle(b, t0);
        b.s.duration = kFive;
    } else if (name == "stationary") {
        b.s.duration = 30.0;
    } else if (name == "instructor") {
        b.at(1.0, 0.4, [](Builder& k) {
            k.hand(Hand::Right).tip = {0.40, 0.72, 0.60};
            k.hand(Hand::Right).wrist = {0.42, 0.70, 0.48};
        });
        b.at(3.0, 0.3, [](Builder& k) {
            k.hand(Hand::Right).tip = {0.30, 0.62, 0.34};
            k.hand(Hand::Right).wrist = {0.38, 0.64, 0.33};
        });
        b.s.duration = 20.0;
    } else if (name == "object") {
        // A part held up near the middle of the bench, inside the rig's reach.
        b.at(1.0, 0.3, [](Builder& k) {
            k.hand(Hand::Right) = pointing_at(Hand::Right, {0.08, 0.45, 0.20}, {0.20, 0.47, 0.24});
        });
        b.s.duration = 20.0;
    } else if (name == "high") {
        b.say(1.0, "I want you to take a top-down perspective now so that you see the full model.");
        b.s.duration = 20.0;
    } else {
        throw Error(ErrorCode::InvalidConfig, "unknown scenario '" + name + "'");
    }
    // Keys past the end are harmless but trimmed to keep the script tidy.
    auto& keys = b.s.keys;
    keys.erase(std::remove_if(keys.begin() + 1, keys.end(), [&](const PuppetKey& k) { return k.t > b.s.duration; }),
               keys.end());
    return b.s;
}

SessionTrace generate_scenario(const std::string& name, std::uint64_t seed) {
    PuppetScript script = scenario_script(name);
    auto& u = script.utterances;
    u.erase(std::remove_if(u.begin(), u.end(), [&](const Utterance& x) { return x.timestamp > script.duration; }),
            u.end());
    return render_script(script, seed, name);
}

} // namespace autocam
