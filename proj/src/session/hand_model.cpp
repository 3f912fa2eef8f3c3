#include "autocam/session/hand_model.hpp"

#include <cmath>
#include <numbers>

namespace autocam {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct FingerGeometry {
    Vec3 base;
    std::array<double, 3> segments;
};

// Right hand, palm length 1.
constexpr std::array<FingerGeometry, 4> kFingers{{
    {{0.30, 0.95, 0.0}, {0.45, 0.27, 0.20}},
    {{0.10, 1.00, 0.0}, {0.50, 0.30, 0.22}},
    {{-0.10, 0.95, 0.0}, {0.47, 0.28, 0.20}},
    {{-0.28, 0.85, 0.0}, {0.37, 0.22, 0.18}},
}};

constexpr std::array<double, 3> kFlex{85.0 * kDeg, 105.0 * kDeg, 75.0 * kDeg};

void add_finger(std::vector<Vec3>& out, const FingerGeometry& g, double curl) {
    out.push_back(g.base);
    Vec3 p = g.base;
    double angle = 0.0;
    for (std::size_t s = 0; s < 3; ++s) {
        angle += curl * kFlex[s];
        // Flexion bends the finger away from the camera, toward the palm side.
        p += Vec3{0.0, std::cos(angle), -std::sin(angle)} * g.segments[s];
        out.push_back(p);
    }
}

void add_thumb(std::vector<Vec3>& out, double curl) {
    Vec3 p{0.22, 0.18, 0.0};
    out.push_back(p);
    Vec3 dir = normalized(Vec3{0.6, 0.8, 0.0});
    constexpr std::array<double, 3> len{0.35, 0.30, 0.25};
    for (double l : len) {
        // Curling swings the thumb across the palm and slightly under it.
        dir = normalized(rotate(dir, Vec3{0, 0, 1} * (curl * 45.0 * kDeg)) + Vec3{0, 0, -0.3 * curl});
        p += dir * l;
        out.push_back(p);
    }
}

} // namespace

HandPose pointing_pose() {
    HandPose p;
    p.curl = {0.7, 0.0, 1.0, 1.0, 1.0};
    return p;
}

HandPose fist_pose() {
    HandPose p;
    p.curl = {0.9, 1.0, 1.0, 1.0, 1.0};
    return p;
}

HandPose open_pose() {
    HandPose p;
    p.curl = {0.0, 0.0, 0.0, 0.0, 0.0};
    return p;
}

HandKeypoints render_hand(const HandPose& pose, Hand hand, double timestamp, double noise_sigma,
                          std::mt19937_64* rng) {
    std::vector<Vec3> pts;
    pts.reserve(kHandKeypointCount);
    pts.push_back({0.0, 0.0, 0.0});
    add_thumb(pts, pose.curl[0]);
    for (std::size_t f = 0; f < 4; ++f) add_finger(pts, kFingers[f], pose.curl[f + 1]);

    std::normal_distribution<double> noise(0.0, noise_sigma);
    HandKeypoints kp;
    kp.hand = hand;
    kp.timestamp = timestamp;
    for (Vec3 p : pts) {
        if (hand == Hand::Left) p.x = -p.x;
        p = rotate(p, Vec3{1, 0, 0} * pose.pitch);
        p = rotate(p, Vec3{0, 1, 0} * pose.yaw);
        p = rotate(p, Vec3{0, 0, 1} * pose.roll);
        double x = p.x;
        double y = p.y;
        if (rng && noise_sigma > 0.0) {
            x += noise(*rng);
            y += noise(*rng);
        }
        // Image y grows downward.
        kp.points.push_back({pose.offset.x + pose.scale * x, pose.offset.y - pose.scale * y});
    }
    return kp;
}

std::vector<LabeledHand> generate_gesture_corpus(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto range = [&](double a, double b) { return a + (b - a) * u(rng); };

    std::vector<LabeledHand> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        HandPose pose;
        bool label = false;
        std::string category;
        const double pick = u(rng);
        const double curled_lo = 0.75;
        if (pick < 0.4) {
            category = "point";
            label = true;
            pose.curl = {range(0.3, 1.0), range(0.0, 0.12), range(curled_lo, 1.0), range(curled_lo, 1.0),
                         range(curled_lo, 1.0)};
        } else if (pick < 0.55) {
            category = "fist";
            pose.curl = {range(0.5, 1.0), range(curled_lo, 1.0), range(curled_lo, 1.0), range(curled_lo, 1.0),
                         range(curled_lo, 1.0)};
        } else if (pick < 0.7) {
            category = "open";
            pose.curl = {range(0.0, 0.3), range(0.0, 0.2), range(0.0, 0.2), range(0.0, 0.2), range(0.0, 0.2)};
        } else if (pick < 0.8) {
            category = "two_finger";
            pose.curl = {range(0.3, 1.0), range(0.0, 0.15), range(0.0, 0.15), range(curled_lo, 1.0),
                         range(curled_lo, 1.0)};
        } else if (pick < 0.9) {
            category = "half_curled_index";
            pose.curl = {range(0.3, 1.0), range(0.5, 0.75), range(curled_lo, 1.0), range(curled_lo, 1.0),
                         range(curled_lo, 1.0)};
        } else {
            category = "relaxed";
            pose.curl = {range(0.2, 0.6), range(0.3, 0.6), range(0.3, 0.6), range(0.3, 0.6), range(0.3, 0.6)};
        }
        pose.roll = range(-std::numbers::pi, std::numbers::pi);
        pose.pitch = range(-35.0, 35.0) * kDeg;
        pose.yaw = range(-40.0, 40.0) * kDeg;
        pose.scale = range(0.05, 0.2);
        pose.offset = {range(0.2, 0.8), range(0.2, 0.8)};
        const Hand hand = u(rng) < 0.5 ? Hand::Left : Hand::Right;
        out.push_back({render_hand(pose, hand, 0.04 * static_cast<double>(i), 0.02, &rng), label, category});
    }
    return out;
}

} // namespace autocam
