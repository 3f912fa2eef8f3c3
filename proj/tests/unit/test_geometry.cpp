#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "autocam/errors.hpp"
#include "autocam/scene/geometry.hpp"

using namespace autocam;

namespace {

constexpr double kPi = std::numbers::pi;

void check_level(const CameraPose& p) {
    CHECK(std::abs(dot(p.forward, p.up)) < 1e-9);
    CHECK(std::abs(norm(p.forward) - 1.0) < 1e-12);
    CHECK(std::abs(norm(p.up) - 1.0) < 1e-12);
    CHECK(std::abs(p.right().z) < 1e-9);
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an autocam::Error");
    return ErrorCode::InvalidConfig;
}

} // namespace

TEST_CASE("look_at on an axis-aligned view") {
    const CameraPose p = look_at({1, 0, 0}, {0, 0, 0});
    CHECK(p.forward.x == doctest::Approx(-1.0));
    CHECK(p.forward.y == doctest::Approx(0.0));
    CHECK(p.up.z == doctest::Approx(1.0));
    CHECK(p.zoom == 1.0);
}

TEST_CASE("look_at rejects vertical and zero-length views") {
    CHECK(code_of([] { look_at({0, 0, 1}, {0, 0, 0}); }) == ErrorCode::DegeneratePose);
    CHECK(code_of([] { look_at({0.3, 0.2, 0.1}, {0.3, 0.2, 0.1}); }) == ErrorCode::DegeneratePose);
}

TEST_CASE("look_at diagonal keeps the horizon level") {
    const CameraPose p = look_at({1, 1, 1}, {0, 0, 0});
    const double s = 1.0 / std::sqrt(3.0);
    CHECK(p.forward.x == doctest::Approx(-s));
    CHECK(p.forward.y == doctest::Approx(-s));
    CHECK(p.forward.z == doctest::Approx(-s));
    // Gram-Schmidt of +z against forward, computed by hand.
    const Vec3 expected_up = normalized(Vec3{0, 0, 1} - p.forward * (-s));
    CHECK(p.up.x == doctest::Approx(expected_up.x));
    CHECK(p.up.z == doctest::Approx(expected_up.z));
    check_level(p);
}

TEST_CASE("vertical view falls back to the previous up vector") {
    const CameraPose p = look_at_or({0, 0, 1}, {0, 0, 0}, {0, 1, 0.2});
    CHECK(p.forward.z == doctest::Approx(-1.0));
    CHECK(p.up.y == doctest::Approx(1.0));
    check_level(p);
}

TEST_CASE("level pose property over random views") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 a{u(rng), u(rng), u(rng)};
        const Vec3 b{u(rng), u(rng), u(rng)};
        if (norm(ground(b - a)) < 1e-3) continue;
        check_level(look_at(a, b));
    }
}

TEST_CASE("projection of the optical axis and the frustum edge") {
    const CameraIntrinsics intr;
    const CameraPose p = look_at({0, 0, 0}, {0, 1, 0});
    const ImagePoint c = project(p, intr, {0, 2, 0});
    CHECK(c.u == doctest::Approx(0.5));
    CHECK(c.v == doctest::Approx(0.5));

    const double edge = std::tan(intr.fov_h / 2.0);
    CHECK(project(p, intr, {edge, 1, 0}).u == doctest::Approx(1.0));
    CHECK(project(p, intr, {-edge, 1, 0}).u == doctest::Approx(0.0));
    const double top = std::tan(intr.fov_v() / 2.0);
    CHECK(project(p, intr, {0, 1, top}).v == doctest::Approx(0.0));
}

TEST_CASE("zoom scales the focal length") {
    const CameraIntrinsics intr;
    CameraPose p = look_at({0, 0, 0}, {0, 1, 0});
    // Analytic oracle: u = 0.5 + 0.5 * zoom * tan(a) / tan(fov_h / 2).
    const double a = std::atan(0.5 * std::tan(intr.fov_h / 2.0));
    const Vec3 point{std::sin(a), std::cos(a), 0.0};
    CHECK(project(p, intr, point).u == doctest::Approx(0.75));
    p.zoom = 2.0;
    CHECK(project(p, intr, point).u == doctest::Approx(1.0));
}

TEST_CASE("points behind the camera are rejected") {
    const CameraPose p = look_at({0, 0, 0}, {0, 1, 0});
    CHECK(code_of([&] { project(p, CameraIntrinsics{}, {0, -1, 0}); }) == ErrorCode::BehindCamera);
    CHECK(code_of([&] { project(p, CameraIntrinsics{}, {1, 0, 0}); }) == ErrorCode::BehindCamera);
}

TEST_CASE("projection is monotone in the off-axis angle") {
    const CameraIntrinsics intr;
    const CameraPose p = look_at({0.1, -0.2, 0.3}, {0.5, 1.0, 0.2});
    const Vec3 r = p.right();
    double last = -1.0;
    for (int k = 0; k <= 20; ++k) {
        const double off = 0.02 * k;
        const ImagePoint ip = project(p, intr, p.position + p.forward + r * off + p.up * (0.5 * off));
        const double dist = std::hypot(ip.u - 0.5, ip.v - 0.5);
        CHECK(dist > last);
        last = dist;
    }
}

TEST_CASE("feature framed at one third from the top") {
    const CameraIntrinsics intr;
    const Vec3 eye{0.4, 0.5, 0.55};
    for (double zoom : {1.0, 2.0}) {
        for (const Vec3 cam : {Vec3{0.2, 0.5, 0.55}, Vec3{0.1, 0.3, 0.7}, Vec3{0.3, 0.45, 0.4}}) {
            const CameraPose p = aim_feature_at_fraction(cam, eye, intr, zoom, 1.0 / 3.0, kWorldUp);
            const ImagePoint ip = project(p, intr, eye);
            CHECK(ip.u == doctest::Approx(0.5).epsilon(1e-9));
            CHECK(ip.v == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
            check_level(p);
        }
    }
}

TEST_CASE("polar coordinates use +y as the azimuth reference") {
    const Vec3 o = kPolarOriginOffset;
    const PolarCoord a = to_polar(o + Vec3{0, 0.5, 0});
    CHECK(a.theta == doctest::Approx(0.0));
    CHECK(a.psi == doctest::Approx(0.0));
    CHECK(a.R == doctest::Approx(0.5));

    const PolarCoord b = to_polar(o + Vec3{0.5, 0, 0});
    CHECK(b.psi == doctest::Approx(kPi / 2.0));

    const PolarCoord c = to_polar(o + Vec3{0, 0, 0.5});
    CHECK(c.theta == doctest::Approx(kPi / 2.0));
    CHECK(c.R == doctest::Approx(0.5));

    CHECK(code_of([&] { to_polar(o); }) == ErrorCode::DegenerateRadius);
}

TEST_CASE("polar round trip over the legal shell") {
    std::mt19937_64 rng(42);
    const PolarBounds b;
    std::uniform_real_distribution<double> th(b.theta_min, b.theta_max);
    std::uniform_real_distribution<double> ps(b.psi_min, b.psi_max);
    std::uniform_real_distribution<double> rr(b.r_min, b.r_max);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 p = from_polar({th(rng), ps(rng), rr(rng)});
        worst = std::max(worst, distance(from_polar(to_polar(p)), p));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("polar jacobian matches central differences") {
    const PolarCoord c{0.3, -0.4, 0.5};
    const auto J = polar_jacobian(c);
    const double h = 1e-6;
    auto fd = [&](int axis) {
        PolarCoord a = c, b = c;
        double* pa = axis == 0 ? &a.theta : axis == 1 ? &a.psi : &a.R;
        double* pb = axis == 0 ? &b.theta : axis == 1 ? &b.psi : &b.R;
        *pa += h;
        *pb -= h;
        return (from_polar(a) - from_polar(b)) / (2 * h);
    };
    for (int axis = 0; axis < 3; ++axis) CHECK(distance(fd(axis), J[axis]) < 1e-8);
}

TEST_CASE("bounds clamp, contain and collapse") {
    const PolarBounds b;
    const PolarCoord c = b.clamp({2.0, -3.0, 1.0});
    CHECK(b.contains(c));
    CHECK(c.theta == doctest::Approx(b.theta_max - b.margin));
    CHECK(c.R == doctest::Approx(b.r_max - b.margin));
    CHECK_FALSE(b.contains({0.0, 0.0, 0.7}));

    PolarBounds point = b;
    point.r_min = point.r_max = 0.5;
    CHECK(point.clamp({0.1, 0.1, 0.3}).R == doctest::Approx(0.5));
}

TEST_CASE("rotation vector rotates about its axis") {
    const Vec3 v = rotate({1, 0, 0}, {0, 0, kPi / 2.0});
    CHECK(v.x == doctest::Approx(0.0));
    CHECK(v.y == doctest::Approx(1.0));
}
