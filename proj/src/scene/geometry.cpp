#include "autocam/scene/geometry.hpp"

#include <algorithm>

#include "autocam/errors.hpp"

namespace autocam {

namespace {

constexpr double kVerticalEps = 1e-9;

double clamp_axis(double v, double lo, double hi, double margin) {
    const double a = lo + margin;
    const double b = hi - margin;
    if (a > b) return 0.5 * (lo + hi);
    return std::clamp(v, a, b);
}

Vec3 level_up(const Vec3& forward) {
    return normalized(kWorldUp - forward * dot(kWorldUp, forward));
}

} // namespace

Vec3 normalized(const Vec3& v, double eps) {
    const double n = norm(v);
    if (!(n >= eps)) throw Error(ErrorCode::DegenerateRay, "cannot normalize a zero-length vector");
    return v / n;
}

Vec3 rotate(const Vec3& v, const Vec3& rotation_vector) {
    const double angle = norm(rotation_vector);
    if (angle < 1e-15) return v;
    const Vec3 k = rotation_vector / angle;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return v * c + cross(k, v) * s + k * (dot(k, v) * (1.0 - c));
}

Ray Ray::through(const Vec3& origin, const Vec3& direction) {
    return Ray{origin, normalized(direction)};
}

void CameraIntrinsics::validate() const {
    if (!(fov_h > 0.0 && fov_h < std::numbers::pi))
        throw Error(ErrorCode::InvalidConfig, "fov_h must lie in (0, pi)");
    if (!(aspect > 0.0)) throw Error(ErrorCode::InvalidConfig, "aspect must be positive");
}

CameraPose look_at(const Vec3& position, const Vec3& target) {
    const Vec3 d = target - position;
    if (norm(d) < 1e-12) throw Error(ErrorCode::DegeneratePose, "position equals target");
    const Vec3 f = normalized(d);
    if (norm(ground(f)) < kVerticalEps)
        throw Error(ErrorCode::DegeneratePose, "view direction is vertical");
    return CameraPose{position, f, level_up(f), 1.0};
}

CameraPose look_along(const Vec3& position, const Vec3& forward, const Vec3& fallback_up) {
    const Vec3 f = normalized(forward);
    if (norm(ground(f)) >= kVerticalEps) return CameraPose{position, f, level_up(f), 1.0};

    // Straight up or down: keep the previous up, projected into the image plane.
    Vec3 up = fallback_up - f * dot(fallback_up, f);
    if (norm(ground(up)) < 1e-6) up = Vec3{0.0, 1.0, 0.0};
    up = normalized(ground(up));
    return CameraPose{position, f, up, 1.0};
}

CameraPose look_at_or(const Vec3& position, const Vec3& target, const Vec3& fallback_up) {
    const Vec3 d = target - position;
    if (norm(d) < 1e-12) throw Error(ErrorCode::DegeneratePose, "position equals target");
    return look_along(position, d, fallback_up);
}

CameraPose aim_feature_at_fraction(const Vec3& position, const Vec3& feature,
                                   const CameraIntrinsics& intr, double zoom,
                                   double fraction_from_top, const Vec3& fallback_up) {
    const Vec3 d = feature - position;
    if (norm(d) < 1e-12) throw Error(ErrorCode::DegeneratePose, "position equals feature");
    const double horizontal = norm(ground(d));
    if (horizontal < kVerticalEps) return look_along(position, d, fallback_up);

    const double elevation = std::atan2(d.z, horizontal);
    const double offset =
        std::atan((0.5 - fraction_from_top) * 2.0 * std::tan(intr.fov_v() / 2.0) / zoom);
    const double pitch = std::clamp(elevation - offset, -std::numbers::pi / 2.0 + 1e-6,
                                    std::numbers::pi / 2.0 - 1e-6);
    const Vec3 heading = ground(d) / horizontal;
    CameraPose pose = look_along(position, heading * std::cos(pitch) + kWorldUp * std::sin(pitch),
                                 fallback_up);
    pose.zoom = zoom;
    return pose;
}

ImagePoint project(const CameraPose& pose, const CameraIntrinsics& intr, const Vec3& point) {
    const Vec3 d = point - pose.position;
    const double depth = dot(d, pose.forward);
    if (depth <= 0.0) throw Error(ErrorCode::BehindCamera, "point is not in front of the camera");
    const Vec3 right = pose.right();
    const double xc = dot(d, right) / depth;
    const double yc = dot(d, pose.up) / depth;
    return ImagePoint{0.5 + 0.5 * pose.zoom * xc / std::tan(intr.fov_h / 2.0),
                      0.5 - 0.5 * pose.zoom * yc / std::tan(intr.fov_v() / 2.0)};
}

PolarCoord to_polar(const Vec3& p, const Vec3& origin) {
    const Vec3 d = p - origin;
    const double r = norm(d);
    if (r < 1e-12) throw Error(ErrorCode::DegenerateRadius, "point coincides with the polar origin");
    return PolarCoord{std::atan2(d.z, std::hypot(d.x, d.y)), std::atan2(d.x, d.y), r};
}

Vec3 from_polar(const PolarCoord& c, const Vec3& origin) {
    const double ct = std::cos(c.theta);
    return origin + Vec3{c.R * ct * std::sin(c.psi), c.R * ct * std::cos(c.psi), c.R * std::sin(c.theta)};
}

std::array<Vec3, 3> polar_jacobian(const PolarCoord& c) {
    const double ct = std::cos(c.theta), st = std::sin(c.theta);
    const double cp = std::cos(c.psi), sp = std::sin(c.psi);
    return {Vec3{-c.R * st * sp, -c.R * st * cp, c.R * ct},
            Vec3{c.R * ct * cp, -c.R * ct * sp, 0.0},
            Vec3{ct * sp, ct * cp, st}};
}

bool PolarBounds::contains(const PolarCoord& c) const {
    constexpr double slack = 1e-12;
    auto in = [&](double v, double lo, double hi) {
        if (lo + margin > hi - margin) return std::abs(v - 0.5 * (lo + hi)) <= slack;
        return v >= lo + margin - slack && v <= hi - margin + slack;
    };
    return in(c.theta, theta_min, theta_max) && in(c.psi, psi_min, psi_max) && in(c.R, r_min, r_max);
}

PolarCoord PolarBounds::clamp(const PolarCoord& c) const {
    return PolarCoord{clamp_axis(c.theta, theta_min, theta_max, margin),
                      clamp_axis(c.psi, psi_min, psi_max, margin),
                      clamp_axis(c.R, r_min, r_max, margin)};
}

double PolarBounds::clearance(const PolarCoord& c) const {
    return std::min({c.theta - theta_min, theta_max - c.theta, c.psi - psi_min, psi_max - c.psi,
                     c.R - r_min, r_max - c.R});
}

void PolarBounds::validate() const {
    if (!(theta_min <= theta_max && psi_min <= psi_max && r_min <= r_max))
        throw Error(ErrorCode::InvalidConfig, "polar bounds are empty");
    if (!(r_min > 0.0)) throw Error(ErrorCode::InvalidConfig, "r_min must be positive");
    if (!(theta_min > -std::numbers::pi / 2.0 && theta_max < std::numbers::pi / 2.0))
        throw Error(ErrorCode::InvalidConfig, "theta bounds must stay inside (-pi/2, pi/2)");
    if (!(margin >= 0.0)) throw Error(ErrorCode::InvalidConfig, "bound margin must be non-negative");
}

} // namespace autocam
