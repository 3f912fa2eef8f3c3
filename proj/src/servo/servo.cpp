#include "autocam/servo/servo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "autocam/errors.hpp"

namespace autocam {

namespace {

Eigen::Matrix3d frame_of(const CameraPose& p) {
    const Vec3 left = cross(p.up, p.forward);
    Eigen::Matrix3d m;
    m << p.forward.x, left.x, p.up.x,
         p.forward.y, left.y, p.up.y,
         p.forward.z, left.z, p.up.z;
    return m;
}

Vec3 saturate(const Vec3& v, double limit) {
    const double n = norm(v);
    return n > limit ? v * (limit / n) : v;
}

Vec3 clamp_position(const Vec3& p, const ServoConfig& cfg) {
    if (norm(p - cfg.polar_origin) < 1e-12) return from_polar(cfg.bounds.clamp({0, 0, cfg.bounds.r_min}), cfg.polar_origin);
    const PolarCoord c = to_polar(p, cfg.polar_origin);
    if (cfg.bounds.contains(c)) return p;
    return from_polar(cfg.bounds.clamp(c), cfg.polar_origin);
}

} // namespace

const char* to_string(RigStatus s) { return s == RigStatus::Tracking ? "tracking" : "recovering"; }

void ServoConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw Error(ErrorCode::InvalidConfig, what);
    };
    require(linear.kp > 0.0 && angular.kp > 0.0, "servo kp must be positive");
    require(linear.ki >= 0.0 && linear.kd >= 0.0 && angular.ki >= 0.0 && angular.kd >= 0.0,
            "servo ki and kd must be non-negative");
    require(linear.integral_limit >= 0.0 && angular.integral_limit >= 0.0, "integral limits must be non-negative");
    require(v_max > 0.0 && omega_max > 0.0, "velocity limits must be positive");
    require(zoom_rate > 0.0, "zoom_rate must be positive");
    require(dt > 0.0 && dt <= 0.1, "servo dt must be in (0, 0.1]");
    require(limit_epsilon > 0.0 && limit_dwell_s >= 0.0, "limit monitor settings must be positive");
    bounds.validate();
}

Vec3 orientation_error(const CameraPose& current, const CameraPose& target) {
    const Eigen::Matrix3d r = frame_of(target) * frame_of(current).transpose();
    const Eigen::AngleAxisd aa(r);
    const Eigen::Vector3d v = aa.axis() * aa.angle();
    return {v.x(), v.y(), v.z()};
}

Twist pid_step(const CameraRig& rig, const CameraPose& target, PidState& state, const ServoConfig& cfg, double dt) {
    const Vec3 e = target.position - rig.pose.position;
    const Vec3 lin_i = saturate(state.linear_integral + e * dt, cfg.linear.integral_limit);
    const Vec3 raw_lin = e * cfg.linear.kp + lin_i * cfg.linear.ki - rig.linear_vel * cfg.linear.kd;

    const Vec3 a = orientation_error(rig.pose, target);
    const Vec3 ang_i = saturate(state.angular_integral + a * dt, cfg.angular.integral_limit);
    const Vec3 raw_ang = a * cfg.angular.kp + ang_i * cfg.angular.ki - rig.angular_vel * cfg.angular.kd;

    Twist out{saturate(raw_lin, cfg.v_max), saturate(raw_ang, cfg.omega_max)};
    if (norm(raw_lin) <= cfg.v_max) state.linear_integral = lin_i;
    if (norm(raw_ang) <= cfg.omega_max) state.angular_integral = ang_i;
    return out;
}

CameraRig integrate(const CameraRig& rig, const Twist& twist, double dt, const ServoConfig& cfg) {
    CameraRig out = rig;
    const Vec3 moved = rig.pose.position + twist.linear * dt;
    out.pose.position = clamp_position(moved, cfg);
    out.linear_vel = moved == out.pose.position ? twist.linear : (out.pose.position - rig.pose.position) / dt;

    const Vec3 rv = twist.angular * dt;
    const Vec3 f = norm(rv) > 0.0 ? rotate(rig.pose.forward, rv) : rig.pose.forward;
    const Vec3 u = norm(rv) > 0.0 ? rotate(rig.pose.up, rv) : rig.pose.up;
    const CameraPose level = look_along(out.pose.position, f, u);
    out.pose.forward = level.forward;
    out.pose.up = level.up;
    out.angular_vel = twist.angular;
    return out;
}

std::optional<RecoveryEvent> LimitMonitor::update(double t, const Vec3& position) {
    const PolarCoord c = to_polar(position, cfg_.polar_origin);
    const double clearance = cfg_.bounds.clearance(c);
    if (clearance >= cfg_.limit_epsilon) {
        near_since_.reset();
        return std::nullopt;
    }
    if (!near_since_) near_since_ = t;
    if (t - *near_since_ > cfg_.limit_dwell_s + 1e-9) {
        near_since_.reset();
        return RecoveryEvent{t, c, clearance};
    }
    return std::nullopt;
}

CameraPose neutral_pose(const ServoConfig& cfg) {
    CameraPose p;
    p.position = from_polar({std::numbers::pi / 6.0, 0.0, 0.5}, cfg.polar_origin);
    p.forward = {0.0, 1.0, 0.0};
    p.up = kWorldUp;
    return p;
}

Servo::Servo(const ServoConfig& cfg, std::optional<CameraPose> initial) : cfg_(cfg), monitor_(cfg) {
    cfg_.validate();
    reset(initial.value_or(neutral_pose(cfg_)));
}

void Servo::reset(const CameraPose& pose) {
    rig_ = CameraRig{};
    rig_.pose = pose;
    rig_.pose.position = clamp_position(pose.position, cfg_);
    target_ = rig_.pose;
    pid_.reset();
    monitor_.reset();
}

void Servo::configure(const ServoConfig& cfg) {
    cfg.validate();
    cfg_ = cfg;
    monitor_ = LimitMonitor(cfg_);
}

void Servo::trigger_recovery() {
    rig_.status = RigStatus::Recovering;
    pid_.reset();
}

Servo::StepResult Servo::step(double t) {
    StepResult out;
    CameraPose goal = target_;
    if (rig_.status == RigStatus::Recovering) {
        goal = neutral_pose(cfg_);
        goal.zoom = rig_.pose.zoom;
    }
    out.command = pid_step(rig_, goal, pid_, cfg_, cfg_.dt);
    const double zoom = rig_.pose.zoom;
    rig_ = integrate(rig_, out.command, cfg_.dt, cfg_);
    const double dz = std::clamp(goal.zoom - zoom, -cfg_.zoom_rate * cfg_.dt, cfg_.zoom_rate * cfg_.dt);
    rig_.pose.zoom = zoom + dz;

    if (rig_.status == RigStatus::Recovering) {
        const bool arrived = distance(rig_.pose.position, goal.position) < cfg_.arrive_position &&
                             norm(orientation_error(rig_.pose, goal)) < cfg_.arrive_angle;
        if (arrived) {
            rig_.status = RigStatus::Tracking;
            pid_.reset();
            monitor_.reset();
            out.resumed = true;
        }
        return out;
    }
    if (auto ev = monitor_.update(t, rig_.pose.position)) {
        rig_.status = RigStatus::Recovering;
        pid_.reset();
        out.recovery = ev;
    }
    return out;
}

} // namespace autocam
