#pragma once

#include <optional>
#include <string>

#include "autocam/scene/geometry.hpp"

namespace autocam {

struct PidGains {
    double kp{0.0};
    double ki{0.0};
    double kd{0.0};
    double integral_limit{0.2};  // bound on the magnitude of the integral state
};

struct ServoConfig {
    // Linear gains retuned from 4 / 0.1 / 0.4: those settle a 0.1 m step in 1.25 s.
    PidGains linear{6.0, 0.1, 0.3, 0.2};
    PidGains angular{6.0, 0.0, 0.5, 0.2};
    double v_max{0.5};      // m/s
    double omega_max{1.5};  // rad/s
    double zoom_rate{2.0};  // zoom units per second
    double dt{0.01};
    double limit_epsilon{0.02};  // meters for R, radians for theta and psi
    double limit_dwell_s{0.5};
    double arrive_position{0.005};
    double arrive_angle{0.01};
    PolarBounds bounds;
    Vec3 polar_origin{kPolarOriginOffset};

    void validate() const;
};

enum class RigStatus { Tracking, Recovering };

const char* to_string(RigStatus s);

struct Twist {
    Vec3 linear;
    Vec3 angular;  // rotation vector rate, world frame
};

struct CameraRig {
    CameraPose pose;
    Vec3 linear_vel;
    Vec3 angular_vel;
    RigStatus status{RigStatus::Tracking};
};

struct PidState {
    Vec3 linear_integral;
    Vec3 angular_integral;

    void reset() { *this = PidState{}; }
};

// Rotation vector that turns the current camera frame onto the target frame.
Vec3 orientation_error(const CameraPose& current, const CameraPose& target);

// PID on position and orientation error.  The derivative acts on the measured
// rig velocity, so target jumps do not kick the output.  Saturated at v_max and
// omega_max; the integral only accumulates while the output is unsaturated.
Twist pid_step(const CameraRig& rig, const CameraPose& target, PidState& state, const ServoConfig& cfg,
               double dt);

// Explicit Euler step.  The frame is re-leveled, the position is clamped into
// the polar bounds, and the stored velocities are the ones actually achieved.
CameraRig integrate(const CameraRig& rig, const Twist& twist, double dt, const ServoConfig& cfg);

struct RecoveryEvent {
    double t{0.0};
    PolarCoord polar;
    double clearance{0.0};
};

// Fires once the rig has stayed within limit_epsilon of a bound for longer than limit_dwell_s.
class LimitMonitor {
public:
    explicit LimitMonitor(const ServoConfig& cfg = {}) : cfg_(cfg) {}

    std::optional<RecoveryEvent> update(double t, const Vec3& position);
    void reset() { near_since_.reset(); }

private:
    ServoConfig cfg_;
    std::optional<double> near_since_;
};

// Polar (pi/6, 0, 0.5) about the polar origin, level, looking along +y.
CameraPose neutral_pose(const ServoConfig& cfg = {});

// The 100 Hz loop: tracks the latest planner target, or the neutral pose while recovering.
class Servo {
public:
    explicit Servo(const ServoConfig& cfg = {}, std::optional<CameraPose> initial = std::nullopt);

    void set_target(const CameraPose& target) { target_ = target; }
    const CameraPose& target() const { return target_; }

    struct StepResult {
        std::optional<RecoveryEvent> recovery;
        bool resumed{false};
        Twist command;
    };
    // Advances one dt; t is the simulated time at the end of the step.
    StepResult step(double t);

    // Switches to recovery immediately, as if the limit monitor had fired.
    void trigger_recovery();

    const CameraRig& rig() const { return rig_; }
    const ServoConfig& config() const { return cfg_; }
    void reset(const CameraPose& pose);
    // New gains and limits; the rig state, target and integrators are kept.
    void configure(const ServoConfig& cfg);

private:
    ServoConfig cfg_;
    CameraRig rig_;
    CameraPose target_;
    PidState pid_;
    LimitMonitor monitor_;
};

} // namespace autocam
