#pragma once

#include <numbers>
#include <optional>

#include "autocam/scene/geometry.hpp"

namespace autocam {

struct CostWeights {
    double smoothness{1.0};
    double distance{0.2};
    double pitch{1.0};
    double orientation{0.5};
};

struct SolverOptions {
    int max_iterations{200};
    double gradient_tolerance{1e-10};
    double step_tolerance{1e-12};
    // Also start from the best point of a coarse grid over the box and keep
    // the better of the two local solutions.
    bool coarse_seed{true};
    int coarse_theta{9};
    int coarse_psi{13};
    int coarse_r{7};
};

// How the orbit's "pitch" angle is read: elevation of the camera above the
// center's horizontal plane, or angle of the view measured from vertical.
enum class OrbitPitchMode { Elevation, FromVertical };

struct OrbitConfig {
    double distance{0.6};
    double pitch{std::numbers::pi / 6.0};
    double arc{std::numbers::pi / 4.0};
    int waypoints{21};
    OrbitPitchMode pitch_mode{OrbitPitchMode::Elevation};
};

struct PlannerConfig {
    CostWeights weights;
    PolarBounds bounds;
    Vec3 polar_origin{kPolarOriginOffset};
    double tick_hz{5.0};
    CameraIntrinsics intrinsics;
    SolverOptions solver;
    OrbitConfig orbit;

    double tick_seconds() const { return 1.0 / tick_hz; }
    void validate() const;
};

struct CostGates {
    bool distance{true};
    bool pitch{false};
    bool orientation{false};

    bool operator==(const CostGates&) const = default;
};

// Everything the cost function reads for one planning step.
struct PlanningContext {
    Vec3 current;                      // x_t
    Vec3 subject;                      // x_s
    double desired_distance{0.2};      // d
    double pitch_target{std::numbers::pi / 2.0};  // beta: pi/2 level, 0 straight down
    std::optional<Vec3> heading_target;  // v_o, unit, ground plane
    CostGates gates;
};

struct CostBreakdown {
    double smoothness{0.0};
    double distance{0.0};
    double pitch{0.0};
    double orientation{0.0};
    double total{0.0};
};

} // namespace autocam
