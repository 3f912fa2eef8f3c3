#pragma once

#include <string>

#include "autocam/cues/config.hpp"
#include "autocam/director/types.hpp"
#include "autocam/planner/config.hpp"
#include "autocam/servo/servo.hpp"
#include "autocam/session/json_codec.hpp"

namespace autocam {

// Servo substeps per planner tick (100 Hz against 5 Hz by default).
inline constexpr int kServoSubsteps = 20;

struct RecordingConfig {
    int telemetry_decimation{5};  // keep every n-th 100 Hz telemetry sample
};

// Everything a replay or live session needs.  The servo's dt, bounds and polar
// origin are not configured separately: they follow the planner section.
struct SessionConfig {
    PlannerConfig planner;
    CueConfig cues;
    DirectorConfig director;
    ServoConfig servo;
    RecordingConfig recording;

    // Copies the derived servo fields and checks every section.  Throws InvalidConfig.
    void validate();

    // Planner config used for planning and orbits: the box is shrunk past the
    // limit monitor's band so steady targets never trigger a recovery.
    PlannerConfig planning() const;

    std::int64_t tick_us() const;
    std::int64_t substep_us() const { return tick_us() / kServoSubsteps; }
};

// Full config as a JSON document; every tunable appears with its current value.
Json to_json(const SessionConfig& cfg);

// Applies a partial document on top of cfg.  Unknown keys, wrong types and
// invalid values throw InvalidConfig naming the offending path.
void apply_overrides(SessionConfig& cfg, const Json& overrides);

// Reads a config document (JSON, comments allowed) without applying it.
Json read_config_document(const std::string& path);
SessionConfig load_config_file(const std::string& path);

} // namespace autocam
