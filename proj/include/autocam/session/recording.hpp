#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "autocam/director/types.hpp"
#include "autocam/servo/servo.hpp"
#include "autocam/session/json_codec.hpp"

namespace autocam {

inline constexpr int kRecordingVersion = 1;

struct TelemetryRecord {
    double t{0.0};
    CameraPose pose;
    Vec3 linear_vel;
    RigStatus status{RigStatus::Tracking};
};

// Director tuple change (the first one is the initial state).
struct StateRecord {
    TimelineEntry entry;
};

struct CueRecord {
    CueEvent cue;
};

// Per-tick planner diagnostics.  `camera` is the rig pose at the tick.
struct TickRecord {
    double t{0.0};
    TimelineEntry state;
    Vec3 subject;
    double radius{0.0};
    std::optional<Vec3> heading;
    double fraction_from_top{0.5};
    double zoom{1.0};
    double desired_distance{0.0};
    double pitch_target{0.0};
    CostGates gates;
    CameraPose camera;
    RigStatus status{RigStatus::Tracking};
    std::optional<Vec3> planned;  // absent while recovering
    std::optional<Vec3> waypoint;
    CostBreakdown cost;
    int iterations{0};
    int evaluations{0};
    bool converged{false};
    bool holding{false};
    std::vector<std::string> notes;
};

enum class RigEventKind { Recovery, Resume };

struct RigEventRecord {
    double t{0.0};
    RigEventKind kind{RigEventKind::Recovery};
    PolarCoord polar;
    double clearance{0.0};
};

using RecordingItem = std::variant<TelemetryRecord, StateRecord, CueRecord, TickRecord, RigEventRecord>;

struct Stats {
    std::size_t count{0};
    double mean{0.0};
    double p95{0.0};
    double max{0.0};
};

struct TimelineSummary {
    // Keys such as "shot.action": entries into the value and seconds spent in it.
    std::map<std::string, int> counts;
    std::map<std::string, double> durations;
    int shot_changes{0};
    int framing_changes{0};
    int angle_changes{0};
    int movement_changes{0};
};

struct Metrics {
    Stats action_width_error;  // |projected sphere width / (1/3) - 1|, Action Normal ticks
    Stats eye_line_error;      // |eye v / (1/3) - 1|, Instructor ticks
    Stats distance_error;      // | |camera - subject| - d |, meters
    Stats heading_error;       // radians between the view heading and the target heading
    Stats smoothness;          // camera displacement per tick, meters
    TimelineSummary timeline;
};

struct SessionRecording {
    Json config = Json::object();  // full effective config
    Json layout = Json::object();
    double duration{0.0};
    std::vector<RecordingItem> items;
    std::optional<Metrics> metrics;

    std::vector<TickRecord> ticks() const;
    std::vector<TimelineEntry> timeline() const;
    std::vector<CueEvent> cues() const;
    std::vector<TelemetryRecord> telemetry() const;
};

Json encode(const RecordingItem& item);
RecordingItem decode_item(const Json& j);
Json encode(const Metrics& m);
Metrics decode_metrics(const Json& j);

void write_recording(const SessionRecording& rec, std::ostream& out);
void save_recording(const SessionRecording& rec, const std::string& path);
std::string recording_to_string(const SessionRecording& rec);

// Throws VersionMismatch or CorruptRecord (with the line number).
SessionRecording read_recording(std::istream& in);
SessionRecording load_recording(const std::string& path);

} // namespace autocam
