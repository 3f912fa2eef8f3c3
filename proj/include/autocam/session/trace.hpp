#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "autocam/cues/types.hpp"
#include "autocam/session/json_codec.hpp"

namespace autocam {

inline constexpr int kTraceVersion = 1;

// Partial config applied at the first tick boundary at or after t.
struct ConfigPatch {
    double timestamp{0.0};
    Json patch;

    bool operator==(const ConfigPatch&) const = default;
};

// An externally injected cue (UI steering); it bypasses gesture classification.
struct InjectedCue {
    CueEvent cue;
};

using TraceRecord = std::variant<SkeletonFrame, HandKeypoints, Utterance, InjectedCue, ConfigPatch>;

double timestamp_of(const TraceRecord& r);
void set_timestamp(TraceRecord& r, double t);

struct TraceHeader {
    int version{kTraceVersion};
    CameraIntrinsics intrinsics;
    Json layout = Json::object();  // free-form scene description (scenario name, rest pose)
    Json config = Json::object();  // overrides on top of the default config
    double duration{0.0};          // seconds of session to simulate
};

struct SessionTrace {
    TraceHeader header;
    std::vector<TraceRecord> records;
};

Json encode(const TraceRecord& r);
TraceRecord decode_record(const Json& j);

// JSON-lines: one header line, then one record per line.  Records must be
// time-sorted.  Throws VersionMismatch or CorruptRecord (with the line number).
SessionTrace read_trace(std::istream& in);
SessionTrace load_trace(const std::string& path);

void write_trace(const SessionTrace& trace, std::ostream& out);
void save_trace(const SessionTrace& trace, const std::string& path);

std::string trace_to_string(const SessionTrace& trace);

} // namespace autocam
