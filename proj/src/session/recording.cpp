#include "autocam/session/recording.hpp"

#include <fstream>
#include <sstream>

#include "autocam/errors.hpp"

namespace autocam {

namespace {

constexpr const char* kFormat = "autocam-recording";

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedPayload, why); }

template <typename T, typename F>
T parse_enum(const Json& j, const char* key, F from) {
    const std::string s = require_string(j, key);
    const auto v = from(s);
    if (!v) malformed(std::string("unknown ") + key + " '" + s + "'");
    return *v;
}

std::optional<RigStatus> status_from_string(std::string_view s) {
    if (s == to_string(RigStatus::Tracking)) return RigStatus::Tracking;
    if (s == to_string(RigStatus::Recovering)) return RigStatus::Recovering;
    return std::nullopt;
}

Json encode_entry(const TimelineEntry& e) {
    return {{"shot", to_string(e.shot)},
            {"framing", to_string(e.framing)},
            {"angle", to_string(e.angle)},
            {"movement", to_string(e.movement)}};
}

TimelineEntry decode_entry(const Json& j, double t) {
    TimelineEntry e;
    e.t = t;
    e.shot = parse_enum<ShotType>(j, "shot", shot_from_string);
    e.framing = parse_enum<Framing>(j, "framing", framing_from_string);
    e.angle = parse_enum<Angle>(j, "angle", angle_from_string);
    e.movement = parse_enum<MovementKind>(j, "movement", movement_from_string);
    return e;
}

bool require_bool(const Json& j, const char* key) {
    const Json& v = require_field(j, key);
    if (!v.is_boolean()) malformed(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
}

int require_int(const Json& j, const char* key) {
    const Json& v = require_field(j, key);
    if (!v.is_number_integer()) malformed(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::optional<Vec3> optional_vec(const Json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return decode_vec3(*it);
}

Json encode(const Stats& s) { return {{"count", s.count}, {"mean", s.mean}, {"p95", s.p95}, {"max", s.max}}; }

Stats decode_stats(const Json& j) {
    Stats s;
    const Json& c = require_field(j, "count");
    if (!c.is_number_unsigned()) malformed("stats count must be a non-negative integer");
    s.count = c.get<std::size_t>();
    s.mean = require_number(j, "mean");
    s.p95 = require_number(j, "p95");
    s.max = require_number(j, "max");
    return s;
}

std::string bare(const Error& e) {
    const std::string w = e.what();
    const auto pos = w.find(": ");
    return pos == std::string::npos ? w : w.substr(pos + 2);
}

} // namespace

std::vector<TickRecord> SessionRecording::ticks() const {
    std::vector<TickRecord> out;
    for (const auto& i : items)
        if (const auto* r = std::get_if<TickRecord>(&i)) out.push_back(*r);
    return out;
}

std::vector<TimelineEntry> SessionRecording::timeline() const {
    std::vector<TimelineEntry> out;
    for (const auto& i : items)
        if (const auto* r = std::get_if<StateRecord>(&i)) out.push_back(r->entry);
    return out;
}

std::vector<CueEvent> SessionRecording::cues() const {
    std::vector<CueEvent> out;
    for (const auto& i : items)
        if (const auto* r = std::get_if<CueRecord>(&i)) out.push_back(r->cue);
    return out;
}

std::vector<TelemetryRecord> SessionRecording::telemetry() const {
    std::vector<TelemetryRecord> out;
    for (const auto& i : items)
        if (const auto* r = std::get_if<TelemetryRecord>(&i)) out.push_back(*r);
    return out;
}

Json encode(const RecordingItem& item) {
    return std::visit(
        overloaded{
            [](const TelemetryRecord& r) {
                return Json{{"type", "telemetry"},
                            {"t", r.t},
                            {"pose", encode(r.pose)},
                            {"linear_vel", encode(r.linear_vel)},
                            {"status", to_string(r.status)}};
            },
            [](const StateRecord& r) {
                Json j = encode_entry(r.entry);
                j["type"] = "state";
                j["t"] = r.entry.t;
                return j;
            },
            [](const CueRecord& r) {
                Json j = encode(r.cue);
                j["type"] = "cue";
                return j;
            },
            [](const TickRecord& r) {
                Json j{{"type", "tick"},
                       {"t", r.t},
                       {"state", encode_entry(r.state)},
                       {"subject", encode(r.subject)},
                       {"radius", r.radius},
                       {"heading", r.heading ? encode(*r.heading) : Json()},
                       {"fraction_from_top", r.fraction_from_top},
                       {"zoom", r.zoom},
                       {"desired_distance", r.desired_distance},
                       {"pitch_target", r.pitch_target},
                       {"gates", encode(r.gates)},
                       {"camera", encode(r.camera)},
                       {"status", to_string(r.status)},
                       {"planned", r.planned ? encode(*r.planned) : Json()},
                       {"waypoint", r.waypoint ? encode(*r.waypoint) : Json()},
                       {"cost", encode(r.cost)},
                       {"iterations", r.iterations},
                       {"evaluations", r.evaluations},
                       {"converged", r.converged},
                       {"holding", r.holding},
                       {"notes", r.notes}};
                return j;
            },
            [](const RigEventRecord& r) {
                return Json{{"type", r.kind == RigEventKind::Recovery ? "recovery" : "resume"},
                            {"t", r.t},
                            {"polar", {{"theta", r.polar.theta}, {"psi", r.polar.psi}, {"R", r.polar.R}}},
                            {"clearance", r.clearance}};
            }},
        item);
}

RecordingItem decode_item(const Json& j) {
    const std::string type = require_string(j, "type");
    const double t = require_number(j, "t");
    if (type == "telemetry") {
        TelemetryRecord r;
        r.t = t;
        r.pose = decode_pose(require_field(j, "pose"));
        r.linear_vel = decode_vec3(require_field(j, "linear_vel"));
        r.status = parse_enum<RigStatus>(j, "status", status_from_string);
        return r;
    }
    if (type == "state") return StateRecord{decode_entry(j, t)};
    if (type == "cue") return CueRecord{decode_cue(j)};
    if (type == "tick") {
        TickRecord r;
        r.t = t;
        r.state = decode_entry(require_field(j, "state"), t);
        r.subject = decode_vec3(require_field(j, "subject"));
        r.radius = require_number(j, "radius");
        r.heading = optional_vec(j, "heading");
        r.fraction_from_top = require_number(j, "fraction_from_top");
        r.zoom = require_number(j, "zoom");
        r.desired_distance = require_number(j, "desired_distance");
        r.pitch_target = require_number(j, "pitch_target");
        const Json& g = require_field(j, "gates");
        r.gates = {require_bool(g, "distance"), require_bool(g, "pitch"), require_bool(g, "orientation")};
        r.camera = decode_pose(require_field(j, "camera"));
        r.status = parse_enum<RigStatus>(j, "status", status_from_string);
        r.planned = optional_vec(j, "planned");
        r.waypoint = optional_vec(j, "waypoint");
        const Json& c = require_field(j, "cost");
        r.cost = {require_number(c, "smoothness"), require_number(c, "distance"), require_number(c, "pitch"),
                  require_number(c, "orientation"), require_number(c, "total")};
        r.iterations = require_int(j, "iterations");
        r.evaluations = require_int(j, "evaluations");
        r.converged = require_bool(j, "converged");
        r.holding = require_bool(j, "holding");
        const Json& notes = require_field(j, "notes");
        if (!notes.is_array()) malformed("notes must be an array");
        for (const auto& n : notes) {
            if (!n.is_string()) malformed("notes must be strings");
            r.notes.push_back(n.get<std::string>());
        }
        return r;
    }
    if (type == "recovery" || type == "resume") {
        RigEventRecord r;
        r.t = t;
        r.kind = type == "recovery" ? RigEventKind::Recovery : RigEventKind::Resume;
        const Json& p = require_field(j, "polar");
        r.polar = {require_number(p, "theta"), require_number(p, "psi"), require_number(p, "R")};
        r.clearance = require_number(j, "clearance");
        return r;
    }
    malformed("unknown record type '" + type + "'");
}

Json encode(const Metrics& m) {
    Json tl{{"counts", m.timeline.counts},
            {"durations", m.timeline.durations},
            {"shot_changes", m.timeline.shot_changes},
            {"framing_changes", m.timeline.framing_changes},
            {"angle_changes", m.timeline.angle_changes},
            {"movement_changes", m.timeline.movement_changes}};
    return {{"action_width_error", encode(m.action_width_error)},
            {"eye_line_error", encode(m.eye_line_error)},
            {"distance_error", encode(m.distance_error)},
            {"heading_error", encode(m.heading_error)},
            {"smoothness", encode(m.smoothness)},
            {"timeline", tl}};
}

Metrics decode_metrics(const Json& j) {
    Metrics m;
    m.action_width_error = decode_stats(require_field(j, "action_width_error"));
    m.eye_line_error = decode_stats(require_field(j, "eye_line_error"));
    m.distance_error = decode_stats(require_field(j, "distance_error"));
    m.heading_error = decode_stats(require_field(j, "heading_error"));
    m.smoothness = decode_stats(require_field(j, "smoothness"));
    const Json& tl = require_field(j, "timeline");
    try {
        m.timeline.counts = require_field(tl, "counts").get<std::map<std::string, int>>();
        m.timeline.durations = require_field(tl, "durations").get<std::map<std::string, double>>();
    } catch (const Json::exception& e) {
        malformed(std::string("timeline: ") + e.what());
    }
    m.timeline.shot_changes = require_int(tl, "shot_changes");
    m.timeline.framing_changes = require_int(tl, "framing_changes");
    m.timeline.angle_changes = require_int(tl, "angle_changes");
    m.timeline.movement_changes = require_int(tl, "movement_changes");
    return m;
}

void write_recording(const SessionRecording& rec, std::ostream& out) {
    const Json header{{"type", "header"},
                      {"format", kFormat},
                      {"version", kRecordingVersion},
                      {"config", rec.config},
                      {"layout", rec.layout},
                      {"duration", rec.duration}};
    out << header.dump() << '\n';
    for (const auto& item : rec.items) out << encode(item).dump() << '\n';
    if (rec.metrics) out << Json{{"type", "metrics"}, {"metrics", encode(*rec.metrics)}}.dump() << '\n';
}

void save_recording(const SessionRecording& rec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path);
    write_recording(rec, out);
}

std::string recording_to_string(const SessionRecording& rec) {
    std::ostringstream ss;
    write_recording(rec, ss);
    return ss.str();
}

SessionRecording read_recording(std::istream& in) {
    SessionRecording rec;
    std::string text;
    std::size_t line = 0;
    bool have_header = false;
    auto corrupt = [&](const std::string& why) -> void {
        throw Error(ErrorCode::CorruptRecord, "line " + std::to_string(line) + ": " + why);
    };
    while (std::getline(in, text)) {
        ++line;
        if (text.empty()) continue;
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            corrupt(std::string("not JSON: ") + e.what());
        }
        try {
            if (!have_header) {
                if (!j.is_object() || j.value("type", "") != "header" || j.value("format", "") != kFormat)
                    corrupt("expected an autocam-recording header");
                const Json& v = require_field(j, "version");
                if (!v.is_number_integer() || v.get<int>() != kRecordingVersion)
                    throw Error(ErrorCode::VersionMismatch, "recording version " + v.dump());
                rec.config = require_field(j, "config");
                rec.layout = j.value("layout", Json::object());
                rec.duration = require_number(j, "duration");
                have_header = true;
                continue;
            }
            if (j.value("type", "") == "metrics") {
                rec.metrics = decode_metrics(require_field(j, "metrics"));
                continue;
            }
            rec.items.push_back(decode_item(j));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::CorruptRecord || e.code() == ErrorCode::VersionMismatch) throw;
            corrupt(bare(e));
        }
    }
    if (!have_header) {
        line += 1;
        corrupt("missing header");
    }
    return rec;
}

SessionRecording load_recording(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::CorruptRecord, "cannot open " + path);
    return read_recording(in);
}

} // namespace autocam
