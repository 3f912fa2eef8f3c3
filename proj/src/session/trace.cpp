#include "autocam/session/trace.hpp"

#include <fstream>
#include <sstream>

#include "autocam/errors.hpp"

namespace autocam {

namespace {

constexpr const char* kFormat = "autocam-trace";

[[noreturn]] void corrupt(std::size_t line, const std::string& why) {
    throw Error(ErrorCode::CorruptRecord, "line " + std::to_string(line) + ": " + why);
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Strips the "Code: " prefix so wrapped messages do not repeat it.
std::string bare(const Error& e) {
    const std::string w = e.what();
    const auto pos = w.find(": ");
    return pos == std::string::npos ? w : w.substr(pos + 2);
}

} // namespace

double timestamp_of(const TraceRecord& r) {
    return std::visit(overloaded{[](const SkeletonFrame& f) { return f.timestamp; },
                                 [](const HandKeypoints& k) { return k.timestamp; },
                                 [](const Utterance& u) { return u.timestamp; },
                                 [](const InjectedCue& c) { return c.cue.timestamp; },
                                 [](const ConfigPatch& p) { return p.timestamp; }},
                      r);
}

void set_timestamp(TraceRecord& r, double t) {
    std::visit(overloaded{[t](SkeletonFrame& f) { f.timestamp = t; }, [t](HandKeypoints& k) { k.timestamp = t; },
                          [t](Utterance& u) { u.timestamp = t; },
                          [t](InjectedCue& c) {
                              c.cue.timestamp = t;
                              if (c.cue.speech) c.cue.speech->timestamp = t;
                          },
                          [t](ConfigPatch& p) { p.timestamp = t; }},
               r);
}

Json encode(const TraceRecord& r) {
    return std::visit(overloaded{[](const SkeletonFrame& f) {
                                     Json j = encode(f);
                                     j["type"] = "skeleton";
                                     return j;
                                 },
                                 [](const HandKeypoints& k) {
                                     Json j = encode(k);
                                     j["type"] = "hand";
                                     return j;
                                 },
                                 [](const Utterance& u) {
                                     Json j = encode(u);
                                     j["type"] = "utterance";
                                     return j;
                                 },
                                 [](const InjectedCue& c) {
                                     Json j = encode(c.cue);
                                     j["type"] = "cue";
                                     return j;
                                 },
                                 [](const ConfigPatch& p) {
                                     return Json{{"type", "config"}, {"t", p.timestamp}, {"patch", p.patch}};
                                 }},
                      r);
}

TraceRecord decode_record(const Json& j) {
    const std::string type = require_string(j, "type");
    if (type == "skeleton") return decode_skeleton(j);
    if (type == "hand") return decode_hand(j);
    if (type == "utterance") return decode_utterance(j);
    if (type == "cue") return InjectedCue{decode_cue(j)};
    if (type == "config") {
        const Json& patch = require_field(j, "patch");
        if (!patch.is_object()) throw Error(ErrorCode::MalformedPayload, "config patch must be an object");
        return ConfigPatch{require_number(j, "t"), patch};
    }
    throw Error(ErrorCode::MalformedPayload, "unknown record type '" + type + "'");
}

SessionTrace read_trace(std::istream& in) {
    SessionTrace trace;
    std::string text;
    std::size_t line = 0;
    bool have_header = false;
    double last_t = 0.0;
    while (std::getline(in, text)) {
        ++line;
        if (text.empty()) continue;
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            corrupt(line, std::string("not JSON: ") + e.what());
        }
        try {
            if (!have_header) {
                if (!j.is_object() || j.value("type", "") != "header" || j.value("format", "") != kFormat)
                    corrupt(line, "expected an autocam-trace header");
                const Json& v = require_field(j, "version");
                if (!v.is_number_integer() || v.get<int>() != kTraceVersion)
                    throw Error(ErrorCode::VersionMismatch, "trace version " + v.dump() + ", reader supports " +
                                                                std::to_string(kTraceVersion));
                TraceHeader& h = trace.header;
                const Json& intr = require_field(j, "intrinsics");
                h.intrinsics.fov_h = require_number(intr, "fov_h");
                h.intrinsics.aspect = require_number(intr, "aspect");
                h.intrinsics.validate();
                h.layout = j.value("layout", Json::object());
                h.config = j.value("config", Json::object());
                if (!h.config.is_object()) corrupt(line, "config overrides must be an object");
                h.duration = require_number(j, "duration");
                if (h.duration < 0.0) corrupt(line, "negative duration");
                have_header = true;
                continue;
            }
            TraceRecord r = decode_record(j);
            const double t = timestamp_of(r);
            if (t < 0.0) corrupt(line, "negative timestamp");
            if (!trace.records.empty() && t < last_t)
                corrupt(line, "timestamp " + std::to_string(t) + " is earlier than the previous record");
            last_t = t;
            trace.records.push_back(std::move(r));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::CorruptRecord || e.code() == ErrorCode::VersionMismatch) throw;
            corrupt(line, bare(e));
        }
    }
    if (!have_header) corrupt(line + 1, "missing header");
    return trace;
}

SessionTrace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::CorruptRecord, "cannot open " + path);
    return read_trace(in);
}

void write_trace(const SessionTrace& trace, std::ostream& out) {
    const TraceHeader& h = trace.header;
    const Json header{{"type", "header"},
                      {"format", kFormat},
                      {"version", h.version},
                      {"intrinsics", {{"fov_h", h.intrinsics.fov_h}, {"aspect", h.intrinsics.aspect}}},
                      {"layout", h.layout},
                      {"config", h.config},
                      {"duration", h.duration}};
    out << header.dump() << '\n';
    for (const auto& r : trace.records) out << encode(r).dump() << '\n';
}

void save_trace(const SessionTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path);
    write_trace(trace, out);
}

std::string trace_to_string(const SessionTrace& trace) {
    std::ostringstream ss;
    write_trace(trace, ss);
    return ss.str();
}

} // namespace autocam
