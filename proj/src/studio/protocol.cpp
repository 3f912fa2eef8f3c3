#include "autocam/studio/protocol.hpp"

#include <cmath>
#include <map>

#include "autocam/errors.hpp"

namespace autocam::studio {

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedPayload, why); }

// Payload with the envelope timestamp folded in as "t" for the record decoders.
Json stamped(const Json& payload, double t) {
    if (!payload.is_object()) malformed("payload must be an object");
    Json j = payload;
    j["t"] = t;
    return j;
}

} // namespace

const char* to_string(ControlAction a) {
    switch (a) {
    case ControlAction::Run: return "run";
    case ControlAction::Pause: return "pause";
    case ControlAction::Reset: return "reset";
    case ControlAction::Step: return "step";
    }
    return "?";
}

std::optional<ControlAction> control_from_string(std::string_view s) {
    for (ControlAction a : {ControlAction::Run, ControlAction::Pause, ControlAction::Reset, ControlAction::Step})
        if (s == to_string(a)) return a;
    return std::nullopt;
}

Inbound decode_inbound(const Json& j) {
    if (!j.is_object()) malformed("message must be a JSON object");
    Inbound m;
    const std::string kind = require_string(j, "kind");
    m.session_id = require_string(j, "session_id");
    const Json& seq = require_field(j, "seq");
    if (!seq.is_number_unsigned()) malformed("seq must be a non-negative integer");
    m.seq = seq.get<std::uint64_t>();
    m.timestamp = require_number(j, "timestamp");
    if (m.timestamp < 0.0) malformed("timestamp must be non-negative");
    const Json& payload = require_field(j, "payload");

    if (kind == "skeleton_frame") {
        m.body = TraceRecord{decode_skeleton(stamped(payload, m.timestamp))};
    } else if (kind == "hand_keypoints") {
        m.body = TraceRecord{decode_hand(stamped(payload, m.timestamp))};
    } else if (kind == "utterance") {
        Utterance u = decode_utterance(stamped(payload, m.timestamp));
        if (u.text.find_first_not_of(" \t\r\n") == std::string::npos) malformed("utterance text is blank");
        m.body = TraceRecord{u};
    } else if (kind == "injected_cue") {
        m.body = TraceRecord{InjectedCue{decode_cue(stamped(payload, m.timestamp))}};
    } else if (kind == "config_patch") {
        if (!payload.is_object()) malformed("config patch must be an object");
        m.body = TraceRecord{ConfigPatch{m.timestamp, payload}};
    } else if (kind == "session_control") {
        SessionControl c;
        const std::string a = require_string(payload, "action");
        const auto action = control_from_string(a);
        if (!action) malformed("unknown control action '" + a + "'");
        c.action = *action;
        if (c.action == ControlAction::Step) {
            const Json& n = require_field(payload, "substeps");
            if (!n.is_number_integer() || n.get<std::int64_t>() < 0 || n.get<std::int64_t>() > 1'000'000)
                malformed("substeps must be 0..1000000");
            c.substeps = n.get<int>();
        }
        m.body = c;
    } else {
        malformed("unknown message kind '" + kind + "'");
    }
    return m;
}

Inbound decode_inbound(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        malformed(std::string("not JSON: ") + e.what());
    }
    return decode_inbound(j);
}

Json encode_inbound(const Inbound& m) {
    Json j{{"session_id", m.session_id}, {"seq", m.seq}, {"timestamp", m.timestamp}};
    if (const auto* c = std::get_if<SessionControl>(&m.body)) {
        j["kind"] = "session_control";
        j["payload"] = {{"action", to_string(c->action)}};
        if (c->action == ControlAction::Step) j["payload"]["substeps"] = c->substeps;
        return j;
    }
    const TraceRecord& r = std::get<TraceRecord>(m.body);
    Json p = encode(r);
    const std::string type = p["type"];
    p.erase("type");
    p.erase("t");
    static const std::map<std::string, std::string> kinds{{"skeleton", "skeleton_frame"},
                                                          {"hand", "hand_keypoints"},
                                                          {"utterance", "utterance"},
                                                          {"cue", "injected_cue"},
                                                          {"config", "config_patch"}};
    j["kind"] = kinds.at(type);
    j["payload"] = type == "config" ? p["patch"] : p;
    return j;
}

std::string shot_icon(ShotType s) { return std::string("icon-") + autocam::to_string(s); }

Json envelope(const char* kind, const std::string& session_id, double timestamp, Json payload) {
    return {{"kind", kind},
            {"session_id", session_id},
            {"seq", nullptr},
            {"timestamp", timestamp},
            {"payload", std::move(payload)},
            {"protocol", kProtocolVersion}};
}

Json encode_snapshot(const DirectorSnapshot& s, const std::string& id) {
    return envelope("director_snapshot", id, s.t,
                    {{"shot", autocam::to_string(s.shot)},
                     {"shot_icon", shot_icon(s.shot)},
                     {"framing", autocam::to_string(s.framing)},
                     {"angle", autocam::to_string(s.angle)},
                     {"movement", autocam::to_string(s.movement)},
                     {"left_pointing", s.left_pointing},
                     {"right_pointing", s.right_pointing}});
}

Json encode_rig_state(const RigState& r, const std::string& id) {
    return envelope("rig_state", id, r.t,
                    {{"pose", encode(r.pose)},
                     {"linear_vel", encode(r.linear_vel)},
                     {"status", autocam::to_string(r.status)}});
}

Json encode_cue_ack(const std::string& id, std::uint64_t in_reply_to, double effective_timestamp,
                    const std::string& accepted) {
    return envelope("cue_ack", id, effective_timestamp,
                    {{"in_reply_to", in_reply_to}, {"accepted", accepted}, {"effective_timestamp", effective_timestamp}});
}

Json encode_diagnostics(const std::string& id, double t, const std::string& level, const std::string& code,
                        const std::string& message, std::optional<std::uint64_t> in_reply_to) {
    Json p{{"level", level}, {"code", code}, {"message", message}};
    if (in_reply_to) p["in_reply_to"] = *in_reply_to;
    return envelope("diagnostics", id, t, std::move(p));
}

} // namespace autocam::studio
