#include "autocam/session/json_codec.hpp"

#include <cmath>

#include "autocam/errors.hpp"

namespace autocam {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedPayload, what); }

template <typename T, typename F>
T decode_enum(const Json& j, const char* key, F from_string) {
    const std::string s = require_string(j, key);
    const auto v = from_string(s);
    if (!v) malformed(std::string("unknown ") + key + " '" + s + "'");
    return *v;
}

} // namespace

const Json& require_field(const Json& j, const char* key) {
    if (!j.is_object()) malformed("expected an object");
    const auto it = j.find(key);
    if (it == j.end()) malformed(std::string("missing field '") + key + "'");
    return *it;
}

double require_number(const Json& j, const char* key) {
    const Json& v = require_field(j, key);
    if (!v.is_number()) malformed(std::string("field '") + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) malformed(std::string("field '") + key + "' must be finite");
    return d;
}

std::string require_string(const Json& j, const char* key) {
    const Json& v = require_field(j, key);
    if (!v.is_string()) malformed(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

Json encode(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Vec3 decode_vec3(const Json& j) {
    if (!j.is_array() || j.size() != 3) malformed("expected [x, y, z]");
    for (const auto& e : j)
        if (!e.is_number() || !std::isfinite(e.get<double>())) malformed("vector components must be finite numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Json encode(const SkeletonFrame& f) {
    Json joints = Json::object();
    for (Joint jt : kAllJoints)
        if (f.visible(jt)) joints[to_string(jt)] = encode(f[jt].position);
    return {{"t", f.timestamp}, {"joints", joints}};
}

SkeletonFrame decode_skeleton(const Json& j) {
    SkeletonFrame f;
    f.timestamp = require_number(j, "t");
    const Json& joints = require_field(j, "joints");
    if (!joints.is_object()) malformed("joints must be an object");
    for (const auto& [name, value] : joints.items()) {
        const auto jt = joint_from_string(name);
        if (!jt) malformed("unknown joint '" + name + "'");
        f[*jt] = {decode_vec3(value), true};
    }
    return f;
}

Json encode(const HandKeypoints& k) {
    Json pts = Json::array();
    for (const auto& p : k.points) pts.push_back(Json::array({p.x, p.y}));
    return {{"t", k.timestamp}, {"hand", to_string(k.hand)}, {"points", pts}};
}

HandKeypoints decode_hand(const Json& j) {
    HandKeypoints k;
    k.timestamp = require_number(j, "t");
    k.hand = decode_enum<Hand>(j, "hand", hand_from_string);
    const Json& pts = require_field(j, "points");
    if (!pts.is_array()) malformed("points must be an array");
    for (const auto& p : pts) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            malformed("each keypoint must be [x, y]");
        k.points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    try {
        k.validate();
    } catch (const Error& e) {
        malformed(e.what());
    }
    return k;
}

Json encode(const Utterance& u) { return {{"t", u.timestamp}, {"text", u.text}}; }

Utterance decode_utterance(const Json& j) { return {require_number(j, "t"), require_string(j, "text")}; }

Json encode(const CueEvent& c) {
    Json j{{"t", c.timestamp}, {"kind", to_string(c.kind)}};
    if (c.hand) j["hand"] = to_string(*c.hand);
    if (c.ray) j["ray"] = {{"origin", encode(c.ray->origin)}, {"direction", encode(c.ray->direction)}};
    if (c.point) j["point"] = encode(*c.point);
    if (c.speech) j["speech"] = {{"label", to_string(c.speech->label)}, {"text", c.speech->source_text}};
    return j;
}

CueEvent decode_cue(const Json& j) {
    CueEvent c;
    c.timestamp = require_number(j, "t");
    c.kind = decode_enum<CueKind>(j, "kind", cue_kind_from_string);
    if (j.contains("hand")) c.hand = decode_enum<Hand>(j, "hand", hand_from_string);
    if (j.contains("ray")) {
        const Json& r = j["ray"];
        try {
            const Vec3 origin = decode_vec3(require_field(r, "origin"));
            const Vec3 dir = decode_vec3(require_field(r, "direction"));
            // Already-unit directions are kept bit-exact so files round-trip.
            c.ray = std::abs(norm(dir) - 1.0) < 1e-12 ? Ray{origin, dir} : Ray::through(origin, dir);
        } catch (const Error& e) {
            malformed(std::string("ray: ") + e.what());
        }
    }
    if (j.contains("point")) c.point = decode_vec3(j["point"]);
    if (j.contains("speech")) {
        const Json& s = j["speech"];
        SpeechIntent intent;
        intent.label = decode_enum<SpeechLabel>(s, "label", speech_label_from_string);
        if (s.contains("text") && s["text"].is_string()) intent.source_text = s["text"].get<std::string>();
        intent.timestamp = c.timestamp;
        c.speech = intent;
    }
    if (c.kind == CueKind::Speech && !c.speech) malformed("speech cue needs a speech label");
    return c;
}

Json encode(const CameraPose& p) {
    return {{"position", encode(p.position)}, {"forward", encode(p.forward)}, {"up", encode(p.up)}, {"zoom", p.zoom}};
}

CameraPose decode_pose(const Json& j) {
    CameraPose p;
    p.position = decode_vec3(require_field(j, "position"));
    p.forward = decode_vec3(require_field(j, "forward"));
    p.up = decode_vec3(require_field(j, "up"));
    p.zoom = require_number(j, "zoom");
    return p;
}

Json encode(const CostBreakdown& c) {
    return {{"smoothness", c.smoothness}, {"distance", c.distance}, {"pitch", c.pitch},
            {"orientation", c.orientation}, {"total", c.total}};
}

Json encode(const CostGates& g) {
    return {{"distance", g.distance}, {"pitch", g.pitch}, {"orientation", g.orientation}};
}

} // namespace autocam
