#include "autocam/session/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "autocam/errors.hpp"

namespace autocam {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& why) {
    throw Error(ErrorCode::InvalidConfig, path + ": " + why);
}

// Walks a config struct field by field.  Writing fills a JSON object; reading
// takes values from a (partial) object and rejects any key nobody asked for.
class Fields {
public:
    static Fields writer(Json& out, std::string path) { return Fields(&out, nullptr, std::move(path)); }
    static Fields reader(const Json& in, std::string path) { return Fields(nullptr, &in, std::move(path)); }

    void number(const char* key, double& v) {
        if (out_) {
            (*out_)[key] = v;
        } else if (const Json* j = take(key)) {
            if (!j->is_number()) bad(at(key), "expected a number");
            v = j->get<double>();
            if (!std::isfinite(v)) bad(at(key), "must be finite");
        }
    }

    void integer(const char* key, int& v) {
        if (out_) {
            (*out_)[key] = v;
        } else if (const Json* j = take(key)) {
            if (!j->is_number_integer()) bad(at(key), "expected an integer");
            v = j->get<int>();
        }
    }

    void flag(const char* key, bool& v) {
        if (out_) {
            (*out_)[key] = v;
        } else if (const Json* j = take(key)) {
            if (!j->is_boolean()) bad(at(key), "expected true or false");
            v = j->get<bool>();
        }
    }

    void vec(const char* key, Vec3& v) {
        if (out_) {
            (*out_)[key] = encode(v);
        } else if (const Json* j = take(key)) {
            try {
                v = decode_vec3(*j);
            } catch (const Error&) {
                bad(at(key), "expected [x, y, z]");
            }
        }
    }

    template <typename E, typename ToS, typename FromS>
    void choice(const char* key, E& v, ToS to_s, FromS from_s) {
        if (out_) {
            (*out_)[key] = to_s(v);
        } else if (const Json* j = take(key)) {
            if (!j->is_string()) bad(at(key), "expected a string");
            const auto parsed = from_s(j->get<std::string>());
            if (!parsed) bad(at(key), "unknown value '" + j->get<std::string>() + "'");
            v = *parsed;
        }
    }

    template <typename F>
    void section(const char* key, F&& body) {
        if (out_) {
            Json sub = Json::object();
            Fields f = writer(sub, at(key));
            body(f);
            (*out_)[key] = std::move(sub);
        } else if (const Json* j = take(key)) {
            Fields f = reader(*j, at(key));
            body(f);
            f.finish();
        }
    }

    // Reader only: every key of the input must have been consumed.
    void finish() const {
        if (!in_) return;
        for (const auto& [k, _] : in_->items())
            if (!seen_.count(k)) bad(at(k.c_str()), "unknown key");
    }

private:
    Fields(Json* out, const Json* in, std::string path) : out_(out), in_(in), path_(std::move(path)) {
        if (in_ && !in_->is_object()) bad(path_.empty() ? "config" : path_, "expected an object");
    }

    const Json* take(const char* key) {
        seen_.insert(key);
        const auto it = in_->find(key);
        return it == in_->end() ? nullptr : &*it;
    }

    std::string at(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

    Json* out_;
    const Json* in_;
    std::string path_;
    std::set<std::string> seen_;
};

const char* pitch_mode_name(OrbitPitchMode m) { return m == OrbitPitchMode::Elevation ? "elevation" : "from_vertical"; }

std::optional<OrbitPitchMode> pitch_mode_from(const std::string& s) {
    if (s == "elevation") return OrbitPitchMode::Elevation;
    if (s == "from_vertical") return OrbitPitchMode::FromVertical;
    return std::nullopt;
}

const char* action_mode_name(ActionDistanceMode m) { return m == ActionDistanceMode::Geometric ? "geometric" : "literal"; }

std::optional<ActionDistanceMode> action_mode_from(const std::string& s) {
    if (s == "geometric") return ActionDistanceMode::Geometric;
    if (s == "literal") return ActionDistanceMode::Literal;
    return std::nullopt;
}

void gains(Fields& f, PidGains& g) {
    f.number("kp", g.kp);
    f.number("ki", g.ki);
    f.number("kd", g.kd);
    f.number("integral_limit", g.integral_limit);
}

void describe(Fields& f, SessionConfig& c) {
    f.section("planner", [&](Fields& p) {
        PlannerConfig& pl = c.planner;
        p.section("weights", [&](Fields& w) {
            w.number("smoothness", pl.weights.smoothness);
            w.number("distance", pl.weights.distance);
            w.number("pitch", pl.weights.pitch);
            w.number("orientation", pl.weights.orientation);
        });
        p.section("bounds", [&](Fields& b) {
            b.number("theta_min", pl.bounds.theta_min);
            b.number("theta_max", pl.bounds.theta_max);
            b.number("psi_min", pl.bounds.psi_min);
            b.number("psi_max", pl.bounds.psi_max);
            b.number("r_min", pl.bounds.r_min);
            b.number("r_max", pl.bounds.r_max);
            b.number("margin", pl.bounds.margin);
        });
        p.vec("polar_origin", pl.polar_origin);
        p.number("tick_hz", pl.tick_hz);
        p.section("intrinsics", [&](Fields& i) {
            i.number("fov_h", pl.intrinsics.fov_h);
            i.number("aspect", pl.intrinsics.aspect);
        });
        p.section("solver", [&](Fields& s) {
            s.integer("max_iterations", pl.solver.max_iterations);
            s.number("gradient_tolerance", pl.solver.gradient_tolerance);
            s.number("step_tolerance", pl.solver.step_tolerance);
            s.flag("coarse_seed", pl.solver.coarse_seed);
            s.integer("coarse_theta", pl.solver.coarse_theta);
            s.integer("coarse_psi", pl.solver.coarse_psi);
            s.integer("coarse_r", pl.solver.coarse_r);
        });
        p.section("orbit", [&](Fields& o) {
            o.number("distance", pl.orbit.distance);
            o.number("pitch", pl.orbit.pitch);
            o.number("arc", pl.orbit.arc);
            o.integer("waypoints", pl.orbit.waypoints);
            o.choice("pitch_mode", pl.orbit.pitch_mode, pitch_mode_name, pitch_mode_from);
        });
    });
    f.section("cues", [&](Fields& q) {
        CueConfig& cc = c.cues;
        q.number("pointing_threshold", cc.pointing_threshold);
        q.number("curled_ratio", cc.curled_ratio);
        q.number("extended_ratio", cc.extended_ratio);
        q.integer("debounce_frames", cc.debounce_frames);
        q.number("raise_hand_s", cc.raise_hand_s);
        q.number("truck_start_speed", cc.truck_start_speed);
        q.number("truck_end_speed", cc.truck_end_speed);
        q.number("truck_vertical_tolerance", cc.truck_vertical_tolerance);
        q.number("truck_sustain_s", cc.truck_sustain_s);
        q.number("hand_hidden_s", cc.hand_hidden_s);
        q.number("keypoint_timeout_s", cc.keypoint_timeout_s);
    });
    f.section("director", [&](Fields& d) {
        DirectorConfig& dc = c.director;
        d.number("instructor_distance", dc.instructor_distance);
        d.number("object_distance", dc.object_distance);
        d.number("truck_distance", dc.truck_distance);
        d.number("object_offset", dc.object_offset);
        d.number("min_radius", dc.min_radius);
        d.number("sphere_window_s", dc.sphere_window_s);
        d.number("subject_hold_s", dc.subject_hold_s);
        d.number("orbit_duration_s", dc.orbit_duration_s);
        d.number("instructor_exit_s", dc.instructor_exit_s);
        d.section("workbench", [&](Fields& b) {
            b.vec("min", dc.workbench.min);
            b.vec("max", dc.workbench.max);
        });
        d.choice("action_distance", dc.action_distance, action_mode_name, action_mode_from);
        d.number("eye_fraction_from_top", dc.eye_fraction_from_top);
    });
    f.section("servo", [&](Fields& s) {
        ServoConfig& sc = c.servo;
        s.section("linear", [&](Fields& g) { gains(g, sc.linear); });
        s.section("angular", [&](Fields& g) { gains(g, sc.angular); });
        s.number("v_max", sc.v_max);
        s.number("omega_max", sc.omega_max);
        s.number("zoom_rate", sc.zoom_rate);
        s.number("limit_epsilon", sc.limit_epsilon);
        s.number("limit_dwell_s", sc.limit_dwell_s);
        s.number("arrive_position", sc.arrive_position);
        s.number("arrive_angle", sc.arrive_angle);
    });
    f.section("recording", [&](Fields& r) { r.integer("telemetry_decimation", c.recording.telemetry_decimation); });
}

} // namespace

PlannerConfig SessionConfig::planning() const {
    PlannerConfig p = planner;
    p.bounds.margin = std::max(p.bounds.margin, 1.5 * servo.limit_epsilon);
    return p;
}

std::int64_t SessionConfig::tick_us() const { return std::llround(1e6 / planner.tick_hz); }

void SessionConfig::validate() {
    planner.validate();
    if (tick_us() % kServoSubsteps != 0)
        throw Error(ErrorCode::InvalidConfig, "planner.tick_hz must give a tick divisible into 20 whole microsecond substeps");
    servo.dt = static_cast<double>(substep_us()) / 1e6;
    servo.bounds = planner.bounds;
    servo.polar_origin = planner.polar_origin;
    cues.validate();
    director.validate();
    servo.validate();
    if (recording.telemetry_decimation < 1)
        throw Error(ErrorCode::InvalidConfig, "recording.telemetry_decimation must be at least 1");
}

Json to_json(const SessionConfig& cfg) {
    Json out = Json::object();
    SessionConfig copy = cfg;
    Fields f = Fields::writer(out, "");
    describe(f, copy);
    return out;
}

void apply_overrides(SessionConfig& cfg, const Json& overrides) {
    if (overrides.is_null()) return;
    Fields f = Fields::reader(overrides, "");
    describe(f, cfg);
    f.finish();
}

Json read_config_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str(), nullptr, true, true);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::InvalidConfig, path + ": " + e.what());
    }
}

SessionConfig load_config_file(const std::string& path) {
    SessionConfig cfg;
    apply_overrides(cfg, read_config_document(path));
    cfg.validate();
    return cfg;
}

} // namespace autocam
