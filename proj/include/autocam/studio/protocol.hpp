#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "autocam/director/types.hpp"
#include "autocam/servo/servo.hpp"
#include "autocam/session/json_codec.hpp"
#include "autocam/session/trace.hpp"

namespace autocam::studio {

inline constexpr int kProtocolVersion = 1;

enum class ControlAction { Run, Pause, Reset, Step };

const char* to_string(ControlAction a);
std::optional<ControlAction> control_from_string(std::string_view s);

struct SessionControl {
    ControlAction action{ControlAction::Run};
    int substeps{0};  // Step only (manual clock)
};

// Inbound envelope.  The payload is already decoded; sensor and cue records
// carry the envelope timestamp.
struct Inbound {
    std::string session_id;
    std::uint64_t seq{0};
    double timestamp{0.0};
    std::variant<TraceRecord, SessionControl> body;
};

// Throws MalformedPayload for unknown kinds, missing fields or bad values.
Inbound decode_inbound(const Json& envelope);
Inbound decode_inbound(const std::string& text);
Json encode_inbound(const Inbound& msg);

// Monitor widget state: shot icon, the two pointing indicators and the rest of the tuple.
struct DirectorSnapshot {
    double t{0.0};
    ShotType shot{ShotType::Action};
    Framing framing{Framing::Normal};
    Angle angle{Angle::Standard};
    MovementKind movement{MovementKind::None};
    bool left_pointing{false};
    bool right_pointing{false};

    bool same_state(const DirectorSnapshot& o) const {
        return shot == o.shot && framing == o.framing && angle == o.angle && movement == o.movement &&
               left_pointing == o.left_pointing && right_pointing == o.right_pointing;
    }
};

struct RigState {
    double t{0.0};
    CameraPose pose;
    Vec3 linear_vel;
    RigStatus status{RigStatus::Tracking};
};

std::string shot_icon(ShotType s);

// Outbound envelopes.  seq is filled in per subscriber when queued.
Json envelope(const char* kind, const std::string& session_id, double timestamp, Json payload);
Json encode_snapshot(const DirectorSnapshot& s, const std::string& session_id);
Json encode_rig_state(const RigState& r, const std::string& session_id);
Json encode_cue_ack(const std::string& session_id, std::uint64_t in_reply_to, double effective_timestamp,
                    const std::string& accepted);
Json encode_diagnostics(const std::string& session_id, double t, const std::string& level, const std::string& code,
                        const std::string& message, std::optional<std::uint64_t> in_reply_to = std::nullopt);

} // namespace autocam::studio
