#pragma once

#include <json.hpp>

#include "autocam/cues/types.hpp"
#include "autocam/director/types.hpp"
#include "autocam/planner/config.hpp"
#include "autocam/servo/servo.hpp"

namespace autocam {

using Json = nlohmann::json;

// Wire and file encodings.  Vectors are [x, y, z] arrays; invisible joints are
// omitted from skeleton frames.  Decoders throw MalformedPayload.
Json encode(const Vec3& v);
Vec3 decode_vec3(const Json& j);

Json encode(const SkeletonFrame& f);
SkeletonFrame decode_skeleton(const Json& j);

Json encode(const HandKeypoints& k);
HandKeypoints decode_hand(const Json& j);

Json encode(const Utterance& u);
Utterance decode_utterance(const Json& j);

Json encode(const CueEvent& c);
CueEvent decode_cue(const Json& j);

Json encode(const CameraPose& p);
CameraPose decode_pose(const Json& j);

Json encode(const CostBreakdown& c);
Json encode(const CostGates& g);

// Field access helpers that name the missing key in the error.
const Json& require_field(const Json& j, const char* key);
double require_number(const Json& j, const char* key);
std::string require_string(const Json& j, const char* key);

} // namespace autocam
