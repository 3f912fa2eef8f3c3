#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "autocam/session/hand_model.hpp"
#include "autocam/session/trace.hpp"

namespace autocam {

// One hand of the puppet: joint positions plus the articulated pose that is
// rendered to 2-D keypoints.
struct PuppetHand {
    Vec3 wrist;
    Vec3 tip;
    bool visible{true};
    HandPose pose = open_pose();
};

struct PuppetKey {
    double t{0.0};
    PuppetHand left;
    PuppetHand right;
};

// Parametric seated instructor.  Joint positions move linearly between keys;
// visibility and hand pose switch at the key time.
struct PuppetScript {
    std::vector<PuppetKey> keys;
    std::vector<Utterance> utterances;
    std::vector<InjectedCue> injected;
    double duration{0.0};
    double frame_rate{30.0};
    double joint_noise{0.002};     // meters
    double keypoint_noise{0.02};  // palm lengths
};

// Seated instructor facing -x across the workbench, hands resting on it.
SkeletonFrame seated_rest_frame(double t = 0.0);
PuppetHand rest_hand(Hand h);

// Samples the script into skeleton frames and hand keypoints (hidden hands
// produce neither), merged with utterances in time order.
SessionTrace render_script(const PuppetScript& script, std::uint64_t seed, const std::string& scenario);

// Built-in scenarios:
//   lego        every cue in turn, 28 s
//   full        lego repeated for five minutes
//   stationary  hands at rest for 30 s
//   instructor, object, high   hold one shot for 20 s
std::vector<std::string> scenario_names();
PuppetScript scenario_script(const std::string& name);
// Throws InvalidConfig for an unknown name.
SessionTrace generate_scenario(const std::string& name, std::uint64_t seed);

} // namespace autocam
