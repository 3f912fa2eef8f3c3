#pragma once

namespace autocam {

// Thresholds for turning raw observations into cues.  Time values in seconds,
// distances in meters.
struct CueConfig {
    double pointing_threshold{0.85};
    // Tip-to-wrist over base-to-wrist ratios mapped to extension 0 and 1.
    double curled_ratio{1.0};
    double extended_ratio{1.7};

    int debounce_frames{3};
    double raise_hand_s{1.0};

    double truck_start_speed{0.25};
    double truck_end_speed{0.1};
    double truck_vertical_tolerance{0.05};
    double truck_sustain_s{0.5};

    double hand_hidden_s{0.5};
    // A hand whose keypoints have not arrived for this long counts as not pointing.
    double keypoint_timeout_s{0.5};

    void validate() const;
};

} // namespace autocam
