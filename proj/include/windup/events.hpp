#pragma once

#include <cstddef>
#include <string>

#include "windup/errors.hpp"
#include "windup/pose.hpp"
#include "windup/signal.hpp"

namespace windup {

// Detection thresholds. Defaults are the working values of the pipeline;
// every field is surfaced through the config file.
struct EventConfig {
    double ankle_height_ft = 0.95;              // foot-plant ankle ceiling
    double ankle_velocity_ft_per_frame = -0.008; // foot-plant settle threshold
    double release_low_deg = 30.0;              // elbow minimum qualifying value
    double release_gate_deg = 80.0;             // cocking gate the arm must clear
    int smooth_window = 21;
    int smooth_polyorder = 3;
};

struct HandednessReport {
    Handedness handedness = Handedness::RHP;
    double delta_ankle = 0.0;           // mean(y_left_ankle - y_right_ankle), feet
    double mean_pelvis_rotation = 0.0;  // mean heading of left_hip - right_hip, degrees
    bool methods_agree = false;
};

struct EventSet {
    std::size_t fp = 0;
    std::size_t mer = 0;
    std::size_t rel = 0;
};

// Stage-labelled detection failure; the dataset runner tallies reasons and
// keeps going.
class DetectionError : public PipelineError {
public:
    using PipelineError::PipelineError;
};

// Sign rule on mean ankle depth, with mean pelvis rotation as the consistency
// check. An exact zero delta falls back to the pelvis band.
HandednessReport infer_handedness(const PoseSequence& seq);

// Smoothed throwing-side elbow flexion (180 deg minus the interior angle at
// the elbow), in degrees.
Series elbow_flexion_series(const PoseSequence& seq, Handedness h,
                            const EventConfig& cfg = EventConfig{});

// First frame after peak lead-knee height where the smoothed lead-ankle
// height is below threshold and its derivative has settled.
std::size_t detect_foot_plant(const PoseSequence& seq, Handedness h,
                              const EventConfig& cfg = EventConfig{});

// First local minimum below release_low_deg after the last frame above
// release_gate_deg. Falls back to the first sub-threshold frame when the
// smoothed tail is monotone and never turns upward.
std::size_t detect_release(const Series& elbow, const EventConfig& cfg = EventConfig{});

// Frame of maximum elbow flexion in [fp, rel]; first frame wins ties.
std::size_t detect_mer(const Series& elbow, std::size_t fp, std::size_t rel);

struct DetectionResult {
    HandednessReport handedness;
    EventSet events;
};

// Full per-episode detection: handedness, FP, REL, MER, with the event
// ordering fp <= mer <= rel enforced.
DetectionResult detect_events(const PoseSequence& seq, const EventConfig& cfg = EventConfig{});

}  // namespace windup
