#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "windup/events.hpp"
#include "windup/pose.hpp"

namespace windup {

// Parametric delivery generator. Episodes carry scripted ground-truth events
// and class-dependent kinematic signatures, forming the desk-scale oracle for
// detection, feature extraction and classification.
struct SynthConfig {
    std::size_t n_episodes = 500;
    // Class shares; defaults follow the production pitch-mix distribution.
    std::array<double, kPitchTypeCount> class_distribution = default_class_distribution();
    double handedness_ratio = 0.69;  // fraction of RHP episodes
    double fps = 30.0;
    std::size_t min_duration = 150;
    std::size_t max_duration = 220;
    double noise_std = 0.02;        // feet, per joint coordinate
    double signature_scale = 1.0;   // 0 erases every class signature
    std::optional<std::pair<PitchType, PitchType>> twin_classes;  // share one signature
    std::uint64_t seed = 0;

    static std::array<double, kPitchTypeCount> default_class_distribution();
    void validate() const;
};

struct SynthEpisode {
    PoseSequence sequence;
    Handedness truth_handedness = Handedness::RHP;
    EventSet truth_events;
    PitchType truth_label = PitchType::FF;
};

// One scripted delivery. The elbow profile clears the release gate and dips
// below the release threshold by construction; with zero noise the event
// detectors land exactly on the scripted frames.
SynthEpisode generate_episode(PitchType label, Handedness h, const SynthConfig& cfg,
                              std::uint64_t episode_seed, std::string episode_id);

// Deterministic dataset: exact largest-remainder class counts, shuffled
// assignment, per-episode seed substreams.
std::vector<SynthEpisode> generate_dataset(const SynthConfig& cfg);

// Truth manifest JSON (events, labels, handedness) for oracle comparisons.
std::string manifest_to_json(const std::vector<SynthEpisode>& episodes, const SynthConfig& cfg);
void write_manifest(const std::string& path, const std::vector<SynthEpisode>& episodes,
                    const SynthConfig& cfg);

}  // namespace windup
