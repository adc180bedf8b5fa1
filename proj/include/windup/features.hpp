#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "windup/errors.hpp"
#include "windup/events.hpp"
#include "windup/pose.hpp"

namespace windup {

class FeatureError : public PipelineError {
public:
    using PipelineError::PipelineError;
};

// The 15 per-event biomechanical metrics. Angles are degrees; COG
// coordinates are pelvis-relative and height-normalized so the full vector
// stays translation- and scale-invariant.
enum class MetricId : int {
    LeadKneeFlexion = 0,
    TrailKneeFlexion,
    ThrowingElbowFlexion,
    GloveElbowFlexion,
    TrunkForwardTilt,
    TrunkLateralTilt,
    TrunkRotation,
    PelvisRotation,
    HipShoulderSeparation,
    ThrowingShoulderAbduction,
    LeadShinAngle,
    TrailShinAngle,
    CogX,
    CogY,
    CogZ,
};

inline constexpr int kMetricCount = 15;

const std::array<std::string, kMetricCount>& metric_names();
const std::string& metric_name(MetricId id);
MetricId parse_metric(const std::string& name);

// Differences of angular metrics wrap to (-180, 180]; COG deltas do not.
bool metric_is_angular(MetricId id);

struct BiomechMetrics {
    std::array<double, kMetricCount> values{};

    double operator[](MetricId id) const { return values[static_cast<int>(id)]; }
    double& operator[](MetricId id) { return values[static_cast<int>(id)]; }
};

// All 15 metrics for one frame. The trunk vector runs from the pelvis to the
// shoulder midpoint; lateral tilt is sign-adjusted by handedness so RHP and
// LHP leans compare like for like.
BiomechMetrics compute_biomech(const PoseFrame& frame, Handedness h);

// Per-event body-height proxy used by the pose normalization.
double event_height(const PoseFrame& frame, Handedness h);

// Feature name table for a metric roster. The default roster is the full 15;
// a trimmed roster shrinks the biomech and delta blocks accordingly.
class FeatureSchema {
public:
    explicit FeatureSchema(std::vector<MetricId> roster = default_roster());

    static std::vector<MetricId> default_roster();

    const std::vector<MetricId>& roster() const { return roster_; }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }

    std::size_t pose_block_size() const { return 3u * kJointCount * 3u; }
    std::size_t biomech_block_size() const { return roster_.size() * 3u; }
    std::size_t delta_block_size() const { return roster_.size() * 2u; }

private:
    std::vector<MetricId> roster_;
    std::vector<std::string> names_;
};

struct FeatureVector {
    std::vector<double> values;
};

// Pose block: all 17 joints at FP/MER/REL, pelvis-centered and divided by the
// per-event height; event-major, joint-ordinal, xyz order.
std::vector<double> raw_pose_features(const PoseSequence& seq, const EventSet& ev, Handedness h);

// Biomech block: the roster metrics at FP/MER/REL, event-major.
std::vector<double> biomech_features(const PoseSequence& seq, const EventSet& ev, Handedness h,
                                     const std::vector<MetricId>& roster);

// Delta block: per metric, MER-FP then REL-MER, transition-major.
std::vector<double> temporal_deltas(const std::vector<double>& biomech_block,
                                    const std::vector<MetricId>& roster);

// Full representation: [pose | biomech | deltas | handedness bit].
FeatureVector assemble(const PoseSequence& seq, const EventSet& ev, Handedness h,
                       const FeatureSchema& schema = FeatureSchema{});

// Pose features at k evenly spaced frames plus the handedness bit; the
// event-free baseline representation (17*3*k + 1 values).
std::vector<std::string> uniform_feature_names(int k);
std::vector<double> uniform_sampling_features(const PoseSequence& seq, int k, Handedness h);

}  // namespace windup
