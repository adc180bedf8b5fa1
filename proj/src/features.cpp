#include "windup/features.hpp"

#include <cmath>

namespace windup {

namespace {

const std::array<std::string, 3> kEventTokens = {"FP", "MER", "REL"};
const std::array<std::string, 2> kDeltaTokens = {"FP_MER", "MER_REL"};
const std::array<std::string, 3> kAxisTokens = {"x", "y", "z"};

// Coarse trunk-dominant mass model; weights sum to 1. Eyes and nose carry no
// mass.
constexpr std::array<double, kJointCount> kCogWeights = {
    0.00,  // nose
    0.04,  // neck
    0.07,  // left_shoulder
    0.07,  // right_shoulder
    0.04,  // left_elbow
    0.04,  // right_elbow
    0.03,  // left_wrist
    0.03,  // right_wrist
    0.30,  // pelvis
    0.08,  // left_hip
    0.08,  // right_hip
    0.06,  // left_knee
    0.06,  // right_knee
    0.05,  // left_ankle
    0.05,  // right_ankle
    0.00,  // left_eye
    0.00,  // right_eye
};

std::array<std::size_t, 3> event_frames(const PoseSequence& seq, const EventSet& ev) {
    if (ev.fp > ev.mer || ev.mer > ev.rel || ev.rel >= seq.frames.size()) {
        throw FeatureError("bad_events", "event frames out of order or out of range");
    }
    return {ev.fp, ev.mer, ev.rel};
}

double flexion(const PoseFrame& f, JointId a, JointId b, JointId c, const char* what) {
    try {
        return 180.0 - interior_angle(f[a], f[b], f[c]);
    } catch (const std::invalid_argument& e) {
        throw FeatureError("degenerate_limb", std::string(what) + ": " + e.what());
    }
}

}  // namespace

const std::array<std::string, kMetricCount>& metric_names() {
    static const std::array<std::string, kMetricCount> names = {
        "lead_knee_flexion",   "trail_knee_flexion", "throwing_elbow_flexion",
        "glove_elbow_flexion", "trunk_forward_tilt", "trunk_lateral_tilt",
        "trunk_rotation",      "pelvis_rotation",    "hip_shoulder_separation",
        "throwing_shoulder_abduction", "lead_shin_angle", "trail_shin_angle",
        "cog_x",               "cog_y",              "cog_z"};
    return names;
}

const std::string& metric_name(MetricId id) { return metric_names()[static_cast<int>(id)]; }

MetricId parse_metric(const std::string& name) {
    const auto& names = metric_names();
    for (int i = 0; i < kMetricCount; ++i) {
        if (names[i] == name) return static_cast<MetricId>(i);
    }
    throw std::invalid_argument("parse_metric: unknown metric '" + name + "'");
}

bool metric_is_angular(MetricId id) {
    switch (id) {
        case MetricId::CogX:
        case MetricId::CogY:
        case MetricId::CogZ: return false;
        default: return true;
    }
}

double event_height(const PoseFrame& frame, Handedness h) {
    const double height = norm(frame[JointId::Nose] - frame[ankle_of(lead_side(h))]);
    if (height < 1e-6) {
        throw FeatureError("degenerate_height", "nose to lead ankle distance below 1e-6 ft");
    }
    return height;
}

BiomechMetrics compute_biomech(const PoseFrame& f, Handedness h) {
    const Side lead = lead_side(h), trail = trail_side(h);
    const Side throwing = throwing_side(h), glove = glove_side(h);

    BiomechMetrics m;
    m[MetricId::LeadKneeFlexion] =
        flexion(f, hip_of(lead), knee_of(lead), ankle_of(lead), "lead_knee_flexion");
    m[MetricId::TrailKneeFlexion] =
        flexion(f, hip_of(trail), knee_of(trail), ankle_of(trail), "trail_knee_flexion");
    m[MetricId::ThrowingElbowFlexion] = flexion(f, shoulder_of(throwing), elbow_of(throwing),
                                                wrist_of(throwing), "throwing_elbow_flexion");
    m[MetricId::GloveElbowFlexion] =
        flexion(f, shoulder_of(glove), elbow_of(glove), wrist_of(glove), "glove_elbow_flexion");

    const Vec3 mid_shoulder = midpoint(f[JointId::LeftShoulder], f[JointId::RightShoulder]);
    const Vec3 trunk = mid_shoulder - f[JointId::Pelvis];
    const double lateral_sign = h == Handedness::RHP ? 1.0 : -1.0;
    m[MetricId::TrunkLateralTilt] = lateral_sign * std::atan2(trunk.x, trunk.z) * kRadToDeg;
    m[MetricId::TrunkForwardTilt] = std::atan2(trunk.y, trunk.z) * kRadToDeg;

    try {
        m[MetricId::TrunkRotation] =
            heading_xy(f[JointId::LeftShoulder] - f[JointId::RightShoulder]);
        m[MetricId::PelvisRotation] = heading_xy(f[JointId::LeftHip] - f[JointId::RightHip]);
    } catch (const std::invalid_argument& e) {
        throw FeatureError("degenerate_limb", std::string("rotation: ") + e.what());
    }
    m[MetricId::HipShoulderSeparation] =
        wrap_degrees(m[MetricId::TrunkRotation] - m[MetricId::PelvisRotation]);

    try {
        const Vec3 upper_arm = f[elbow_of(throwing)] - f[shoulder_of(throwing)];
        const Vec3 trunk_down = f[JointId::Pelvis] - mid_shoulder;
        m[MetricId::ThrowingShoulderAbduction] =
            angle_between_deg(upper_arm, trunk_down, "throwing_shoulder_abduction");
        m[MetricId::LeadShinAngle] = angle_between_deg(f[knee_of(lead)] - f[ankle_of(lead)],
                                                       {0.0, 0.0, 1.0}, "lead_shin_angle");
        m[MetricId::TrailShinAngle] = angle_between_deg(f[knee_of(trail)] - f[ankle_of(trail)],
                                                        {0.0, 0.0, 1.0}, "trail_shin_angle");
    } catch (const std::invalid_argument& e) {
        throw FeatureError("degenerate_limb", e.what());
    }

    Vec3 cog{0.0, 0.0, 0.0};
    for (int j = 0; j < kJointCount; ++j) cog += f.joints[j] * kCogWeights[j];
    const Vec3 rel_cog = (cog - f[JointId::Pelvis]) / event_height(f, h);
    m[MetricId::CogX] = rel_cog.x;
    m[MetricId::CogY] = rel_cog.y;
    m[MetricId::CogZ] = rel_cog.z;
    return m;
}

FeatureSchema::FeatureSchema(std::vector<MetricId> roster) : roster_(std::move(roster)) {
    names_.reserve(pose_block_size() + biomech_block_size() + delta_block_size() + 1);
    for (const auto& evt : kEventTokens) {
        for (int j = 0; j < kJointCount; ++j) {
            for (const auto& axis : kAxisTokens) {
                names_.push_back("pose." + evt + "." + joint_names()[j] + "." + axis);
            }
        }
    }
    for (const auto& evt : kEventTokens) {
        for (MetricId id : roster_) names_.push_back("bio." + evt + "." + metric_name(id));
    }
    for (const auto& trans : kDeltaTokens) {
        for (MetricId id : roster_) names_.push_back("delta." + trans + "." + metric_name(id));
    }
    names_.push_back("meta.h_rhp");
}

std::vector<MetricId> FeatureSchema::default_roster() {
    std::vector<MetricId> roster;
    roster.reserve(kMetricCount);
    for (int i = 0; i < kMetricCount; ++i) roster.push_back(static_cast<MetricId>(i));
    return roster;
}

std::vector<double> raw_pose_features(const PoseSequence& seq, const EventSet& ev, Handedness h) {
    std::vector<double> out;
    out.reserve(3u * kJointCount * 3u);
    for (std::size_t t : event_frames(seq, ev)) {
        const PoseFrame& f = seq.frames[t];
        const Vec3 pelvis = f[JointId::Pelvis];
        const double height = event_height(f, h);
        for (int j = 0; j < kJointCount; ++j) {
            const Vec3 p = (f.joints[j] - pelvis) / height;
            out.push_back(p.x);
            out.push_back(p.y);
            out.push_back(p.z);
        }
    }
    return out;
}

std::vector<double> biomech_features(const PoseSequence& seq, const EventSet& ev, Handedness h,
                                     const std::vector<MetricId>& roster) {
    std::vector<double> out;
    out.reserve(roster.size() * 3u);
    for (std::size_t t : event_frames(seq, ev)) {
        const BiomechMetrics m = compute_biomech(seq.frames[t], h);
        for (MetricId id : roster) out.push_back(m[id]);
    }
    return out;
}

std::vector<double> temporal_deltas(const std::vector<double>& biomech_block,
                                    const std::vector<MetricId>& roster) {
    const std::size_t k = roster.size();
    if (biomech_block.size() != 3u * k) {
        throw std::invalid_argument("temporal_deltas: biomech block size mismatch");
    }
    std::vector<double> out;
    out.reserve(2u * k);
    for (std::size_t trans = 0; trans < 2; ++trans) {
        for (std::size_t i = 0; i < k; ++i) {
            const double from = biomech_block[trans * k + i];
            const double to = biomech_block[(trans + 1) * k + i];
            const double d = to - from;
            out.push_back(metric_is_angular(roster[i]) ? wrap_degrees(d) : d);
        }
    }
    return out;
}

FeatureVector assemble(const PoseSequence& seq, const EventSet& ev, Handedness h,
                       const FeatureSchema& schema) {
    FeatureVector fv;
    fv.values.reserve(schema.size());
    const std::vector<double> pose = raw_pose_features(seq, ev, h);
    const std::vector<double> bio = biomech_features(seq, ev, h, schema.roster());
    const std::vector<double> deltas = temporal_deltas(bio, schema.roster());
    fv.values.insert(fv.values.end(), pose.begin(), pose.end());
    fv.values.insert(fv.values.end(), bio.begin(), bio.end());
    fv.values.insert(fv.values.end(), deltas.begin(), deltas.end());
    fv.values.push_back(h == Handedness::RHP ? 1.0 : 0.0);
    return fv;
}

std::vector<std::string> uniform_feature_names(int k) {
    if (k < 2) throw std::invalid_argument("uniform_feature_names: k must be at least 2");
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(k) * kJointCount * 3u + 1u);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < kJointCount; ++j) {
            for (const auto& axis : kAxisTokens) {
                names.push_back("unif." + std::to_string(i) + "." + joint_names()[j] + "." + axis);
            }
        }
    }
    names.push_back("meta.h_rhp");
    return names;
}

std::vector<double> uniform_sampling_features(const PoseSequence& seq, int k, Handedness h) {
    if (k < 2) throw std::invalid_argument("uniform_sampling_features: k must be at least 2");
    const std::size_t n = seq.frames.size();
    if (static_cast<std::size_t>(k) > n) {
        throw std::invalid_argument("uniform_sampling_features: k exceeds sequence length");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(k) * kJointCount * 3u + 1u);
    for (int i = 0; i < k; ++i) {
        const double pos = static_cast<double>(i) * static_cast<double>(n - 1) /
                           static_cast<double>(k - 1);
        const std::size_t t = static_cast<std::size_t>(std::llround(pos));
        const PoseFrame& f = seq.frames[t];
        const Vec3 pelvis = f[JointId::Pelvis];
        const double height = event_height(f, h);
        for (int j = 0; j < kJointCount; ++j) {
            const Vec3 p = (f.joints[j] - pelvis) / height;
            out.push_back(p.x);
            out.push_back(p.y);
            out.push_back(p.z);
        }
    }
    out.push_back(h == Handedness::RHP ? 1.0 : 0.0);
    return out;
}

}  // namespace windup
