#include "windup/pose.hpp"

#include <utility>

namespace windup {

const std::array<std::string, kJointCount>& joint_names() {
    static const std::array<std::string, kJointCount> names = {
        "nose",       "neck",        "left_shoulder", "right_shoulder", "left_elbow",
        "right_elbow", "left_wrist", "right_wrist",   "pelvis",         "left_hip",
        "right_hip",  "left_knee",   "right_knee",    "left_ankle",     "right_ankle",
        "left_eye",   "right_eye"};
    return names;
}

const std::string& joint_name(JointId id) { return joint_names()[static_cast<int>(id)]; }

JointId parse_joint(std::string_view name) {
    const auto& names = joint_names();
    for (int i = 0; i < kJointCount; ++i) {
        if (names[i] == name) return static_cast<JointId>(i);
    }
    throw std::invalid_argument("parse_joint: unknown joint name '" + std::string(name) + "'");
}

Handedness parse_handedness(std::string_view code) {
    if (code == "RHP") return Handedness::RHP;
    if (code == "LHP") return Handedness::LHP;
    throw std::invalid_argument("parse_handedness: unknown code '" + std::string(code) + "'");
}

const std::array<std::string, kPitchTypeCount>& pitch_type_codes() {
    static const std::array<std::string, kPitchTypeCount> codes = {"FF", "FT", "SL", "CH",
                                                                   "CB", "SW", "FC", "SP"};
    return codes;
}

const std::string& pitch_code(PitchType t) { return pitch_type_codes()[static_cast<int>(t)]; }

PitchType parse_pitch_type(std::string_view code) {
    const auto& codes = pitch_type_codes();
    for (int i = 0; i < kPitchTypeCount; ++i) {
        if (codes[i] == code) return static_cast<PitchType>(i);
    }
    throw std::invalid_argument("parse_pitch_type: unknown code '" + std::string(code) + "'");
}

namespace {

JointId mirror_joint(JointId id) {
    switch (id) {
        case JointId::LeftShoulder: return JointId::RightShoulder;
        case JointId::RightShoulder: return JointId::LeftShoulder;
        case JointId::LeftElbow: return JointId::RightElbow;
        case JointId::RightElbow: return JointId::LeftElbow;
        case JointId::LeftWrist: return JointId::RightWrist;
        case JointId::RightWrist: return JointId::LeftWrist;
        case JointId::LeftHip: return JointId::RightHip;
        case JointId::RightHip: return JointId::LeftHip;
        case JointId::LeftKnee: return JointId::RightKnee;
        case JointId::RightKnee: return JointId::LeftKnee;
        case JointId::LeftAnkle: return JointId::RightAnkle;
        case JointId::RightAnkle: return JointId::LeftAnkle;
        case JointId::LeftEye: return JointId::RightEye;
        case JointId::RightEye: return JointId::LeftEye;
        default: return id;
    }
}

}  // namespace

PoseFrame mirror_x(const PoseFrame& f) {
    PoseFrame out;
    for (int i = 0; i < kJointCount; ++i) {
        const Vec3& p = f.joints[i];
        out[mirror_joint(static_cast<JointId>(i))] = {-p.x, p.y, p.z};
    }
    return out;
}

PoseSequence mirror_x(const PoseSequence& seq) {
    PoseSequence out;
    out.episode_id = seq.episode_id;
    out.fps = seq.fps;
    out.label = seq.label;
    out.frames.reserve(seq.frames.size());
    for (const auto& f : seq.frames) out.frames.push_back(mirror_x(f));
    return out;
}

}  // namespace windup
