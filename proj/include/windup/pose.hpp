#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "windup/geometry.hpp"

namespace windup {

inline constexpr int kJointCount = 17;

// 17-joint skeleton. Ordinals are the wire order of every pose file.
enum class JointId : int {
    Nose = 0,
    Neck = 1,
    LeftShoulder = 2,
    RightShoulder = 3,
    LeftElbow = 4,
    RightElbow = 5,
    LeftWrist = 6,
    RightWrist = 7,
    Pelvis = 8,
    LeftHip = 9,
    RightHip = 10,
    LeftKnee = 11,
    RightKnee = 12,
    LeftAnkle = 13,
    RightAnkle = 14,
    LeftEye = 15,
    RightEye = 16,
};

const std::array<std::string, kJointCount>& joint_names();
const std::string& joint_name(JointId id);
JointId parse_joint(std::string_view name);

enum class Side { Left, Right };

// RHP strides with the left leg and throws with the right arm; LHP mirrored.
enum class Handedness { RHP, LHP };

inline Side lead_side(Handedness h) { return h == Handedness::RHP ? Side::Left : Side::Right; }
inline Side trail_side(Handedness h) { return h == Handedness::RHP ? Side::Right : Side::Left; }
inline Side throwing_side(Handedness h) { return h == Handedness::RHP ? Side::Right : Side::Left; }
inline Side glove_side(Handedness h) { return h == Handedness::RHP ? Side::Left : Side::Right; }

inline const std::string& handedness_code(Handedness h) {
    static const std::string rhp = "RHP", lhp = "LHP";
    return h == Handedness::RHP ? rhp : lhp;
}
Handedness parse_handedness(std::string_view code);

inline JointId shoulder_of(Side s) { return s == Side::Left ? JointId::LeftShoulder : JointId::RightShoulder; }
inline JointId elbow_of(Side s) { return s == Side::Left ? JointId::LeftElbow : JointId::RightElbow; }
inline JointId wrist_of(Side s) { return s == Side::Left ? JointId::LeftWrist : JointId::RightWrist; }
inline JointId hip_of(Side s) { return s == Side::Left ? JointId::LeftHip : JointId::RightHip; }
inline JointId knee_of(Side s) { return s == Side::Left ? JointId::LeftKnee : JointId::RightKnee; }
inline JointId ankle_of(Side s) { return s == Side::Left ? JointId::LeftAnkle : JointId::RightAnkle; }
inline JointId eye_of(Side s) { return s == Side::Left ? JointId::LeftEye : JointId::RightEye; }

// The eight pitch-type codes, in canonical order.
enum class PitchType : int { FF = 0, FT, SL, CH, CB, SW, FC, SP };

inline constexpr int kPitchTypeCount = 8;
const std::array<std::string, kPitchTypeCount>& pitch_type_codes();
const std::string& pitch_code(PitchType t);
PitchType parse_pitch_type(std::string_view code);

struct PoseFrame {
    std::array<Vec3, kJointCount> joints{};

    const Vec3& operator[](JointId id) const { return joints[static_cast<int>(id)]; }
    Vec3& operator[](JointId id) { return joints[static_cast<int>(id)]; }
};

// One pitch episode. Coordinates are in feet: x lateral, y along the
// pitch axis, z vertical. Immutable once ingested.
struct PoseSequence {
    std::string episode_id;
    double fps = 30.0;
    std::vector<PoseFrame> frames;
    std::optional<PitchType> label;

    std::size_t length() const { return frames.size(); }
};

// Minimum episode length enforced at ingest.
inline constexpr std::size_t kMinSequenceLength = 100;

// Reflect across the x axis and swap left/right joints. Maps an RHP delivery
// onto its LHP counterpart.
PoseFrame mirror_x(const PoseFrame& f);
PoseSequence mirror_x(const PoseSequence& seq);

}  // namespace windup
