#include "windup/events.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace windup {

namespace {

Series joint_axis_series(const PoseSequence& seq, JointId id, double Vec3::*axis) {
    Series out;
    out.reserve(seq.frames.size());
    for (const auto& f : seq.frames) out.push_back(f[id].*axis);
    return out;
}

bool in_band(double v, double lo, double hi) { return v >= lo && v <= hi; }

// Empirical pelvis-heading bands for the consistency check.
constexpr double kRhpBandLo = -108.0, kRhpBandHi = -76.0;
constexpr double kLhpBandLo = 82.0, kLhpBandHi = 94.0;

}  // namespace

HandednessReport infer_handedness(const PoseSequence& seq) {
    double delta = 0.0;
    double pelvis = 0.0;
    for (const auto& f : seq.frames) {
        delta += f[JointId::LeftAnkle].y - f[JointId::RightAnkle].y;
        pelvis += heading_xy(f[JointId::LeftHip] - f[JointId::RightHip]);
    }
    const double n = static_cast<double>(seq.frames.size());
    delta /= n;
    pelvis /= n;

    HandednessReport report;
    report.delta_ankle = delta;
    report.mean_pelvis_rotation = pelvis;
    if (delta < 0.0) {
        report.handedness = Handedness::RHP;
    } else if (delta > 0.0) {
        report.handedness = Handedness::LHP;
    } else {
        // Measure-zero tie: fall back to the pelvis band, defaulting to RHP.
        report.handedness = in_band(pelvis, kLhpBandLo, kLhpBandHi) ? Handedness::LHP
                                                                    : Handedness::RHP;
    }
    report.methods_agree = report.handedness == Handedness::RHP
                               ? in_band(pelvis, kRhpBandLo, kRhpBandHi)
                               : in_band(pelvis, kLhpBandLo, kLhpBandHi);
    return report;
}

Series elbow_flexion_series(const PoseSequence& seq, Handedness h, const EventConfig& cfg) {
    const Side arm = throwing_side(h);
    const JointId sh = shoulder_of(arm), el = elbow_of(arm), wr = wrist_of(arm);
    Series flexion;
    flexion.reserve(seq.frames.size());
    for (std::size_t t = 0; t < seq.frames.size(); ++t) {
        const auto& f = seq.frames[t];
        try {
            flexion.push_back(180.0 - interior_angle(f[sh], f[el], f[wr]));
        } catch (const std::invalid_argument& e) {
            throw DetectionError("degenerate_elbow",
                                 std::string(e.what()) + " at frame " + std::to_string(t));
        }
    }
    return savgol_smooth(flexion, cfg.smooth_window, cfg.smooth_polyorder);
}

std::size_t detect_foot_plant(const PoseSequence& seq, Handedness h, const EventConfig& cfg) {
    const Side lead = lead_side(h);
    const Series knee_z = savgol_smooth(joint_axis_series(seq, knee_of(lead), &Vec3::z),
                                        cfg.smooth_window, cfg.smooth_polyorder);
    const Series ankle_z = savgol_smooth(joint_axis_series(seq, ankle_of(lead), &Vec3::z),
                                         cfg.smooth_window, cfg.smooth_polyorder);
    const Series ankle_v = derivative(ankle_z);

    const std::size_t knee_peak = argmax_in_range(knee_z, 0, knee_z.size() - 1);
    double min_height = std::numeric_limits<double>::infinity();
    for (std::size_t t = knee_peak + 1; t < ankle_z.size(); ++t) {
        min_height = std::min(min_height, ankle_z[t]);
        if (ankle_z[t] < cfg.ankle_height_ft && ankle_v[t] > cfg.ankle_velocity_ft_per_frame) {
            return t;
        }
    }
    std::ostringstream detail;
    detail << "no settled frame after knee peak " << knee_peak << "; min ankle height reached "
           << min_height << " ft";
    throw DetectionError("no_foot_plant", detail.str());
}

std::size_t detect_release(const Series& elbow, const EventConfig& cfg) {
    std::size_t gate = elbow.size();
    for (std::size_t t = elbow.size(); t-- > 0;) {
        if (elbow[t] > cfg.release_gate_deg) {
            gate = t;
            break;
        }
    }
    if (gate == elbow.size()) {
        std::ostringstream detail;
        detail << "elbow flexion never exceeds " << cfg.release_gate_deg << " deg (max "
               << *std::max_element(elbow.begin(), elbow.end()) << ")";
        throw DetectionError("no_cocking_peak", detail.str());
    }

    for (std::size_t idx : local_minima(elbow)) {
        if (idx > gate && elbow[idx] < cfg.release_low_deg) return idx;
    }
    // Monotone tail after smoothing: settle for the first qualifying frame.
    for (std::size_t t = gate + 1; t < elbow.size(); ++t) {
        if (elbow[t] < cfg.release_low_deg) return t;
    }
    std::ostringstream detail;
    detail << "no frame below " << cfg.release_low_deg << " deg after gate frame " << gate;
    throw DetectionError("no_release_drop", detail.str());
}

std::size_t detect_mer(const Series& elbow, std::size_t fp, std::size_t rel) {
    if (fp > rel) throw std::invalid_argument("detect_mer: fp must not exceed rel");
    return argmax_in_range(elbow, fp, rel);
}

DetectionResult detect_events(const PoseSequence& seq, const EventConfig& cfg) {
    if (seq.frames.size() < kMinSequenceLength) {
        throw DetectionError("too_short",
                             "episode has " + std::to_string(seq.frames.size()) +
                                 " frames, minimum is " + std::to_string(kMinSequenceLength));
    }
    DetectionResult result;
    result.handedness = infer_handedness(seq);
    const Handedness h = result.handedness.handedness;

    const Series elbow = elbow_flexion_series(seq, h, cfg);
    const std::size_t fp = detect_foot_plant(seq, h, cfg);
    const std::size_t rel = detect_release(elbow, cfg);
    if (fp > rel) {
        std::ostringstream detail;
        detail << "foot plant " << fp << " after release " << rel;
        throw DetectionError("event_order", detail.str());
    }
    result.events.fp = fp;
    result.events.rel = rel;
    result.events.mer = detect_mer(elbow, fp, rel);
    return result;
}

}  // namespace windup
