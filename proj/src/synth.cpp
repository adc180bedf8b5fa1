#include "windup/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "windup/rng.hpp"

namespace windup {

namespace {

// --- shape primitives -------------------------------------------------------

// Cubic Hermite between (t0, v0, s0) and (t1, v1, s1); clamped outside.
double hermite(double t, double t0, double t1, double v0, double v1, double s0, double s1) {
    if (t <= t0) return v0;
    if (t >= t1) return v1;
    const double len = t1 - t0;
    const double u = (t - t0) / len;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * v0 + (u3 - 2 * u2 + u) * len * s0 +
           (-2 * u3 + 3 * u2) * v1 + (u3 - u2) * len * s1;
}

double ramp(double t, double t0, double t1) { return hermite(t, t0, t1, 0.0, 1.0, 0.0, 0.0); }

double bump(double t, double center, double width) {
    const double u = (t - center) / width;
    return std::exp(-0.5 * u * u);
}

Vec3 heading_dir(double deg) { return {std::cos(deg * kDegToRad), std::sin(deg * kDegToRad), 0.0}; }

Vec3 normalized(const Vec3& v) { return v / norm(v); }

Vec3 lerp(const Vec3& a, const Vec3& b, double u) { return a + (b - a) * u; }

// --- class signatures --------------------------------------------------------

// Per-class kinematic offsets, echoing the feature families the classifier is
// expected to rank highest: trunk lateral lean, throwing-wrist placement at
// MER, head placement at REL, upper-body weight shift, and elbow peak flexion.
struct Signature {
    double tilt_x;     // shoulder-line lateral shift, feet
    double wrist_psi;  // arm-plane rotation at MER, degrees
    double head_x;     // nose/eye offset at REL, feet
    double head_z;     // feet
    double cog_y;      // upper-body depth shift at FP/MER, feet
    double elbow_peak; // peak flexion at MER, degrees
};

constexpr std::array<Signature, kPitchTypeCount> kSignatures = {{
    {0.00, 0.0, 0.00, 0.00, 0.00, 108.0},    // FF
    {0.22, 18.0, -0.12, 0.08, 0.15, 112.0},  // FT
    {-0.22, -18.0, 0.12, -0.08, -0.15, 104.0},  // SL
    {0.10, 30.0, -0.20, 0.14, 0.22, 116.0},  // CH
    {0.30, -30.0, 0.20, -0.05, -0.22, 106.0},  // CB
    {-0.30, 36.0, -0.26, 0.10, 0.10, 118.0},  // SW
    {0.16, -12.0, 0.26, -0.14, -0.10, 110.0},  // FC
    {-0.12, 24.0, -0.06, 0.05, 0.27, 114.0},  // SP
}};

Signature scaled_signature(PitchType label, const SynthConfig& cfg) {
    int idx = static_cast<int>(label);
    if (cfg.twin_classes && (label == cfg.twin_classes->first || label == cfg.twin_classes->second)) {
        idx = static_cast<int>(cfg.twin_classes->first);
    }
    Signature s = kSignatures[idx];
    const double k = cfg.signature_scale;
    s.tilt_x *= k;
    s.wrist_psi *= k;
    s.head_x *= k;
    s.head_z *= k;
    s.cog_y *= k;
    s.elbow_peak = 108.0 + (s.elbow_peak - 108.0) * k;
    return s;
}

// --- scripted delivery -------------------------------------------------------

struct Timeline {
    std::size_t duration;
    double fp, mer, rel;     // scripted event frames
    double knee_peak;        // lead-knee apex
    double lift_start;       // lead leg lift
    double descent_start;    // lead ankle descent toward the plant
    double pelvis_jitter;    // degrees
    double shoulder_jitter;  // degrees
};

// Elbow flexion template: flat base, Hermite rise, quadratic peak joined C1
// to a quadratic valley, constant tail. The peak tops out at `peak` on the
// MER frame and the valley bottoms at 12 deg on the REL frame; both extrema
// sit at the center of a full smoothing window of their polynomial piece, so
// the Savitzky-Golay pass reproduces them exactly.
struct ElbowTemplate {
    double mer, rel, peak;
    double a_peak, a_valley;
    double rise_start, rise_len = 12.0;
    double join;  // C1 junction between the two quadratics

    ElbowTemplate(double mer_frame, double rel_frame, double peak_deg)
        : mer(mer_frame), rel(rel_frame), peak(peak_deg) {
        const double gap = rel - mer;
        const double u = 12.0;  // peak piece half-extent on the valley side
        a_peak = (peak - 12.0) / (u * gap);
        a_valley = a_peak * u / (gap - u);
        join = mer + u;
        rise_start = mer - 11.0 - rise_len;
    }

    double operator()(double t) const {
        const double peak_edge = peak - 121.0 * a_peak;
        if (t < rise_start) return 25.0;
        if (t < mer - 11.0) {
            return hermite(t, rise_start, mer - 11.0, 25.0, peak_edge, 0.0, 22.0 * a_peak);
        }
        if (t <= join) {
            const double d = t - mer;
            return peak - a_peak * d * d;
        }
        if (t <= rel + 11.0) {
            const double d = t - rel;
            return 12.0 + a_valley * d * d;
        }
        return 12.0 + a_valley * 121.0;
    }
};

// Lead-ankle descent end slope (ft/frame). Slightly negative so the smoothed
// derivative clears the settle threshold on the plant frame and not before.
constexpr double kAnkleEndSlope = -0.003;

}  // namespace

std::array<double, kPitchTypeCount> SynthConfig::default_class_distribution() {
    // Production pitch mix: FF, FT, SL, CH, CB, SW, FC, SP.
    constexpr std::array<double, kPitchTypeCount> counts = {38560, 18570, 16221, 12170,
                                                            10456, 10225, 9743, 3616};
    std::array<double, kPitchTypeCount> dist{};
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    for (std::size_t i = 0; i < counts.size(); ++i) dist[i] = counts[i] / total;
    return dist;
}

void SynthConfig::validate() const {
    double sum = 0.0;
    for (const double p : class_distribution) {
        if (p < 0.0) throw std::invalid_argument("SynthConfig: negative class share");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("SynthConfig: class_distribution must sum to 1");
    }
    if (noise_std < 0.0) throw std::invalid_argument("SynthConfig: noise_std must be >= 0");
    if (signature_scale < 0.0) {
        throw std::invalid_argument("SynthConfig: signature_scale must be >= 0");
    }
    if (handedness_ratio < 0.0 || handedness_ratio > 1.0) {
        throw std::invalid_argument("SynthConfig: handedness_ratio must be in [0, 1]");
    }
    if (min_duration < kMinSequenceLength || max_duration < min_duration) {
        throw std::invalid_argument("SynthConfig: bad duration range");
    }
    if (!(fps > 0.0)) throw std::invalid_argument("SynthConfig: fps must be positive");
}

SynthEpisode generate_episode(PitchType label, Handedness h, const SynthConfig& cfg,
                              std::uint64_t episode_seed, std::string episode_id) {
    cfg.validate();
    Rng rng(episode_seed);

    Timeline tl;
    tl.duration = cfg.min_duration +
                  static_cast<std::size_t>(rng.next_below(cfg.max_duration - cfg.min_duration + 1));
    const double t_total = static_cast<double>(tl.duration);
    tl.fp = std::llround(0.58 * t_total) + static_cast<double>(rng.next_below(5)) - 2.0;
    const double d1 = 14.0 + static_cast<double>(rng.next_below(4));  // FP -> MER
    const double d2 = 24.0 + static_cast<double>(rng.next_below(4));  // MER -> REL
    tl.mer = tl.fp + d1;
    tl.rel = tl.mer + d2;
    tl.knee_peak = tl.fp - 24.0;
    tl.lift_start = tl.knee_peak - 22.0;
    // The smoothed ankle velocity clears the settle threshold three frames
    // into the plateau, so the descent lands three frames before the scripted
    // plant frame.
    tl.descent_start = tl.fp - 17.0;
    tl.pelvis_jitter = rng.uniform(-1.5, 1.5);
    tl.shoulder_jitter = rng.uniform(-1.5, 1.5);

    const Signature sig = scaled_signature(label, cfg);
    const ElbowTemplate elbow(tl.mer, tl.rel, sig.elbow_peak);

    // Pelvis opening profile, mean-centered so the sequence-averaged pelvis
    // heading stays pinned near -90 degrees regardless of duration.
    const double rot_span = 38.0;
    double rot_mean = 0.0;
    for (std::size_t t = 0; t < tl.duration; ++t) {
        rot_mean += rot_span * ramp(static_cast<double>(t), tl.fp - 6.0, tl.fp + 12.0);
    }
    rot_mean /= t_total;

    PoseSequence seq;
    seq.episode_id = std::move(episode_id);
    seq.fps = cfg.fps;
    seq.label = label;
    seq.frames.reserve(tl.duration);

    for (std::size_t frame = 0; frame < tl.duration; ++frame) {
        const double t = static_cast<double>(frame);
        PoseFrame f;

        // Lower body. The lead side is generated as the left leg (RHP); the
        // whole frame is mirrored afterwards for LHP episodes.
        const double ankle_z =
            t < tl.knee_peak
                ? hermite(t, tl.lift_start, tl.knee_peak, 0.25, 1.45, 0.0, 0.0)
                : hermite(t, tl.descent_start, tl.fp - 3.0, 1.45, 0.25, 0.0, kAnkleEndSlope);
        const double knee_z =
            t < tl.knee_peak - 8.0
                ? hermite(t, tl.lift_start, tl.knee_peak - 8.0, 1.45, 2.11, 0.0, 0.16)
                : (t <= tl.knee_peak + 8.0
                       ? 2.75 - 0.01 * (t - tl.knee_peak) * (t - tl.knee_peak)
                       : hermite(t, tl.knee_peak + 8.0, tl.fp, 2.11, 1.55, -0.16, 0.0));
        const double stride = ramp(t, tl.lift_start, tl.fp);
        f[JointId::LeftAnkle] = {0.0, -0.30 - 3.50 * stride, ankle_z};
        f[JointId::LeftKnee] = {0.0, -0.30 - 2.30 * stride, knee_z};
        f[JointId::RightAnkle] = {0.05, 0.35, 0.25};
        const double trail_bend = ramp(t, tl.fp - 6.0, tl.fp + 10.0);
        f[JointId::RightKnee] = {0.02, 0.33 - 0.28 * trail_bend, 1.45 - 0.27 * trail_bend};

        // Pelvis and hips.
        const double weight_shift = ramp(t, tl.descent_start - 6.0, tl.fp + 8.0);
        const Vec3 pelvis = {0.0, -1.30 * weight_shift, 3.0 - 0.28 * weight_shift};
        f[JointId::Pelvis] = pelvis;
        const double hip_heading = -90.0 +
                                   rot_span * ramp(t, tl.fp - 6.0, tl.fp + 12.0) - rot_mean +
                                   tl.pelvis_jitter;
        const Vec3 hip_dir = heading_dir(hip_heading);
        f[JointId::LeftHip] = pelvis + hip_dir * 0.32;
        f[JointId::RightHip] = pelvis + hip_dir * -0.32;

        // Trunk: lateral lean carries the tilt signature, depth carries the
        // upper-body weight-shift signature.
        const double event_bumps =
            bump(t, tl.fp, 4.0) + bump(t, tl.mer, 4.0) + bump(t, tl.rel, 4.0);
        const double sx = sig.tilt_x * event_bumps;
        const double sy = -0.55 * ramp(t, tl.fp - 2.0, tl.fp + 13.0) +
                          sig.cog_y * (bump(t, tl.fp, 4.0) + bump(t, tl.mer, 4.0));
        const double trunk_len = 1.85;
        const Vec3 mid_shoulder =
            pelvis + Vec3{sx, sy, std::sqrt(trunk_len * trunk_len - sx * sx - sy * sy)};
        const double shoulder_heading =
            -90.0 + 55.0 * ramp(t, tl.fp - 2.0, tl.fp + 13.0) + tl.shoulder_jitter;
        const Vec3 shoulder_dir = heading_dir(shoulder_heading);
        f[JointId::LeftShoulder] = mid_shoulder + shoulder_dir * 0.55;
        f[JointId::RightShoulder] = mid_shoulder + shoulder_dir * -0.55;
        f[JointId::Neck] = mid_shoulder + Vec3{0.0, 0.0, 0.12};

        // Head, with the release-anchored placement signature.
        const Vec3 facing = heading_dir(shoulder_heading + 90.0);
        const double head_bump = bump(t, tl.rel, 4.0);
        const Vec3 nose = f[JointId::Neck] + facing * 0.25 +
                          Vec3{sig.head_x * head_bump, 0.0, 0.28 + sig.head_z * head_bump};
        f[JointId::Nose] = nose;
        f[JointId::LeftEye] = nose + shoulder_dir * 0.11 + Vec3{0.0, 0.0, 0.07};
        f[JointId::RightEye] = nose + shoulder_dir * -0.11 + Vec3{0.0, 0.0, 0.07};

        // Throwing arm (right). The forearm direction is built from the
        // scripted flexion angle, so the elbow-angle series reproduces the
        // template exactly; rotating the arm plane moves the wrist laterally
        // without touching that angle.
        const double phi = 115.0 * kDegToRad * ramp(t, tl.mer - 26.0, tl.mer - 4.0);
        const Vec3 upper_dir = {0.0, -std::sin(phi), -std::cos(phi)};
        const Vec3 in_plane = {0.0, std::cos(phi), -std::sin(phi)};
        const double psi = sig.wrist_psi * kDegToRad * bump(t, tl.mer, 5.0);
        const Vec3 bend_dir = in_plane * std::cos(psi) + Vec3{1.0, 0.0, 0.0} * std::sin(psi);
        const double flex = elbow(t) * kDegToRad;
        const Vec3 forearm_dir = upper_dir * std::cos(flex) + bend_dir * std::sin(flex);
        f[JointId::RightElbow] = f[JointId::RightShoulder] + upper_dir * 1.05;
        f[JointId::RightWrist] = f[JointId::RightElbow] + forearm_dir * 0.95;

        // Glove arm tucks across the delivery.
        const double tuck = ramp(t, tl.fp - 2.0, tl.fp + 13.0);
        const Vec3 glove_upper = normalized(lerp({0.05, 0.10, -0.99}, {0.30, -0.45, -0.84}, tuck));
        const Vec3 glove_fore = normalized(lerp({0.05, 0.15, -0.99}, {-0.20, -0.75, -0.63}, tuck));
        f[JointId::LeftElbow] = f[JointId::LeftShoulder] + glove_upper * 1.05;
        f[JointId::LeftWrist] = f[JointId::LeftElbow] + glove_fore * 0.95;

        seq.frames.push_back(f);
    }

    if (cfg.noise_std > 0.0) {
        for (auto& f : seq.frames) {
            for (auto& joint : f.joints) {
                joint.x += cfg.noise_std * rng.next_gaussian();
                joint.y += cfg.noise_std * rng.next_gaussian();
                joint.z += cfg.noise_std * rng.next_gaussian();
            }
        }
    }

    // Quantize to 0.1 mm so written files stay compact; well below noise and
    // every detection margin.
    for (auto& f : seq.frames) {
        for (auto& joint : f.joints) {
            joint.x = std::round(joint.x * 1e4) / 1e4;
            joint.y = std::round(joint.y * 1e4) / 1e4;
            joint.z = std::round(joint.z * 1e4) / 1e4;
        }
    }

    SynthEpisode episode;
    episode.truth_handedness = h;
    episode.truth_label = label;
    episode.truth_events = {static_cast<std::size_t>(tl.fp), static_cast<std::size_t>(tl.mer),
                            static_cast<std::size_t>(tl.rel)};
    episode.sequence = h == Handedness::RHP ? std::move(seq) : mirror_x(seq);
    return episode;
}

std::vector<SynthEpisode> generate_dataset(const SynthConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.n_episodes;

    // Largest-remainder apportionment of class counts.
    std::array<std::size_t, kPitchTypeCount> counts{};
    std::array<double, kPitchTypeCount> remainders{};
    std::size_t assigned = 0;
    for (int c = 0; c < kPitchTypeCount; ++c) {
        const double quota = cfg.class_distribution[c] * static_cast<double>(n);
        counts[c] = static_cast<std::size_t>(quota);
        remainders[c] = quota - static_cast<double>(counts[c]);
        assigned += counts[c];
    }
    std::vector<int> order(kPitchTypeCount);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return remainders[a] > remainders[b]; });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned) {
        counts[order[i % kPitchTypeCount]] += 1;
    }

    std::vector<PitchType> labels;
    labels.reserve(n);
    for (int c = 0; c < kPitchTypeCount; ++c) {
        labels.insert(labels.end(), counts[c], static_cast<PitchType>(c));
    }
    std::vector<Handedness> hands(n, Handedness::LHP);
    const std::size_t n_rhp = static_cast<std::size_t>(
        std::llround(cfg.handedness_ratio * static_cast<double>(n)));
    std::fill(hands.begin(), hands.begin() + std::min(n_rhp, n), Handedness::RHP);

    Rng rng(derive_stream(cfg.seed, 0x646174617365744cULL));
    rng.shuffle(labels);
    rng.shuffle(hands);

    std::vector<SynthEpisode> episodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        char id[32];
        std::snprintf(id, sizeof(id), "synth-%06zu", i);
        episodes[i] = generate_episode(labels[i], hands[i], cfg,
                                       derive_stream(cfg.seed, 0x6570u + i), id);
    }
    return episodes;
}

std::string manifest_to_json(const std::vector<SynthEpisode>& episodes, const SynthConfig& cfg) {
    nlohmann::json doc;
    doc["format"] = "windup-truth";
    doc["version"] = 1;
    doc["seed"] = cfg.seed;
    doc["noise_std"] = cfg.noise_std;
    doc["signature_scale"] = cfg.signature_scale;
    nlohmann::json eps = nlohmann::json::array();
    for (const auto& e : episodes) {
        eps.push_back({{"episode_id", e.sequence.episode_id},
                       {"label", pitch_code(e.truth_label)},
                       {"handedness", handedness_code(e.truth_handedness)},
                       {"fp", e.truth_events.fp},
                       {"mer", e.truth_events.mer},
                       {"rel", e.truth_events.rel},
                       {"frames", e.sequence.frames.size()},
                       {"fps", e.sequence.fps}});
    }
    doc["episodes"] = std::move(eps);
    return doc.dump();
}

void write_manifest(const std::string& path, const std::vector<SynthEpisode>& episodes,
                    const SynthConfig& cfg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_manifest: cannot open '" + path + "'");
    out << manifest_to_json(episodes, cfg) << '\n';
}

}  // namespace windup
