#include "windup/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "windup/pose.hpp"
#include "windup/rng.hpp"

namespace windup {

SplitResult stratified_split(const std::vector<std::string>& labels, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw std::invalid_argument("stratified_split: train_fraction must be in (0, 1)");
    }
    // Classes processed in first-appearance order; membership order preserved.
    std::vector<std::string> class_order;
    std::map<std::string, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto it = members.find(labels[i]);
        if (it == members.end()) {
            class_order.push_back(labels[i]);
            members.emplace(labels[i], std::vector<std::size_t>{i});
        } else {
            it->second.push_back(i);
        }
    }

    Rng rng(spec.seed);
    SplitResult result;
    for (const auto& cls : class_order) {
        auto& idx = members[cls];
        if (idx.size() < 2) {
            throw std::invalid_argument("stratified_split: class '" + cls +
                                        "' has fewer than 2 samples");
        }
        if (spec.stratified) {
            rng.shuffle(idx);
        }
        const std::size_t take = std::clamp<std::size_t>(
            static_cast<std::size_t>(
                std::llround(spec.train_fraction * static_cast<double>(idx.size()))),
            1, idx.size() - 1);
        result.train.insert(result.train.end(), idx.begin(), idx.begin() + take);
        result.test.insert(result.test.end(), idx.begin() + take, idx.end());
    }
    std::sort(result.train.begin(), result.train.end());
    std::sort(result.test.begin(), result.test.end());
    return result;
}

namespace {

std::map<std::string, std::size_t> class_index(const std::vector<std::string>& classes) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < classes.size(); ++i) index[classes[i]] = i;
    return index;
}

std::size_t lookup(const std::map<std::string, std::size_t>& index, const std::string& label) {
    const auto it = index.find(label);
    if (it == index.end()) {
        throw std::invalid_argument("unknown class code '" + label + "'");
    }
    return it->second;
}

}  // namespace

MetricsReport classification_metrics(const std::vector<std::string>& y_true,
                                     const std::vector<std::string>& y_pred,
                                     const std::vector<std::string>& classes) {
    if (y_true.size() != y_pred.size()) {
        throw std::invalid_argument("classification_metrics: label vectors differ in length");
    }
    const auto index = class_index(classes);
    const std::size_t k = classes.size();
    std::vector<std::size_t> tp(k, 0), fp(k, 0), fn(k, 0), support(k, 0);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const std::size_t t = lookup(index, y_true[i]);
        const std::size_t p = lookup(index, y_pred[i]);
        ++support[t];
        if (t == p) {
            ++tp[t];
            ++correct;
        } else {
            ++fn[t];
            ++fp[p];
        }
    }

    MetricsReport report;
    report.accuracy = y_true.empty() ? 0.0
                                     : static_cast<double>(correct) /
                                           static_cast<double>(y_true.size());
    for (std::size_t c = 0; c < k; ++c) {
        ClassMetrics m;
        m.label = classes[c];
        m.support = support[c];
        const double denom_p = static_cast<double>(tp[c] + fp[c]);
        const double denom_r = static_cast<double>(tp[c] + fn[c]);
        m.precision = denom_p > 0.0 ? static_cast<double>(tp[c]) / denom_p : 0.0;
        m.recall = denom_r > 0.0 ? static_cast<double>(tp[c]) / denom_r : 0.0;
        m.f1 = (m.precision + m.recall) > 0.0
                   ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                   : 0.0;
        report.per_class.push_back(m);
        report.macro_precision += m.precision;
        report.macro_recall += m.recall;
        report.macro_f1 += m.f1;
    }
    if (k > 0) {
        report.macro_precision /= static_cast<double>(k);
        report.macro_recall /= static_cast<double>(k);
        report.macro_f1 /= static_cast<double>(k);
    }
    return report;
}

ConfusionMatrix confusion_matrix(const std::vector<std::string>& y_true,
                                 const std::vector<std::string>& y_pred,
                                 const std::vector<std::string>& classes) {
    if (y_true.size() != y_pred.size()) {
        throw std::invalid_argument("confusion_matrix: label vectors differ in length");
    }
    const auto index = class_index(classes);
    const std::size_t k = classes.size();
    ConfusionMatrix cm;
    cm.classes = classes;
    cm.counts.assign(k, std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        ++cm.counts[lookup(index, y_true[i])][lookup(index, y_pred[i])];
    }
    cm.row_normalized.assign(k, std::vector<double>(k, 0.0));
    cm.row_defined.assign(k, false);
    for (std::size_t r = 0; r < k; ++r) {
        std::size_t row_total = 0;
        for (const std::size_t v : cm.counts[r]) row_total += v;
        if (row_total == 0) continue;  // zero-support rows stay flagged, never divided
        cm.row_defined[r] = true;
        for (std::size_t c = 0; c < k; ++c) {
            cm.row_normalized[r][c] =
                static_cast<double>(cm.counts[r][c]) / static_cast<double>(row_total);
        }
    }
    return cm;
}

std::map<std::string, GroupAccuracy> group_accuracy(const std::vector<std::string>& y_true,
                                                    const std::vector<std::string>& y_pred,
                                                    const std::vector<std::string>& groups) {
    if (y_true.size() != y_pred.size() || y_true.size() != groups.size()) {
        throw std::invalid_argument("group_accuracy: input vectors differ in length");
    }
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // correct, total
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        auto& t = tally[groups[i]];
        t.second += 1;
        if (y_true[i] == y_pred[i]) t.first += 1;
    }
    std::map<std::string, GroupAccuracy> out;
    for (const auto& [group, t] : tally) {
        out[group] = {t.second, static_cast<double>(t.first) / static_cast<double>(t.second)};
    }
    return out;
}

const std::map<std::string, std::vector<std::string>>& body_regions() {
    static const std::map<std::string, std::vector<std::string>> regions = {
        {"arms",
         {"left_shoulder", "right_shoulder", "left_elbow", "right_elbow", "left_wrist",
          "right_wrist"}},
        {"head", {"nose", "left_eye", "right_eye"}},
        {"trunk", {"neck", "pelvis"}},
        {"lower_body",
         {"left_hip", "right_hip", "left_knee", "right_knee", "left_ankle", "right_ankle"}},
    };
    return regions;
}

const AttributionTable& default_attribution() {
    static const AttributionTable table = {
        {"lead_knee_flexion", {{"left_knee", 0.5}, {"right_knee", 0.5}}},
        {"trail_knee_flexion", {{"left_knee", 0.5}, {"right_knee", 0.5}}},
        {"throwing_elbow_flexion", {{"left_elbow", 0.5}, {"right_elbow", 0.5}}},
        {"glove_elbow_flexion", {{"left_elbow", 0.5}, {"right_elbow", 0.5}}},
        {"trunk_forward_tilt", {{"neck", 0.5}, {"pelvis", 0.5}}},
        {"trunk_lateral_tilt", {{"neck", 0.5}, {"pelvis", 0.5}}},
        {"trunk_rotation", {{"neck", 0.5}, {"pelvis", 0.5}}},
        {"pelvis_rotation", {{"left_hip", 0.5}, {"right_hip", 0.5}}},
        {"hip_shoulder_separation",
         {{"left_shoulder", 0.25}, {"right_shoulder", 0.25}, {"left_hip", 0.25}, {"right_hip", 0.25}}},
        // Feature names carry no per-episode handedness, so the throwing
        // shoulder is split across both shoulder joints.
        {"throwing_shoulder_abduction", {{"left_shoulder", 0.5}, {"right_shoulder", 0.5}}},
        {"lead_shin_angle",
         {{"left_ankle", 0.25}, {"right_ankle", 0.25}, {"left_knee", 0.25}, {"right_knee", 0.25}}},
        {"trail_shin_angle",
         {{"left_ankle", 0.25}, {"right_ankle", 0.25}, {"left_knee", 0.25}, {"right_knee", 0.25}}},
        {"cog_x", {{"pelvis", 1.0}}},
        {"cog_y", {{"pelvis", 1.0}}},
        {"cog_z", {{"pelvis", 1.0}}},
    };
    return table;
}

namespace {

std::vector<std::string> split_name(const std::string& name) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = name.find('.', start);
        if (dot == std::string::npos) {
            parts.push_back(name.substr(start));
            break;
        }
        parts.push_back(name.substr(start, dot - start));
        start = dot + 1;
    }
    return parts;
}

[[noreturn]] void unmapped(const std::string& name) {
    throw std::invalid_argument("aggregate_importance: unmapped feature name '" + name + "'");
}

}  // namespace

ImportanceBreakdown aggregate_importance(const std::vector<double>& importance,
                                         const std::vector<std::string>& names,
                                         const AttributionTable& attribution) {
    if (importance.size() != names.size()) {
        throw std::invalid_argument("aggregate_importance: size mismatch");
    }

    ImportanceBreakdown out;
    out.by_category = {{"pose", 0.0}, {"biomech", 0.0}, {"delta", 0.0}, {"handedness", 0.0}};
    for (const auto& joint : joint_names()) out.by_joint[joint] = 0.0;
    for (const auto& [region, joints] : body_regions()) out.by_region[region] = 0.0;
    out.by_event = {{"FP", 0.0}, {"MER", 0.0}, {"REL", 0.0}};

    std::map<std::string, std::string> joint_to_region;
    for (const auto& [region, joints] : body_regions()) {
        for (const auto& j : joints) joint_to_region[j] = region;
    }

    for (std::size_t i = 0; i < names.size(); ++i) {
        const double w = importance[i];
        const auto parts = split_name(names[i]);
        if (parts.empty()) unmapped(names[i]);

        if (parts[0] == "meta") {
            if (parts.size() != 2 || parts[1] != "h_rhp") unmapped(names[i]);
            out.by_category["handedness"] += w;
            continue;
        }
        if (parts[0] == "pose") {
            if (parts.size() != 4) unmapped(names[i]);
            const auto& evt = parts[1];
            const auto& joint = parts[2];
            if (!out.by_event.count(evt) || !out.by_joint.count(joint)) unmapped(names[i]);
            out.by_category["pose"] += w;
            out.by_joint[joint] += w;
            out.by_region[joint_to_region[joint]] += w;
            out.by_event[evt] += w;
            continue;
        }
        if (parts[0] == "bio" || parts[0] == "delta") {
            if (parts.size() != 3) unmapped(names[i]);
            const auto attr = attribution.find(parts[2]);
            if (attr == attribution.end()) unmapped(names[i]);
            for (const auto& [joint, share] : attr->second) {
                if (!out.by_joint.count(joint)) unmapped(names[i]);
                out.by_joint[joint] += w * share;
                out.by_region[joint_to_region[joint]] += w * share;
            }
            if (parts[0] == "bio") {
                if (!out.by_event.count(parts[1])) unmapped(names[i]);
                out.by_category["biomech"] += w;
                out.by_event[parts[1]] += w;
            } else {
                out.by_category["delta"] += w;
                // Transitions lend half their weight to each flanking event.
                if (parts[1] == "FP_MER") {
                    out.by_event["FP"] += 0.5 * w;
                    out.by_event["MER"] += 0.5 * w;
                } else if (parts[1] == "MER_REL") {
                    out.by_event["MER"] += 0.5 * w;
                    out.by_event["REL"] += 0.5 * w;
                } else {
                    unmapped(names[i]);
                }
            }
            continue;
        }
        unmapped(names[i]);
    }

    // Joint, region and event views cover everything except the handedness
    // bit; renormalize them over the remaining mass.
    double residual = 0.0;
    for (const auto& [cat, w] : out.by_category) {
        if (cat != "handedness") residual += w;
    }
    if (residual > 1e-15) {
        for (auto& [joint, w] : out.by_joint) w /= residual;
        for (auto& [region, w] : out.by_region) w /= residual;
        for (auto& [evt, w] : out.by_event) w /= residual;
    } else {
        out.by_joint.clear();
        out.by_region.clear();
        out.by_event.clear();
    }
    return out;
}

}  // namespace windup
