#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace windup {

struct SplitSpec {
    double train_fraction = 0.8;
    bool stratified = true;
    std::uint64_t seed = 0;
};

// Seeded per-class shuffle and cut; per-class train counts stay within one
// sample of the global fraction. Returned index lists preserve input order.
struct SplitResult {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};
SplitResult stratified_split(const std::vector<std::string>& labels, const SplitSpec& spec);

struct ClassMetrics {
    std::string label;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;
};

struct MetricsReport {
    double accuracy = 0.0;
    std::vector<ClassMetrics> per_class;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
};

MetricsReport classification_metrics(const std::vector<std::string>& y_true,
                                     const std::vector<std::string>& y_pred,
                                     const std::vector<std::string>& classes);

struct ConfusionMatrix {
    std::vector<std::string> classes;
    std::vector<std::vector<std::size_t>> counts;     // [true][pred]
    std::vector<std::vector<double>> row_normalized;  // rows sum to 1
    std::vector<bool> row_defined;                    // false for zero-support rows
};

ConfusionMatrix confusion_matrix(const std::vector<std::string>& y_true,
                                 const std::vector<std::string>& y_pred,
                                 const std::vector<std::string>& classes);

struct GroupAccuracy {
    std::size_t count = 0;
    double accuracy = 0.0;
};

// Accuracy within each group label; empty groups are absent from the map.
std::map<std::string, GroupAccuracy> group_accuracy(const std::vector<std::string>& y_true,
                                                    const std::vector<std::string>& y_pred,
                                                    const std::vector<std::string>& groups);

// Weighted attribution of one feature's importance across joints.
using JointWeights = std::vector<std::pair<std::string, double>>;
using AttributionTable = std::map<std::string, JointWeights>;

// Default metric -> joint attribution used by the joint and region views.
const AttributionTable& default_attribution();

// The four decomposition views plus the per-event view. The joint, region
// and event views exclude the handedness bit and renormalize.
struct ImportanceBreakdown {
    std::map<std::string, double> by_category;  // pose / biomech / delta / handedness
    std::map<std::string, double> by_joint;     // 17 joints
    std::map<std::string, double> by_region;    // arms / head / trunk / lower_body
    std::map<std::string, double> by_event;     // FP / MER / REL
};

ImportanceBreakdown aggregate_importance(const std::vector<double>& importance,
                                         const std::vector<std::string>& names,
                                         const AttributionTable& attribution = default_attribution());

const std::map<std::string, std::vector<std::string>>& body_regions();

}  // namespace windup
