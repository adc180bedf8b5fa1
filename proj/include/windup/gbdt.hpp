#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "windup/matrix.hpp"

namespace windup {

// Boosting hyperparameters. One regression tree per class per round under a
// softmax cross-entropy objective, grown with histogram split search.
struct TrainConfig {
    int rounds = 300;
    int max_depth = 12;
    double learning_rate = 0.1;
    double row_subsample = 0.8;
    double col_subsample = 0.8;
    int n_bins = 256;
    double min_child_hessian = 1.0;
    double l2_leaf_reg = 1.0;
    bool standardize = true;
    bool base_score_from_priors = true;
    std::uint64_t seed = 0;

    void validate() const;
};

// Per-feature training statistics. Constant features keep a unit divisor.
struct StandardizationStats {
    std::vector<double> mean;
    std::vector<double> stddev;
};

struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;     // standardized-space cut; go left when x <= threshold
    std::int32_t left = -1;
    std::int32_t right = -1;
    double gain = 0.0;   // recorded split gain (internal nodes)
    double value = 0.0;  // leaf output, learning rate already applied
};

struct Tree {
    std::vector<TreeNode> nodes;

    double predict(const double* x) const {
        std::int32_t idx = 0;
        while (nodes[idx].feature >= 0) {
            idx = x[nodes[idx].feature] <= nodes[idx].threshold ? nodes[idx].left
                                                                : nodes[idx].right;
        }
        return nodes[idx].value;
    }
};

struct GbdtModel {
    std::vector<std::string> classes;
    std::vector<std::string> feature_names;
    std::vector<double> base_score;        // per class
    std::vector<std::vector<Tree>> trees;  // [round][class]
    StandardizationStats stats;
    TrainConfig config;

    std::size_t n_features() const { return feature_names.size(); }

    std::string to_json_string() const;
    static GbdtModel from_json_string(const std::string& text);
    void save(const std::string& path) const;
    static GbdtModel load(const std::string& path);
};

struct FitResult {
    GbdtModel model;
    std::vector<double> round_losses;  // training softmax cross-entropy per round
};

// Trains on rows of X with string class labels. Deterministic for a fixed
// (X, y, cfg): subsampling draws come from the seeded generator in a fixed
// order and split ties resolve to the earliest feature/bin.
//
// class_order fixes the class ordinals; when empty it is derived from the
// labels (canonical pitch order when all labels are pitch codes, otherwise
// lexicographic).
FitResult fit(const Matrix& X, const std::vector<std::string>& y, const TrainConfig& cfg,
              std::vector<std::string> feature_names,
              std::vector<std::string> class_order = {});

// Softmax over per-class scores; probabilities sum to 1.
std::vector<double> predict_proba(const GbdtModel& model, const double* x, std::size_t n);
std::vector<double> predict_proba(const GbdtModel& model, const std::vector<double>& x);

// Argmax class; ties break toward the lower class ordinal.
std::string predict(const GbdtModel& model, const std::vector<double>& x);
std::vector<std::string> predict_batch(const GbdtModel& model, const Matrix& X);

// Per-feature share of total split gain; sums to 1.
std::vector<double> gain_importance(const GbdtModel& model);

}  // namespace windup
