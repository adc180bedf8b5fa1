#pragma once

#include <optional>
#include <string>
#include <vector>

#include "windup/config.hpp"
#include "windup/dataset.hpp"
#include "windup/eval.hpp"
#include "windup/events.hpp"
#include "windup/features.hpp"
#include "windup/gbdt.hpp"
#include "windup/pose.hpp"

namespace windup {

// Per-episode detection outcome for the `detect` stage.
struct DetectRecord {
    std::string episode_id;
    std::string status;  // "ok" or "failed"
    std::string failure_reason;
    HandednessReport handedness;
    EventSet events;
};

std::string detect_record_to_json(const DetectRecord& record);

// Batch detection across episodes; output order follows input order
// regardless of scheduling.
std::vector<DetectRecord> detect_batch(const std::vector<PoseSequence>& episodes,
                                       const PipelineConfig& cfg);

struct ExtractSkip {
    std::string episode_id;
    std::string reason;
};

struct ExtractResult {
    FeatureTable table;
    std::vector<ExtractSkip> skipped;
};

// Detection plus feature assembly per episode; failures are tallied and the
// surviving rows keep input order.
ExtractResult extract_batch(const std::vector<PoseSequence>& episodes, const PipelineConfig& cfg);

// Stratified split over the table's labels, recorded as episode-id lists.
SplitFile make_split(const FeatureTable& table, const PipelineConfig& cfg);

// Trains on the rows named by the split (or all rows when split is null).
FitResult train_on_table(const FeatureTable& table, const PipelineConfig& cfg,
                         const SplitFile* split = nullptr);

std::string training_log_json(const FitResult& fit_result, const PipelineConfig& cfg);

struct EvaluationReport {
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    MetricsReport metrics;
    ConfusionMatrix confusion;
    std::map<std::string, GroupAccuracy> handedness_accuracy;
    ImportanceBreakdown importance;
    std::string config_hash;
    std::uint64_t seed = 0;
};

// Scores the model on the split's test rows and aggregates importances.
EvaluationReport evaluate_model(const GbdtModel& model, const FeatureTable& table,
                                const SplitFile& split, const PipelineConfig& cfg);

std::string report_to_json(const EvaluationReport& report);
std::string report_to_text(const EvaluationReport& report);

// Importance tables of a saved model, without an evaluation pass.
std::string importance_to_json(const GbdtModel& model, const PipelineConfig& cfg);

}  // namespace windup
