#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "windup/eval.hpp"
#include "windup/events.hpp"
#include "windup/features.hpp"
#include "windup/gbdt.hpp"

namespace windup {

// Whole-pipeline configuration. Every threshold and hyperparameter lives
// here; defaults are the pipeline's reference values. Loading and saving is
// idempotent, and a stable hash of the canonical form is embedded in every
// artifact for provenance.
struct PipelineConfig {
    std::uint64_t seed = 42;
    std::size_t workers = 0;  // 0 = hardware concurrency
    EventConfig events;
    TrainConfig train;
    SplitSpec split;
    std::vector<MetricId> metric_roster = FeatureSchema::default_roster();
    AttributionTable attribution = default_attribution();

    std::string to_json_string() const;
    static PipelineConfig from_json_string(const std::string& text);
    void save(const std::string& path) const;
    static PipelineConfig load(const std::string& path);

    // FNV-1a over the canonical JSON form, hex-encoded.
    std::string hash() const;
};

std::string fnv1a_hex(const std::string& data);

}  // namespace windup
