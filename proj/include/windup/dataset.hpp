#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "windup/matrix.hpp"

namespace windup {

// Tabular features: one row per episode, deterministic column order.
struct FeatureTable {
    std::vector<std::string> feature_names;
    std::vector<std::string> episode_ids;
    std::vector<std::string> labels;  // empty string for unlabeled rows
    Matrix X;

    std::size_t rows() const { return episode_ids.size(); }

    // Columns whose names satisfy the predicate, in schema order.
    std::vector<std::size_t> columns_matching(
        const std::function<bool(const std::string&)>& predicate) const;

    FeatureTable select_columns(const std::vector<std::size_t>& columns) const;
    FeatureTable select_rows(const std::vector<std::size_t>& row_indices) const;
};

// CSV layout: a `# windup-features-v1` marker line, then a header row of
// episode_id,label,<feature names...>, then one data row per episode.
void write_feature_csv(const std::string& path, const FeatureTable& table);
FeatureTable read_feature_csv(const std::string& path);

// Train/test episode-id lists, versioned JSON.
struct SplitFile {
    std::uint64_t seed = 0;
    double train_fraction = 0.8;
    std::vector<std::string> train_ids;
    std::vector<std::string> test_ids;
};

void write_split_json(const std::string& path, const SplitFile& split);
SplitFile read_split_json(const std::string& path);

// Row indices of `table` for the given id list; missing ids are an error.
std::vector<std::size_t> rows_for_ids(const FeatureTable& table,
                                      const std::vector<std::string>& ids);

}  // namespace windup
