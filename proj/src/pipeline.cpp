#include "windup/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "windup/parallel.hpp"
#include "windup/rng.hpp"

namespace windup {

using nlohmann::json;

namespace {

// Stage tags for deriving per-stage seed substreams from the root seed.
constexpr std::uint64_t kSplitTag = 0x73706c6974ULL;  // "split"
constexpr std::uint64_t kTrainTag = 0x747261696eULL;  // "train"

}  // namespace

std::string detect_record_to_json(const DetectRecord& record) {
    json doc;
    doc["episode_id"] = record.episode_id;
    doc["status"] = record.status;
    if (record.status == "ok") {
        doc["handedness"] = handedness_code(record.handedness.handedness);
        doc["delta_ankle"] = record.handedness.delta_ankle;
        doc["mean_pelvis_rotation"] = record.handedness.mean_pelvis_rotation;
        doc["methods_agree"] = record.handedness.methods_agree;
        doc["fp"] = record.events.fp;
        doc["mer"] = record.events.mer;
        doc["rel"] = record.events.rel;
    } else {
        doc["failure_reason"] = record.failure_reason;
    }
    return doc.dump();
}

std::vector<DetectRecord> detect_batch(const std::vector<PoseSequence>& episodes,
                                       const PipelineConfig& cfg) {
    std::vector<DetectRecord> records(episodes.size());
    parallel_for(episodes.size(), cfg.workers, [&](std::size_t i) {
        DetectRecord& rec = records[i];
        rec.episode_id = episodes[i].episode_id;
        try {
            const DetectionResult result = detect_events(episodes[i], cfg.events);
            rec.status = "ok";
            rec.handedness = result.handedness;
            rec.events = result.events;
        } catch (const PipelineError& e) {
            rec.status = "failed";
            rec.failure_reason = e.reason();
        }
    });
    return records;
}

ExtractResult extract_batch(const std::vector<PoseSequence>& episodes, const PipelineConfig& cfg) {
    const FeatureSchema schema(cfg.metric_roster);
    struct RowResult {
        bool ok = false;
        std::string reason;
        std::vector<double> values;
    };
    std::vector<RowResult> rows(episodes.size());
    parallel_for(episodes.size(), cfg.workers, [&](std::size_t i) {
        try {
            const DetectionResult det = detect_events(episodes[i], cfg.events);
            const FeatureVector fv =
                assemble(episodes[i], det.events, det.handedness.handedness, schema);
            rows[i].values = fv.values;
            rows[i].ok = true;
        } catch (const PipelineError& e) {
            rows[i].reason = e.reason();
        }
    });

    ExtractResult result;
    result.table.feature_names = schema.names();
    result.table.X.cols = schema.size();
    for (std::size_t i = 0; i < episodes.size(); ++i) {
        if (!rows[i].ok) {
            result.skipped.push_back({episodes[i].episode_id, rows[i].reason});
            continue;
        }
        result.table.episode_ids.push_back(episodes[i].episode_id);
        result.table.labels.push_back(episodes[i].label ? pitch_code(*episodes[i].label) : "");
        result.table.X.values.insert(result.table.X.values.end(), rows[i].values.begin(),
                                     rows[i].values.end());
        ++result.table.X.rows;
    }
    return result;
}

SplitFile make_split(const FeatureTable& table, const PipelineConfig& cfg) {
    SplitSpec spec = cfg.split;
    spec.seed = derive_stream(cfg.seed, kSplitTag);
    const SplitResult split = stratified_split(table.labels, spec);
    SplitFile file;
    file.seed = spec.seed;
    file.train_fraction = spec.train_fraction;
    for (const std::size_t r : split.train) file.train_ids.push_back(table.episode_ids[r]);
    for (const std::size_t r : split.test) file.test_ids.push_back(table.episode_ids[r]);
    return file;
}

FitResult train_on_table(const FeatureTable& table, const PipelineConfig& cfg,
                         const SplitFile* split) {
    FeatureTable train_table =
        split ? table.select_rows(rows_for_ids(table, split->train_ids)) : table;
    TrainConfig train_cfg = cfg.train;
    train_cfg.seed = derive_stream(cfg.seed, kTrainTag);

    // Canonical class order when the labels are pitch codes.
    std::vector<std::string> class_order;
    {
        std::set<std::string> seen(train_table.labels.begin(), train_table.labels.end());
        bool all_pitch = true;
        for (const auto& s : seen) {
            bool known = false;
            for (const auto& code : pitch_type_codes()) known = known || code == s;
            all_pitch = all_pitch && known;
        }
        if (all_pitch) {
            for (const auto& code : pitch_type_codes()) {
                if (seen.count(code)) class_order.push_back(code);
            }
        }
    }
    return fit(train_table.X, train_table.labels, train_cfg, train_table.feature_names,
               class_order);
}

std::string training_log_json(const FitResult& fit_result, const PipelineConfig& cfg) {
    json doc;
    doc["format"] = "windup-train-log";
    doc["version"] = 1;
    doc["seed"] = cfg.seed;
    doc["config_hash"] = cfg.hash();
    doc["rounds"] = fit_result.model.config.rounds;
    doc["round_losses"] = fit_result.round_losses;
    return doc.dump();
}

EvaluationReport evaluate_model(const GbdtModel& model, const FeatureTable& table,
                                const SplitFile& split, const PipelineConfig& cfg) {
    const FeatureTable test = table.select_rows(rows_for_ids(table, split.test_ids));

    std::vector<std::string> y_pred(test.rows());
    parallel_for(test.rows(), cfg.workers, [&](std::size_t r) {
        std::vector<double> x(test.X.row_ptr(r), test.X.row_ptr(r) + test.X.cols);
        y_pred[r] = predict(model, x);
    });

    EvaluationReport report;
    report.n_train = split.train_ids.size();
    report.n_test = split.test_ids.size();
    report.metrics = classification_metrics(test.labels, y_pred, model.classes);
    report.confusion = confusion_matrix(test.labels, y_pred, model.classes);

    // Handedness groups come straight from the feature bit.
    const auto h_col = std::find(test.feature_names.begin(), test.feature_names.end(),
                                 std::string("meta.h_rhp"));
    if (h_col != test.feature_names.end()) {
        const std::size_t c = static_cast<std::size_t>(h_col - test.feature_names.begin());
        std::vector<std::string> groups(test.rows());
        for (std::size_t r = 0; r < test.rows(); ++r) {
            groups[r] = test.X.at(r, c) > 0.5 ? "RHP" : "LHP";
        }
        report.handedness_accuracy = group_accuracy(test.labels, y_pred, groups);
    }

    report.importance =
        aggregate_importance(gain_importance(model), model.feature_names, cfg.attribution);
    report.config_hash = cfg.hash();
    report.seed = cfg.seed;
    return report;
}

namespace {

json map_to_json(const std::map<std::string, double>& m) {
    json out = json::object();
    for (const auto& [k, v] : m) out[k] = v;
    return out;
}

}  // namespace

std::string report_to_json(const EvaluationReport& report) {
    json doc;
    doc["format"] = "windup-report";
    doc["version"] = 1;
    doc["seed"] = report.seed;
    doc["config_hash"] = report.config_hash;
    doc["n_train"] = report.n_train;
    doc["n_test"] = report.n_test;
    doc["overall_accuracy"] = report.metrics.accuracy;
    json per_class = json::array();
    for (const auto& m : report.metrics.per_class) {
        per_class.push_back({{"label", m.label},
                             {"precision", m.precision},
                             {"recall", m.recall},
                             {"f1", m.f1},
                             {"support", m.support}});
    }
    doc["per_class"] = std::move(per_class);
    doc["macro"] = {{"precision", report.metrics.macro_precision},
                    {"recall", report.metrics.macro_recall},
                    {"f1", report.metrics.macro_f1}};
    json confusion;
    confusion["classes"] = report.confusion.classes;
    confusion["counts"] = report.confusion.counts;
    json norm_rows = json::array();
    for (std::size_t r = 0; r < report.confusion.classes.size(); ++r) {
        if (report.confusion.row_defined[r]) {
            norm_rows.push_back(report.confusion.row_normalized[r]);
        } else {
            norm_rows.push_back(nullptr);  // zero-support row, flagged not divided
        }
    }
    confusion["row_normalized"] = std::move(norm_rows);
    doc["confusion"] = std::move(confusion);
    json groups = json::object();
    for (const auto& [group, acc] : report.handedness_accuracy) {
        groups[group] = {{"count", acc.count}, {"accuracy", acc.accuracy}};
    }
    doc["group_accuracy"] = std::move(groups);
    doc["importance"] = {{"by_category", map_to_json(report.importance.by_category)},
                         {"by_joint", map_to_json(report.importance.by_joint)},
                         {"by_region", map_to_json(report.importance.by_region)},
                         {"by_event", map_to_json(report.importance.by_event)}};
    return doc.dump(2);
}

namespace {

void render_share_table(std::ostringstream& out, const std::string& title,
                        const std::map<std::string, double>& shares) {
    out << title << "\n";
    std::vector<std::pair<std::string, double>> rows(shares.begin(), shares.end());
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [name, share] : rows) {
        char line[96];
        std::snprintf(line, sizeof(line), "  %-22s %6.2f%%\n", name.c_str(), 100.0 * share);
        out << line;
    }
}

}  // namespace

std::string report_to_text(const EvaluationReport& report) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line),
                  "overall accuracy: %.4f   (train %zu / test %zu)   seed %llu   config %s\n",
                  report.metrics.accuracy, report.n_train, report.n_test,
                  static_cast<unsigned long long>(report.seed), report.config_hash.c_str());
    out << line;

    out << "\nper-class metrics\n";
    out << "  class   prec   recall  f1      support\n";
    for (const auto& m : report.metrics.per_class) {
        std::snprintf(line, sizeof(line), "  %-6s  %5.1f%%  %5.1f%%  %5.1f%%  %zu\n",
                      m.label.c_str(), 100.0 * m.precision, 100.0 * m.recall, 100.0 * m.f1,
                      m.support);
        out << line;
    }
    std::snprintf(line, sizeof(line), "  %-6s  %5.1f%%  %5.1f%%  %5.1f%%  %zu\n", "macro",
                  100.0 * report.metrics.macro_precision, 100.0 * report.metrics.macro_recall,
                  100.0 * report.metrics.macro_f1, report.n_test);
    out << line;

    out << "\nconfusion (row-normalized %)\n      ";
    for (const auto& cls : report.confusion.classes) {
        std::snprintf(line, sizeof(line), "%6s", cls.c_str());
        out << line;
    }
    out << "\n";
    for (std::size_t r = 0; r < report.confusion.classes.size(); ++r) {
        std::snprintf(line, sizeof(line), "  %-4s", report.confusion.classes[r].c_str());
        out << line;
        for (std::size_t c = 0; c < report.confusion.classes.size(); ++c) {
            if (report.confusion.row_defined[r]) {
                std::snprintf(line, sizeof(line), "%6.1f", 100.0 * report.confusion.row_normalized[r][c]);
            } else {
                std::snprintf(line, sizeof(line), "%6s", "n/a");
            }
            out << line;
        }
        out << "\n";
    }

    out << "\naccuracy by handedness\n";
    for (const auto& [group, acc] : report.handedness_accuracy) {
        std::snprintf(line, sizeof(line), "  %-4s  count %-7zu accuracy %.4f\n", group.c_str(),
                      acc.count, acc.accuracy);
        out << line;
    }

    out << "\n";
    render_share_table(out, "importance by category", report.importance.by_category);
    out << "\n";
    render_share_table(out, "importance by joint", report.importance.by_joint);
    out << "\n";
    render_share_table(out, "importance by body region", report.importance.by_region);
    out << "\n";
    render_share_table(out, "importance by event", report.importance.by_event);
    return out.str();
}

std::string importance_to_json(const GbdtModel& model, const PipelineConfig& cfg) {
    const std::vector<double> imp = gain_importance(model);
    const ImportanceBreakdown breakdown =
        aggregate_importance(imp, model.feature_names, cfg.attribution);
    json doc;
    doc["format"] = "windup-importance";
    doc["version"] = 1;
    doc["config_hash"] = cfg.hash();
    json per_feature = json::object();
    for (std::size_t i = 0; i < imp.size(); ++i) per_feature[model.feature_names[i]] = imp[i];
    doc["per_feature"] = std::move(per_feature);
    doc["by_category"] = map_to_json(breakdown.by_category);
    doc["by_joint"] = map_to_json(breakdown.by_joint);
    doc["by_region"] = map_to_json(breakdown.by_region);
    doc["by_event"] = map_to_json(breakdown.by_event);
    return doc.dump(2);
}

}  // namespace windup
