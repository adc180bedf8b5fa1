#include "windup/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace windup {

using nlohmann::json;

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string PipelineConfig::to_json_string() const {
    json doc;
    doc["format"] = "windup-config";
    doc["version"] = 1;
    doc["seed"] = seed;
    doc["workers"] = workers;
    doc["events"] = {{"ankle_height_ft", events.ankle_height_ft},
                     {"ankle_velocity_ft_per_frame", events.ankle_velocity_ft_per_frame},
                     {"release_low_deg", events.release_low_deg},
                     {"release_gate_deg", events.release_gate_deg},
                     {"smooth_window", events.smooth_window},
                     {"smooth_polyorder", events.smooth_polyorder}};
    doc["train"] = {{"rounds", train.rounds},
                    {"max_depth", train.max_depth},
                    {"learning_rate", train.learning_rate},
                    {"row_subsample", train.row_subsample},
                    {"col_subsample", train.col_subsample},
                    {"n_bins", train.n_bins},
                    {"min_child_hessian", train.min_child_hessian},
                    {"l2_leaf_reg", train.l2_leaf_reg},
                    {"standardize", train.standardize},
                    {"base_score_from_priors", train.base_score_from_priors}};
    doc["split"] = {{"train_fraction", split.train_fraction}, {"stratified", split.stratified}};
    json roster = json::array();
    for (const MetricId id : metric_roster) roster.push_back(metric_name(id));
    doc["features"] = {{"metrics", std::move(roster)}};
    json attr = json::object();
    for (const auto& [metric, weights] : attribution) {
        json w = json::object();
        for (const auto& [joint, share] : weights) w[joint] = share;
        attr[metric] = std::move(w);
    }
    doc["attribution"] = std::move(attr);
    return doc.dump(2);
}

PipelineConfig PipelineConfig::from_json_string(const std::string& text) {
    json doc = json::parse(text);
    if (doc.value("format", "") != "windup-config" || doc.value("version", 0) != 1) {
        throw std::runtime_error("PipelineConfig: unrecognized config format/version");
    }
    PipelineConfig cfg;
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.workers = doc.value("workers", cfg.workers);
    if (doc.contains("events")) {
        const auto& e = doc["events"];
        cfg.events.ankle_height_ft = e.value("ankle_height_ft", cfg.events.ankle_height_ft);
        cfg.events.ankle_velocity_ft_per_frame =
            e.value("ankle_velocity_ft_per_frame", cfg.events.ankle_velocity_ft_per_frame);
        cfg.events.release_low_deg = e.value("release_low_deg", cfg.events.release_low_deg);
        cfg.events.release_gate_deg = e.value("release_gate_deg", cfg.events.release_gate_deg);
        cfg.events.smooth_window = e.value("smooth_window", cfg.events.smooth_window);
        cfg.events.smooth_polyorder = e.value("smooth_polyorder", cfg.events.smooth_polyorder);
    }
    if (doc.contains("train")) {
        const auto& t = doc["train"];
        cfg.train.rounds = t.value("rounds", cfg.train.rounds);
        cfg.train.max_depth = t.value("max_depth", cfg.train.max_depth);
        cfg.train.learning_rate = t.value("learning_rate", cfg.train.learning_rate);
        cfg.train.row_subsample = t.value("row_subsample", cfg.train.row_subsample);
        cfg.train.col_subsample = t.value("col_subsample", cfg.train.col_subsample);
        cfg.train.n_bins = t.value("n_bins", cfg.train.n_bins);
        cfg.train.min_child_hessian = t.value("min_child_hessian", cfg.train.min_child_hessian);
        cfg.train.l2_leaf_reg = t.value("l2_leaf_reg", cfg.train.l2_leaf_reg);
        cfg.train.standardize = t.value("standardize", cfg.train.standardize);
        cfg.train.base_score_from_priors =
            t.value("base_score_from_priors", cfg.train.base_score_from_priors);
    }
    if (doc.contains("split")) {
        const auto& s = doc["split"];
        cfg.split.train_fraction = s.value("train_fraction", cfg.split.train_fraction);
        cfg.split.stratified = s.value("stratified", cfg.split.stratified);
    }
    if (doc.contains("features") && doc["features"].contains("metrics")) {
        cfg.metric_roster.clear();
        for (const auto& name : doc["features"]["metrics"]) {
            cfg.metric_roster.push_back(parse_metric(name.get<std::string>()));
        }
    }
    if (doc.contains("attribution")) {
        cfg.attribution.clear();
        for (const auto& [metric, weights] : doc["attribution"].items()) {
            JointWeights jw;
            for (const auto& [joint, share] : weights.items()) {
                jw.emplace_back(joint, share.get<double>());
            }
            cfg.attribution[metric] = std::move(jw);
        }
    }
    return cfg;
}

void PipelineConfig::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("PipelineConfig::save: cannot open '" + path + "'");
    out << to_json_string() << '\n';
}

PipelineConfig PipelineConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("PipelineConfig::load: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_json_string(buffer.str());
}

std::string PipelineConfig::hash() const { return fnv1a_hex(to_json_string()); }

}  // namespace windup
