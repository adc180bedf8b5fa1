#include "windup/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "windup/pose.hpp"
#include "windup/rng.hpp"

namespace windup {

using nlohmann::json;

void TrainConfig::validate() const {
    if (rounds < 1) throw std::invalid_argument("TrainConfig: rounds must be >= 1");
    if (max_depth < 1) throw std::invalid_argument("TrainConfig: max_depth must be >= 1");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
        throw std::invalid_argument("TrainConfig: learning_rate must be in (0, 1]");
    }
    if (!(row_subsample > 0.0 && row_subsample <= 1.0) ||
        !(col_subsample > 0.0 && col_subsample <= 1.0)) {
        throw std::invalid_argument("TrainConfig: subsample fractions must be in (0, 1]");
    }
    if (n_bins < 2) throw std::invalid_argument("TrainConfig: n_bins must be >= 2");
    if (!(min_child_hessian > 0.0)) {
        throw std::invalid_argument("TrainConfig: min_child_hessian must be positive");
    }
    if (l2_leaf_reg < 0.0) throw std::invalid_argument("TrainConfig: l2_leaf_reg must be >= 0");
}

namespace {

constexpr double kStdFloor = 1e-12;

struct HistBin {
    double grad = 0.0;
    double hess = 0.0;
    std::uint32_t count = 0;
};

// Quantile cut points over one standardized column. bin(v) is the first cut
// index j with v <= cuts[j] (bin m when v exceeds every cut), so a split at
// bin b keeps exactly the rows with value <= cuts[b] on the left.
std::vector<double> quantile_cuts(std::vector<double> sorted_column, int n_bins) {
    const std::size_t n = sorted_column.size();
    std::vector<double> cuts;
    const double max_value = sorted_column.back();

    std::vector<double> uniques(sorted_column);
    uniques.erase(std::unique(uniques.begin(), uniques.end()), uniques.end());
    if (uniques.size() <= static_cast<std::size_t>(n_bins)) {
        cuts.assign(uniques.begin(), uniques.end() - 1);
        return cuts;
    }
    cuts.reserve(n_bins - 1);
    for (int i = 1; i < n_bins; ++i) {
        const std::size_t pos = static_cast<std::size_t>(
            static_cast<double>(i) * static_cast<double>(n) / static_cast<double>(n_bins));
        const double v = sorted_column[std::min(pos, n - 1)];
        if (v >= max_value) break;
        if (cuts.empty() || v > cuts.back()) cuts.push_back(v);
    }
    return cuts;
}

std::uint16_t bin_of(const std::vector<double>& cuts, double v) {
    const auto it = std::lower_bound(cuts.begin(), cuts.end(), v);
    return static_cast<std::uint16_t>(it - cuts.begin());
}

struct SplitCandidate {
    double gain = 0.0;
    std::int32_t feature = -1;
    std::uint16_t bin = 0;
    double grad_left = 0.0;
    double hess_left = 0.0;
};

double leaf_weight(double grad, double hess, const TrainConfig& cfg) {
    return -cfg.learning_rate * grad / (hess + cfg.l2_leaf_reg);
}

double score(double grad, double hess, double l2) { return grad * grad / (hess + l2); }

class TreeBuilder {
public:
    TreeBuilder(const std::vector<std::uint16_t>& bins, const std::vector<std::vector<double>>& cuts,
                std::size_t n_rows, const TrainConfig& cfg)
        : bins_(bins), cuts_(cuts), n_rows_(n_rows), cfg_(cfg) {
        std::size_t max_bins = 0;
        for (const auto& c : cuts_) max_bins = std::max(max_bins, c.size() + 1);
        hist_.resize(max_bins);
        touched_.reserve(max_bins);
    }

    Tree build(std::vector<std::size_t>& row_index, const std::vector<double>& grad,
               const std::vector<double>& hess, const std::vector<std::int32_t>& features) {
        Tree tree;
        tree.nodes.emplace_back();
        grow(tree, 0, row_index, 0, row_index.size(), 0, grad, hess, features);
        return tree;
    }

private:
    const std::uint16_t* column(std::size_t f) const { return bins_.data() + f * n_rows_; }

    void grow(Tree& tree, std::int32_t node, std::vector<std::size_t>& rows, std::size_t begin,
              std::size_t end, int depth, const std::vector<double>& grad,
              const std::vector<double>& hess, const std::vector<std::int32_t>& features) {
        double g_total = 0.0, h_total = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            g_total += grad[rows[i]];
            h_total += hess[rows[i]];
        }

        const auto make_leaf = [&]() {
            tree.nodes[node].feature = -1;
            tree.nodes[node].value = leaf_weight(g_total, h_total, cfg_);
        };

        if (depth >= cfg_.max_depth || end - begin < 2 ||
            h_total < 2.0 * cfg_.min_child_hessian) {
            make_leaf();
            return;
        }

        SplitCandidate best;
        for (const std::int32_t f : features) {
            scan_feature(f, rows, begin, end, g_total, h_total, best);
        }
        if (best.feature < 0) {
            make_leaf();
            return;
        }

        // Stable partition by split bin keeps row order deterministic.
        scratch_.clear();
        const std::uint16_t* col = column(best.feature);
        std::size_t mid = begin;
        for (std::size_t i = begin; i < end; ++i) {
            if (col[rows[i]] <= best.bin) {
                rows[mid++] = rows[i];
            } else {
                scratch_.push_back(rows[i]);
            }
        }
        std::copy(scratch_.begin(), scratch_.end(), rows.begin() + mid);

        const std::int32_t left = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        const std::int32_t right = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[node].feature = best.feature;
        tree.nodes[node].threshold = cuts_[best.feature][best.bin];
        tree.nodes[node].gain = best.gain;
        tree.nodes[node].left = left;
        tree.nodes[node].right = right;

        grow(tree, left, rows, begin, mid, depth + 1, grad, hess, features);
        grow(tree, right, rows, mid, end, depth + 1, grad, hess, features);
    }

    void scan_feature(std::int32_t f, const std::vector<std::size_t>& rows, std::size_t begin,
                      std::size_t end, double g_total, double h_total, SplitCandidate& best) {
        const auto& cuts = cuts_[f];
        if (cuts.empty()) return;  // constant feature
        const std::uint16_t* col = column(f);

        touched_.clear();
        for (std::size_t i = begin; i < end; ++i) {
            const std::size_t r = rows[i];
            const std::uint16_t b = col[r];
            HistBin& hb = hist_[b];
            if (hb.count == 0) touched_.push_back(b);
            hb.grad += grad_ptr_[r];
            hb.hess += hess_ptr_[r];
            ++hb.count;
        }
        std::sort(touched_.begin(), touched_.end());

        const double parent_score = score(g_total, h_total, cfg_.l2_leaf_reg);
        double g_left = 0.0, h_left = 0.0;
        for (std::size_t k = 0; k + 1 < touched_.size(); ++k) {
            const HistBin& hb = hist_[touched_[k]];
            g_left += hb.grad;
            h_left += hb.hess;
            if (h_left < cfg_.min_child_hessian) continue;
            const double h_right = h_total - h_left;
            if (h_right < cfg_.min_child_hessian) break;
            const double g_right = g_total - g_left;
            const double gain = 0.5 * (score(g_left, h_left, cfg_.l2_leaf_reg) +
                                       score(g_right, h_right, cfg_.l2_leaf_reg) - parent_score);
            // Split candidates sit at the last touched bin of the left side;
            // empty bins in between cannot change the partition. Strict
            // comparison keeps the earliest feature/bin on ties.
            if (gain > best.gain + 1e-12 && touched_[k] < cuts.size()) {
                best.gain = gain;
                best.feature = f;
                best.bin = touched_[k];
                best.grad_left = g_left;
                best.hess_left = h_left;
            }
        }
        for (const std::uint16_t b : touched_) hist_[b] = HistBin{};
    }

public:
    const double* grad_ptr_ = nullptr;
    const double* hess_ptr_ = nullptr;

private:
    const std::vector<std::uint16_t>& bins_;
    const std::vector<std::vector<double>>& cuts_;
    std::size_t n_rows_;
    const TrainConfig& cfg_;
    std::vector<HistBin> hist_;
    std::vector<std::uint16_t> touched_;
    std::vector<std::size_t> scratch_;
};

std::vector<std::string> derive_class_order(const std::vector<std::string>& y) {
    std::set<std::string> seen(y.begin(), y.end());
    bool all_pitch = true;
    for (const auto& s : seen) {
        bool known = false;
        for (const auto& code : pitch_type_codes()) known = known || code == s;
        all_pitch = all_pitch && known;
    }
    std::vector<std::string> order;
    if (all_pitch) {
        for (const auto& code : pitch_type_codes()) {
            if (seen.count(code)) order.push_back(code);
        }
    } else {
        order.assign(seen.begin(), seen.end());
    }
    return order;
}

void softmax_inplace(const double* margin, std::size_t k, double* prob) {
    double mx = margin[0];
    for (std::size_t c = 1; c < k; ++c) mx = std::max(mx, margin[c]);
    double sum = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        prob[c] = std::exp(margin[c] - mx);
        sum += prob[c];
    }
    for (std::size_t c = 0; c < k; ++c) prob[c] /= sum;
}

}  // namespace

FitResult fit(const Matrix& X, const std::vector<std::string>& y, const TrainConfig& cfg,
              std::vector<std::string> feature_names, std::vector<std::string> class_order) {
    cfg.validate();
    const std::size_t n = X.rows;
    const std::size_t f_count = X.cols;
    if (n == 0 || f_count == 0) throw std::invalid_argument("fit: empty training matrix");
    if (y.size() != n) throw std::invalid_argument("fit: label count does not match rows");
    if (feature_names.size() != f_count) {
        throw std::invalid_argument("fit: feature name count does not match columns");
    }
    for (const double v : X.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("fit: non-finite feature value");
    }

    if (class_order.empty()) class_order = derive_class_order(y);
    const std::size_t k = class_order.size();
    if (k < 2) throw std::invalid_argument("fit: need at least two classes");

    std::vector<std::size_t> y_idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto it = std::find(class_order.begin(), class_order.end(), y[i]);
        if (it == class_order.end()) {
            throw std::invalid_argument("fit: label '" + y[i] + "' missing from class order");
        }
        y_idx[i] = static_cast<std::size_t>(it - class_order.begin());
    }
    {
        std::set<std::size_t> present(y_idx.begin(), y_idx.end());
        if (present.size() < 2) throw std::invalid_argument("fit: need at least two classes");
    }

    GbdtModel model;
    model.classes = class_order;
    model.feature_names = std::move(feature_names);
    model.config = cfg;

    // Standardization statistics from the training rows only.
    model.stats.mean.assign(f_count, 0.0);
    model.stats.stddev.assign(f_count, 1.0);
    if (cfg.standardize) {
        for (std::size_t c = 0; c < f_count; ++c) {
            double mean = 0.0;
            for (std::size_t r = 0; r < n; ++r) mean += X.at(r, c);
            mean /= static_cast<double>(n);
            double var = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                const double d = X.at(r, c) - mean;
                var += d * d;
            }
            const double sd = std::sqrt(var / static_cast<double>(n));
            model.stats.mean[c] = mean;
            model.stats.stddev[c] = sd < kStdFloor ? 1.0 : sd;
        }
    }

    // Standardized copy, column-major bins.
    Matrix Xs(n, f_count);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < f_count; ++c) {
            Xs.at(r, c) = (X.at(r, c) - model.stats.mean[c]) / model.stats.stddev[c];
        }
    }

    std::vector<std::vector<double>> cuts(f_count);
    std::vector<std::uint16_t> bins(f_count * n);
    {
        std::vector<double> column(n);
        for (std::size_t c = 0; c < f_count; ++c) {
            for (std::size_t r = 0; r < n; ++r) column[r] = Xs.at(r, c);
            std::sort(column.begin(), column.end());
            cuts[c] = quantile_cuts(column, cfg.n_bins);
            for (std::size_t r = 0; r < n; ++r) {
                bins[c * n + r] = bin_of(cuts[c], Xs.at(r, c));
            }
        }
    }

    model.base_score.assign(k, 0.0);
    if (cfg.base_score_from_priors) {
        std::vector<double> counts(k, 0.0);
        for (const std::size_t c : y_idx) counts[c] += 1.0;
        for (std::size_t c = 0; c < k; ++c) {
            model.base_score[c] = std::log(std::max(counts[c], 1e-12) / static_cast<double>(n));
        }
    }

    Matrix margins(n, k);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < k; ++c) margins.at(r, c) = model.base_score[c];
    }

    Rng rng(cfg.seed);
    const std::size_t row_take = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(cfg.row_subsample * static_cast<double>(n))));
    const std::size_t col_take = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::llround(cfg.col_subsample * static_cast<double>(f_count))));

    TreeBuilder builder(bins, cuts, n, cfg);
    Matrix prob(n, k);
    std::vector<double> grad(n), hess(n);
    std::vector<std::size_t> rows;
    FitResult result;
    result.round_losses.reserve(cfg.rounds);
    model.trees.reserve(cfg.rounds);

    for (int round = 0; round < cfg.rounds; ++round) {
        for (std::size_t r = 0; r < n; ++r) {
            softmax_inplace(margins.row_ptr(r), k, prob.row_ptr(r));
        }

        std::vector<Tree> round_trees;
        round_trees.reserve(k);
        for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t r = 0; r < n; ++r) {
                const double p = prob.at(r, c);
                grad[r] = p - (y_idx[r] == c ? 1.0 : 0.0);
                hess[r] = std::max(p * (1.0 - p), 1e-16);
            }

            rows = row_take == n ? [&] {
                std::vector<std::size_t> all(n);
                for (std::size_t i = 0; i < n; ++i) all[i] = i;
                return all;
            }()
                                 : rng.sample_indices(n, row_take);
            std::vector<std::size_t> col_sample =
                col_take == f_count ? [&] {
                    std::vector<std::size_t> all(f_count);
                    for (std::size_t i = 0; i < f_count; ++i) all[i] = i;
                    return all;
                }()
                                    : rng.sample_indices(f_count, col_take);
            std::vector<std::int32_t> features(col_sample.begin(), col_sample.end());

            builder.grad_ptr_ = grad.data();
            builder.hess_ptr_ = hess.data();
            Tree tree = builder.build(rows, grad, hess, features);

            // Margin refresh over all rows, including out-of-bag ones.
            for (std::size_t r = 0; r < n; ++r) {
                margins.at(r, c) += tree.predict(Xs.row_ptr(r));
            }
            round_trees.push_back(std::move(tree));
        }
        model.trees.push_back(std::move(round_trees));

        double loss = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            softmax_inplace(margins.row_ptr(r), k, prob.row_ptr(r));
            loss -= std::log(std::max(prob.at(r, y_idx[r]), 1e-300));
        }
        result.round_losses.push_back(loss / static_cast<double>(n));
    }

    result.model = std::move(model);
    return result;
}

std::vector<double> predict_proba(const GbdtModel& model, const double* x, std::size_t n) {
    if (n != model.n_features()) {
        throw std::invalid_argument("predict_proba: feature count mismatch");
    }
    std::vector<double> xs(n);
    for (std::size_t c = 0; c < n; ++c) {
        if (!std::isfinite(x[c])) {
            throw std::invalid_argument("predict_proba: non-finite feature value");
        }
        xs[c] = (x[c] - model.stats.mean[c]) / model.stats.stddev[c];
    }
    const std::size_t k = model.classes.size();
    std::vector<double> margin(model.base_score);
    for (const auto& round : model.trees) {
        for (std::size_t c = 0; c < k; ++c) margin[c] += round[c].predict(xs.data());
    }
    std::vector<double> prob(k);
    softmax_inplace(margin.data(), k, prob.data());
    return prob;
}

std::vector<double> predict_proba(const GbdtModel& model, const std::vector<double>& x) {
    return predict_proba(model, x.data(), x.size());
}

std::string predict(const GbdtModel& model, const std::vector<double>& x) {
    const std::vector<double> prob = predict_proba(model, x);
    std::size_t best = 0;
    for (std::size_t c = 1; c < prob.size(); ++c) {
        if (prob[c] > prob[best]) best = c;
    }
    return model.classes[best];
}

std::vector<std::string> predict_batch(const GbdtModel& model, const Matrix& X) {
    std::vector<std::string> out;
    out.reserve(X.rows);
    for (std::size_t r = 0; r < X.rows; ++r) {
        std::vector<double> x(X.row_ptr(r), X.row_ptr(r) + X.cols);
        out.push_back(predict(model, x));
    }
    return out;
}

std::vector<double> gain_importance(const GbdtModel& model) {
    std::vector<double> gains(model.n_features(), 0.0);
    double total = 0.0;
    for (const auto& round : model.trees) {
        for (const auto& tree : round) {
            for (const auto& node : tree.nodes) {
                if (node.feature >= 0) {
                    gains[node.feature] += node.gain;
                    total += node.gain;
                }
            }
        }
    }
    if (total <= 0.0) {
        throw std::runtime_error("gain_importance: model has no recorded splits");
    }
    for (double& g : gains) g /= total;
    return gains;
}

std::string GbdtModel::to_json_string() const {
    json doc;
    doc["format"] = "windup-model";
    doc["version"] = 1;
    doc["classes"] = classes;
    doc["feature_names"] = feature_names;
    doc["base_score"] = base_score;
    doc["stats"] = {{"mean", stats.mean}, {"stddev", stats.stddev}};
    doc["config"] = {{"rounds", config.rounds},
                     {"max_depth", config.max_depth},
                     {"learning_rate", config.learning_rate},
                     {"row_subsample", config.row_subsample},
                     {"col_subsample", config.col_subsample},
                     {"n_bins", config.n_bins},
                     {"min_child_hessian", config.min_child_hessian},
                     {"l2_leaf_reg", config.l2_leaf_reg},
                     {"standardize", config.standardize},
                     {"base_score_from_priors", config.base_score_from_priors},
                     {"seed", config.seed}};
    json rounds = json::array();
    for (const auto& round : trees) {
        json round_json = json::array();
        for (const auto& tree : round) {
            json nodes = json::array();
            for (const auto& nd : tree.nodes) {
                nodes.push_back(json::array(
                    {nd.feature, nd.threshold, nd.left, nd.right, nd.gain, nd.value}));
            }
            round_json.push_back(std::move(nodes));
        }
        rounds.push_back(std::move(round_json));
    }
    doc["trees"] = std::move(rounds);
    return doc.dump();
}

GbdtModel GbdtModel::from_json_string(const std::string& text) {
    json doc = json::parse(text);
    if (doc.value("format", "") != "windup-model" || doc.value("version", 0) != 1) {
        throw std::runtime_error("GbdtModel: unrecognized model file format/version");
    }
    GbdtModel m;
    m.classes = doc.at("classes").get<std::vector<std::string>>();
    m.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    m.base_score = doc.at("base_score").get<std::vector<double>>();
    m.stats.mean = doc.at("stats").at("mean").get<std::vector<double>>();
    m.stats.stddev = doc.at("stats").at("stddev").get<std::vector<double>>();
    const auto& c = doc.at("config");
    m.config.rounds = c.at("rounds").get<int>();
    m.config.max_depth = c.at("max_depth").get<int>();
    m.config.learning_rate = c.at("learning_rate").get<double>();
    m.config.row_subsample = c.at("row_subsample").get<double>();
    m.config.col_subsample = c.at("col_subsample").get<double>();
    m.config.n_bins = c.at("n_bins").get<int>();
    m.config.min_child_hessian = c.at("min_child_hessian").get<double>();
    m.config.l2_leaf_reg = c.at("l2_leaf_reg").get<double>();
    m.config.standardize = c.at("standardize").get<bool>();
    m.config.base_score_from_priors = c.at("base_score_from_priors").get<bool>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    for (const auto& round_json : doc.at("trees")) {
        std::vector<Tree> round;
        for (const auto& tree_json : round_json) {
            Tree tree;
            for (const auto& nd : tree_json) {
                TreeNode node;
                node.feature = nd.at(0).get<std::int32_t>();
                node.threshold = nd.at(1).get<double>();
                node.left = nd.at(2).get<std::int32_t>();
                node.right = nd.at(3).get<std::int32_t>();
                node.gain = nd.at(4).get<double>();
                node.value = nd.at(5).get<double>();
                tree.nodes.push_back(node);
            }
            round.push_back(std::move(tree));
        }
        m.trees.push_back(std::move(round));
    }
    return m;
}

void GbdtModel::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("GbdtModel::save: cannot open '" + path + "'");
    out << to_json_string() << '\n';
}

GbdtModel GbdtModel::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("GbdtModel::load: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_json_string(buffer.str());
}

}  // namespace windup
