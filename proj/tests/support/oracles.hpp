#pragma once

// Test-side reference implementations, kept independent of the library code
// paths they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

// Angle at vertex b from pairwise distances only (law of cosines).
inline double angle_law_of_cosines(const std::array<double, 3>& a, const std::array<double, 3>& b,
                                   const std::array<double, 3>& c) {
    auto dist = [](const std::array<double, 3>& p, const std::array<double, 3>& q) {
        const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    };
    const double ab = dist(a, b);
    const double cb = dist(c, b);
    const double ac = dist(a, c);
    double cosv = (ab * ab + cb * cb - ac * ac) / (2.0 * ab * cb);
    cosv = std::max(-1.0, std::min(1.0, cosv));
    return std::acos(cosv) * 180.0 / M_PI;
}

// Least-squares polynomial fit over one window, evaluated at the center.
// Solves the (p+1)x(p+1) normal equations for this window's samples with
// Gaussian elimination; no precomputed convolution weights.
inline double polyfit_center(const std::vector<double>& window, int poly_order) {
    const int w = static_cast<int>(window.size());
    const int half = w / 2;
    const int m = poly_order + 1;
    std::vector<std::vector<double>> ata(m, std::vector<double>(m, 0.0));
    std::vector<double> aty(m, 0.0);
    for (int t = -half; t <= half; ++t) {
        std::vector<double> basis(m);
        double p = 1.0;
        for (int j = 0; j < m; ++j) {
            basis[j] = p;
            p *= t;
        }
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) ata[i][j] += basis[i] * basis[j];
            aty[i] += basis[i] * window[t + half];
        }
    }
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r) {
            if (std::abs(ata[r][col]) > std::abs(ata[pivot][col])) pivot = r;
        }
        std::swap(ata[col], ata[pivot]);
        std::swap(aty[col], aty[pivot]);
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            const double f = ata[r][col] / ata[col][col];
            for (int c2 = col; c2 < m; ++c2) ata[r][c2] -= f * ata[col][c2];
            aty[r] -= f * aty[col];
        }
    }
    // Center value is the constant coefficient (basis centered on the window).
    return aty[0] / ata[0][0];
}

// Brute-force counting metrics.
struct CountedMetrics {
    double accuracy = 0.0;
    std::map<std::string, double> precision, recall, f1;
    std::map<std::string, std::size_t> support;
};

inline CountedMetrics count_metrics(const std::vector<std::string>& y_true,
                                    const std::vector<std::string>& y_pred,
                                    const std::vector<std::string>& classes) {
    CountedMetrics out;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) correct += y_true[i] == y_pred[i] ? 1 : 0;
    out.accuracy = y_true.empty() ? 0.0 : double(correct) / double(y_true.size());
    for (const auto& cls : classes) {
        std::size_t tp = 0, fp = 0, fn = 0, sup = 0;
        for (std::size_t i = 0; i < y_true.size(); ++i) {
            if (y_true[i] == cls) ++sup;
            if (y_pred[i] == cls && y_true[i] == cls) ++tp;
            if (y_pred[i] == cls && y_true[i] != cls) ++fp;
            if (y_pred[i] != cls && y_true[i] == cls) ++fn;
        }
        const double p = tp + fp > 0 ? double(tp) / double(tp + fp) : 0.0;
        const double r = tp + fn > 0 ? double(tp) / double(tp + fn) : 0.0;
        out.precision[cls] = p;
        out.recall[cls] = r;
        out.f1[cls] = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
        out.support[cls] = sup;
    }
    return out;
}

inline std::vector<std::vector<std::size_t>> count_confusion(
    const std::vector<std::string>& y_true, const std::vector<std::string>& y_pred,
    const std::vector<std::string>& classes) {
    auto index_of = [&](const std::string& s) {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (classes[i] == s) return i;
        }
        throw std::runtime_error("count_confusion: unknown class");
    };
    std::vector<std::vector<std::size_t>> counts(classes.size(),
                                                 std::vector<std::size_t>(classes.size(), 0));
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        counts[index_of(y_true[i])][index_of(y_pred[i])] += 1;
    }
    return counts;
}

// Exhaustive axis-aligned depth-limited tree search over a candidate
// threshold grid; returns training accuracy of the best tree.
struct TinyTreeData {
    std::vector<std::array<double, 2>> x;
    std::vector<int> y;  // 0/1
};

inline double best_leaf_accuracy(const TinyTreeData& d, const std::vector<std::size_t>& rows) {
    std::size_t ones = 0;
    for (const std::size_t r : rows) ones += d.y[r];
    return rows.empty() ? 0.0 : double(std::max(ones, rows.size() - ones));
}

inline std::vector<double> threshold_grid(const TinyTreeData& d, int feature, int count) {
    std::vector<double> vals;
    for (const auto& row : d.x) vals.push_back(row[feature]);
    std::sort(vals.begin(), vals.end());
    std::vector<double> grid;
    for (int i = 1; i < count; ++i) {
        grid.push_back(vals[vals.size() * i / count]);
    }
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

inline double best_stump_correct(const TinyTreeData& d, const std::vector<std::size_t>& rows,
                                 int grid_size) {
    double best = best_leaf_accuracy(d, rows);
    for (int f = 0; f < 2; ++f) {
        for (const double thr : threshold_grid(d, f, grid_size)) {
            std::vector<std::size_t> left, right;
            for (const std::size_t r : rows) (d.x[r][f] <= thr ? left : right).push_back(r);
            if (left.empty() || right.empty()) continue;
            best = std::max(best, best_leaf_accuracy(d, left) + best_leaf_accuracy(d, right));
        }
    }
    return best;
}

inline double exhaustive_tree_accuracy(const TinyTreeData& d, int depth, int grid_size = 16) {
    std::vector<std::size_t> all(d.x.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    if (depth <= 1) return best_stump_correct(d, all, grid_size) / double(d.x.size());
    double best = best_stump_correct(d, all, grid_size);
    for (int f = 0; f < 2; ++f) {
        for (const double thr : threshold_grid(d, f, grid_size)) {
            std::vector<std::size_t> left, right;
            for (const std::size_t r : all) (d.x[r][f] <= thr ? left : right).push_back(r);
            if (left.empty() || right.empty()) continue;
            best = std::max(best, best_stump_correct(d, left, grid_size) +
                                      best_stump_correct(d, right, grid_size));
        }
    }
    return best / double(d.x.size());
}

}  // namespace oracle
