#include "windup/signal.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>

namespace windup {

namespace {

// Solve the (p+1)x(p+1) normal equations A^T A c = A^T e_center for the
// center-evaluation weights, by Gaussian elimination with partial pivoting.
// The Gram matrix over offsets -h..h is small and well conditioned for the
// filter sizes used here.
std::vector<double> compute_center_weights(int window, int poly_order) {
    const int half = window / 2;
    const int m = poly_order + 1;

    // moments[k] = sum over offsets t of t^k
    std::vector<double> moments(2 * poly_order + 1, 0.0);
    for (int t = -half; t <= half; ++t) {
        double p = 1.0;
        for (int k = 0; k <= 2 * poly_order; ++k) {
            moments[k] += p;
            p *= t;
        }
    }

    // G c = e0, where G[i][j] = moments[i+j]. The weight for offset t is then
    // w_t = sum_j c_j t^j evaluated against the Vandermonde row of t.
    std::vector<std::vector<double>> g(m, std::vector<double>(m + 1, 0.0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) g[i][j] = moments[i + j];
        g[i][m] = (i == 0) ? 1.0 : 0.0;
    }
    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r) {
            if (std::abs(g[r][col]) > std::abs(g[pivot][col])) pivot = r;
        }
        std::swap(g[col], g[pivot]);
        if (std::abs(g[col][col]) < 1e-300) {
            throw std::runtime_error("savgol: singular normal equations");
        }
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            const double f = g[r][col] / g[col][col];
            for (int c = col; c <= m; ++c) g[r][c] -= f * g[col][c];
        }
    }
    std::vector<double> coef(m);
    for (int i = 0; i < m; ++i) coef[i] = g[i][m] / g[i][i];

    std::vector<double> weights(window);
    for (int t = -half; t <= half; ++t) {
        double w = 0.0;
        double p = 1.0;
        for (int j = 0; j < m; ++j) {
            w += coef[j] * p;
            p *= t;
        }
        weights[t + half] = w;
    }
    return weights;
}

void validate_params(std::size_t n, int window, int poly_order) {
    if (window < 1 || window % 2 == 0) {
        throw std::invalid_argument("savgol_smooth: window must be odd and positive");
    }
    if (poly_order < 0 || window <= poly_order) {
        throw std::invalid_argument("savgol_smooth: window must exceed poly_order");
    }
    if (n < static_cast<std::size_t>(window)) {
        throw std::invalid_argument("savgol_smooth: series shorter than window");
    }
}

}  // namespace

const std::vector<double>& savgol_coefficients(int window, int poly_order) {
    validate_params(static_cast<std::size_t>(window), window, poly_order);
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(window, poly_order);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, compute_center_weights(window, poly_order)).first;
    }
    return it->second;
}

Series savgol_smooth(const Series& s, int window, int poly_order) {
    validate_params(s.size(), window, poly_order);
    const auto& w = savgol_coefficients(window, poly_order);
    const int half = window / 2;
    const std::int64_t n = static_cast<std::int64_t>(s.size());

    // Mirror padding: index -k maps to k, index n-1+k maps to n-1-k.
    auto sample = [&](std::int64_t i) {
        if (i < 0) i = -i;
        if (i >= n) i = 2 * (n - 1) - i;
        return s[static_cast<std::size_t>(i)];
    };

    Series out(s.size());
    for (std::int64_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = -half; k <= half; ++k) acc += w[k + half] * sample(i + k);
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

Series derivative(const Series& s) {
    if (s.size() < 3) throw std::invalid_argument("derivative: series needs at least 3 samples");
    const std::size_t n = s.size();
    Series out(n);
    out[0] = s[1] - s[0];
    out[n - 1] = s[n - 1] - s[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (s[i + 1] - s[i - 1]) * 0.5;
    return out;
}

std::vector<std::size_t> local_minima(const Series& s) {
    std::vector<std::size_t> out;
    const std::size_t n = s.size();
    if (n < 3) return out;
    std::size_t i = 1;
    while (i + 1 < n) {
        if (s[i - 1] > s[i]) {
            std::size_t j = i;
            while (j + 1 < n && s[j + 1] == s[i]) ++j;
            if (j + 1 < n && s[j + 1] > s[i]) out.push_back(i);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return out;
}

std::size_t argmax_in_range(const Series& s, std::size_t lo, std::size_t hi) {
    if (lo > hi || hi >= s.size()) {
        throw std::invalid_argument("argmax_in_range: invalid index range");
    }
    std::size_t best = lo;
    for (std::size_t i = lo + 1; i <= hi; ++i) {
        if (s[i] > s[best]) best = i;
    }
    return best;
}

}  // namespace windup
