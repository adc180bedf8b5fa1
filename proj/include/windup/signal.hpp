#pragma once

#include <cstddef>
#include <vector>

namespace windup {

using Series = std::vector<double>;

// Savitzky-Golay smoothing: each output sample is the center value of a
// degree-`poly_order` least-squares fit over a symmetric window. Boundaries
// use mirror padding (reflection without repeating the edge sample), so the
// output has the same length as the input.
//
// Requires: window odd, window > poly_order, series length >= window.
Series savgol_smooth(const Series& s, int window, int poly_order);

// Center-row convolution weights for a (window, poly_order) filter. Cached
// per parameter pair; safe for concurrent readers.
const std::vector<double>& savgol_coefficients(int window, int poly_order);

// Numerical derivative in value/frame: central differences at interior
// points, one-sided at the ends. Requires length >= 3.
Series derivative(const Series& s);

// Indices i with s[i-1] > s[i] < s[i+1]. A flat valley reports its first
// index when both flanks are strictly greater.
std::vector<std::size_t> local_minima(const Series& s);

// Smallest index in [lo, hi] attaining the maximum.
std::size_t argmax_in_range(const Series& s, std::size_t lo, std::size_t hi);

}  // namespace windup
