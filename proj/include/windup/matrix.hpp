#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace windup {

// Dense row-major matrix of doubles.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

    const double* row_ptr(std::size_t r) const { return values.data() + r * cols; }
    double* row_ptr(std::size_t r) { return values.data() + r * cols; }

    void push_row(const std::vector<double>& row) {
        if (cols == 0) cols = row.size();
        if (row.size() != cols) throw std::invalid_argument("Matrix::push_row: width mismatch");
        values.insert(values.end(), row.begin(), row.end());
        ++rows;
    }
};

}  // namespace windup
