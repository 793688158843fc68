#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace qtl {

// Dense row-major matrix of doubles. Small helper shared by the classical
// layers (weights) and the circuit specs (rotation angles per layer).
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {
        if (r < 0 || c < 0) throw std::invalid_argument("Matrix: negative dimension");
    }

    double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    std::span<double> row(int r) {
        return std::span<double>(data).subspan(static_cast<std::size_t>(r) * cols, cols);
    }
    std::span<const double> row(int r) const {
        return std::span<const double>(data).subspan(static_cast<std::size_t>(r) * cols, cols);
    }

    bool same_shape(const Matrix& other) const {
        return rows == other.rows && cols == other.cols;
    }

    bool operator==(const Matrix& other) const = default;
};

}  // namespace qtl
