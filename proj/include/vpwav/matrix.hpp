#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace vpwav {

// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::size_t size() const { return rows * cols; }

  std::vector<double> row(std::size_t i) const {
    if (i >= rows) throw std::invalid_argument("Matrix::row: index out of range");
    return std::vector<double>(data.begin() + static_cast<std::ptrdiff_t>(i * cols),
                               data.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
  }

  std::vector<double> col(std::size_t j) const {
    if (j >= cols) throw std::invalid_argument("Matrix::col: index out of range");
    std::vector<double> out(rows);
    for (std::size_t i = 0; i < rows; ++i) out[i] = (*this)(i, j);
    return out;
  }

  void set_row(std::size_t i, const std::vector<double>& v) {
    if (i >= rows || v.size() != cols) throw std::invalid_argument("Matrix::set_row: shape mismatch");
    for (std::size_t j = 0; j < cols; ++j) (*this)(i, j) = v[j];
  }

  void set_col(std::size_t j, const std::vector<double>& v) {
    if (j >= cols || v.size() != rows) throw std::invalid_argument("Matrix::set_col: shape mismatch");
    for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = v[i];
  }
};

}  // namespace vpwav
