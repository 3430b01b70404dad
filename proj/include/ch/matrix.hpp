#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ch/errors.hpp"

namespace ch {

// Minimal row-major dense matrix used on module boundaries. Numerical code
// maps it into Eigen internally.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // rows * cols, row-major

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data.data() + r * cols, cols);
  }
};

// Copy of `m` keeping only the columns listed in `keep`, in that order.
inline DenseMatrix select_columns(const DenseMatrix& m,
                                  const std::vector<std::size_t>& keep) {
  DenseMatrix out(m.rows, keep.size());
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t k = 0; k < keep.size(); ++k) {
      if (keep[k] >= m.cols) throw InvalidArgument("select_columns: index out of range");
      out.at(r, k) = m.at(r, keep[k]);
    }
  return out;
}

}  // namespace ch
