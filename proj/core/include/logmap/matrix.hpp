#pragma once

#include "logmap/integer.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace logmap {

/// Dense row-major integer matrix. Lattice maps act on row vectors:
/// the image of x under M is x * M.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector row_vector(std::size_t i) const;
  Vector col_vector(std::size_t j) const;
  std::vector<Vector> row_vectors() const;

  IntMatrix transpose() const;
  /// Rows [first, last) as a new matrix.
  IntMatrix row_slice(std::size_t first, std::size_t last) const;
  IntMatrix col_slice(std::size_t first, std::size_t last) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t i);

  bool is_zero() const;
  bool operator==(const IntMatrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Row vector times matrix.
Vector image_of(std::span<const Integer> x, const IntMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);

/// Rank over Q.
std::size_t rank(const IntMatrix& m);
std::size_t rank(const std::vector<Vector>& rows, std::size_t cols);

} // namespace logmap
