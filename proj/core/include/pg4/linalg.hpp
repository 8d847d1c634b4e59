#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pg4/gf.hpp"

namespace pg4 {

/// Dense row-major matrix over GF(q).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  FieldElement& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  FieldElement operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<FieldElement> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const FieldElement> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  /// Appends a row; the first appended row fixes the column count of an
  /// empty matrix.
  void append_row(std::span<const FieldElement> values);
  void truncate_rows(std::size_t rows);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> data_;
};

/// In-place reduced row echelon form. Pivots are chosen in column order, and
/// within a column the lowest-index nonzero row is used, so the result is
/// canonical for the row space. Zero rows are dropped. Returns the rank.
std::size_t row_reduce(const GaloisField& field, Matrix& m);

/// Pivot column of each row of a matrix already in reduced echelon form.
std::vector<std::size_t> pivot_columns(const Matrix& rref);

/// Basis of {x : m x = 0}, returned as rows in reduced echelon form. An empty
/// matrix (zero rows) means the kernel is trivial.
Matrix nullspace(const GaloisField& field, const Matrix& m);

/// Incremental elimination for streams of linear conditions: keeps a reduced
/// echelon basis of everything inserted so far.
class EchelonBasis {
 public:
  EchelonBasis(const GaloisField& field, std::size_t cols) : field_(&field), basis_(0, cols) {}

  /// Reduces `row` against the basis; returns true if it was independent.
  bool insert(std::span<const FieldElement> row);
  std::size_t rank() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }

 private:
  const GaloisField* field_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace pg4
