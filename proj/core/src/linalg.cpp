#include "pg4/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace pg4 {

void Matrix::append_row(std::span<const FieldElement> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void Matrix::truncate_rows(std::size_t rows) {
  if (rows > rows_) throw std::out_of_range("truncate_rows beyond size");
  rows_ = rows;
  data_.resize(rows * cols_);
}

std::size_t row_reduce(const GaloisField& field, Matrix& m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, col).bits == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      auto a = m.row(pivot);
      auto b = m.row(rank);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const FieldElement scale = field.inv(m(rank, col));
    for (auto& x : m.row(rank)) x = field.mul(x, scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank) continue;
      const FieldElement f = m(r, col);
      if (f.bits == 0) continue;
      for (std::size_t c = col; c < m.cols(); ++c) {
        m(r, c) = GaloisField::add(m(r, c), field.mul(f, m(rank, c)));
      }
    }
    ++rank;
  }
  m.truncate_rows(rank);
  return rank;
}

std::vector<std::size_t> pivot_columns(const Matrix& rref) {
  std::vector<std::size_t> pivots;
  pivots.reserve(rref.rows());
  for (std::size_t r = 0; r < rref.rows(); ++r) {
    std::size_t c = 0;
    while (c < rref.cols() && rref(r, c).bits == 0) ++c;
    pivots.push_back(c);
  }
  return pivots;
}

Matrix nullspace(const GaloisField& field, const Matrix& m) {
  Matrix r = m;
  row_reduce(field, r);
  const auto pivots = pivot_columns(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  Matrix kernel(0, m.cols());
  std::vector<FieldElement> v(m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::fill(v.begin(), v.end(), FieldElement{});
    v[free] = GaloisField::one();
    // Characteristic 2: -a == a.
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = r(i, free);
    kernel.append_row(v);
  }
  row_reduce(field, kernel);
  return kernel;
}

bool EchelonBasis::insert(std::span<const FieldElement> row) {
  std::vector<FieldElement> v(row.begin(), row.end());
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    const FieldElement f = v[pivots_[i]];
    if (f.bits == 0) continue;
    for (std::size_t c = 0; c < v.size(); ++c) {
      v[c] = GaloisField::add(v[c], field_->mul(f, basis_(i, c)));
    }
  }
  std::size_t lead = 0;
  while (lead < v.size() && v[lead].bits == 0) ++lead;
  if (lead == v.size()) return false;

  basis_.append_row(v);
  pivots_.push_back(lead);
  row_reduce(*field_, basis_);
  pivots_ = pivot_columns(basis_);
  return true;
}

}  // namespace pg4
