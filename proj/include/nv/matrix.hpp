#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "nv/errors.hpp"
#include "nv/field.hpp"

namespace nv {

// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix select_columns(const std::vector<std::size_t>& columns) const {
    Matrix out(rows_, columns.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t j = 0; j < columns.size(); ++j) out(r, j) = (*this)(r, columns[j]);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Fraction-free (Bareiss) elimination; every division is exact.
std::size_t bareiss_rank(Matrix<mpz_class> m);

// Exact rank by Gaussian elimination over a field.
template <class Field>
std::size_t exact_rank(Matrix<typename Field::Element> m, const Field& f) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && f.is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(pivot, rank);
    const auto inv = f.inv(m(rank, col));
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (f.is_zero(m(r, col))) continue;
      const auto factor = f.mul(m(r, col), inv);
      for (std::size_t c = col; c < m.cols(); ++c)
        m(r, c) = f.sub(m(r, c), f.mul(factor, m(rank, c)));
    }
    ++rank;
  }
  return rank;
}

// Over Q: clear denominators row by row, then Bareiss.
std::size_t exact_rank(const Matrix<mpq_class>& m, const Rationals& f);

// Reduced row echelon form over a field, in place; returns pivot columns.
template <class Field>
std::vector<std::size_t> row_reduce(Matrix<typename Field::Element>& m, const Field& f) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && f.is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(pivot, rank);
    const auto inv = f.inv(m(rank, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(rank, c) = f.mul(m(rank, c), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || f.is_zero(m(r, col))) continue;
      const auto factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        m(r, c) = f.sub(m(r, c), f.mul(factor, m(rank, c)));
    }
    pivots.push_back(col);
    ++rank;
  }
  return pivots;
}

// Basis of { v : m v = 0 }, one vector per non-pivot column.
template <class Field>
std::vector<std::vector<typename Field::Element>> right_kernel(Matrix<typename Field::Element> m,
                                                               const Field& f) {
  const auto pivots = row_reduce(m, f);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<typename Field::Element>> basis;
  for (std::size_t freecol = 0; freecol < m.cols(); ++freecol) {
    if (is_pivot[freecol]) continue;
    std::vector<typename Field::Element> v(m.cols(), f.zero());
    v[freecol] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(m(i, freecol));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace nv
