#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "expfield/rational.hpp"

namespace expfield {

// Dense row-major matrix over any exact scalar type. Scalars without a usable
// default constructor (presented field elements) are filled explicitly.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols)
    requires std::is_default_constructible_v<T>
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  // Appending to a 0x0 matrix fixes the column count.
  void append_row(std::span<const T> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    assert(values.size() == cols_);
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  Matrix transposed() const {
    Matrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.data_.reserve(data_.size());
    for (std::size_t c = 0; c < cols_; ++c)
      for (std::size_t r = 0; r < rows_; ++r) t.data_.push_back((*this)(r, c));
    return t;
  }

  // Restriction to a subset of columns, in the given order.
  Matrix columns(std::span<const std::size_t> picked) const {
    Matrix m;
    m.rows_ = rows_;
    m.cols_ = picked.size();
    m.data_.reserve(rows_ * picked.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c : picked) m.data_.push_back((*this)(r, c));
    return m;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;

// ---------------------------------------------------------------------------
// Generic elimination over an exact field. T needs + - * / and is_zero /
// inverse overloads visible by lookup.

// Reduced row echelon form in place; returns the pivot columns.
template <class T>
std::vector<std::size_t> rref_in_place(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t found = m.rows();
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (!is_zero(m(r, col))) {
        found = r;
        break;
      }
    }
    if (found == m.rows()) continue;
    m.swap_rows(row, found);
    const T inv_pivot = inverse(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv_pivot;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const T factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) = m(r, c) - factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Basis of the right kernel {v : m v = 0}; each vector has its first nonzero
// entry equal to one.
template <class T>
std::vector<std::vector<T>> kernel_basis(Matrix<T> m, const T& zero, const T& one) {
  const auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), zero);
    v[free] = one;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = zero - m(i, free);
    for (const T& entry : v) {
      if (is_zero(entry)) continue;
      const T scale = inverse(entry);
      for (T& x : v) x = x * scale;
      break;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// One solution of m x = b with every free coordinate set to zero, or nullopt
// when the system is inconsistent.
template <class T>
std::optional<std::vector<T>> solve_linear(const Matrix<T>& m, std::span<const T> b, const T& zero) {
  assert(b.size() == m.rows());
  Matrix<T> aug(m.rows(), m.cols() + 1, zero);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<T> x(m.cols(), zero);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

// Rank by elimination without division: row_r <- p * row_r - a * row_p. Valid
// over any integral domain, so polynomial entries stay polynomial.
template <class T>
std::size_t rank_division_free(Matrix<T> m) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t found = m.rows();
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (!is_zero(m(r, col))) {
        found = r;
        break;
      }
    }
    if (found == m.rows()) continue;
    m.swap_rows(row, found);
    const T pivot = m(row, col);
    for (std::size_t r = row + 1; r < m.rows(); ++r) {
      if (is_zero(m(r, col))) continue;
      const T factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) = pivot * m(r, c) - factor * m(row, c);
    }
    ++row;
  }
  return row;
}

// Determinant by Bareiss elimination; each division is exact in the field.
template <class T>
T bareiss_determinant(Matrix<T> m, const T& zero, const T& one) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  if (n == 0) return one;
  T previous = one;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      std::size_t swap = k + 1;
      while (swap < n && is_zero(m(swap, k))) ++swap;
      if (swap == n) return zero;
      m.swap_rows(k, swap);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / previous;
      }
    }
    previous = m(k, k);
  }
  T det = m(n - 1, n - 1);
  return negate ? zero - det : det;
}

}  // namespace expfield
