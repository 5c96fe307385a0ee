#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "field.hpp"

namespace kabreg {

/// Row-major dense matrix over a prime field.
class DenseMatrix {
 public:
  DenseMatrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  /// Builds from signed integer rows; all rows must have equal length.
  static DenseMatrix from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    DenseMatrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c) m.raw(r, c) = detail::reduce_signed(rows[r][c], field.modulus());
    }
    return m;
  }

  static DenseMatrix identity(PrimeField field, std::size_t n) {
    DenseMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.raw(i, i) = 1;
    return m;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  PrimeFieldScalar at(std::size_t r, std::size_t c) const {
    return PrimeFieldScalar::from_residue(data_.at(r * cols_ + c), field_.modulus());
  }
  void set(std::size_t r, std::size_t c, PrimeFieldScalar v) {
    if (v.modulus() != field_.modulus()) throw std::invalid_argument("prime field modulus mismatch");
    data_.at(r * cols_ + c) = v.residue();
  }

  std::uint32_t& raw(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  std::uint32_t raw(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::vector<PrimeFieldScalar> row(std::size_t r) const {
    std::vector<PrimeFieldScalar> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(at(r, c));
    return out;
  }

  /// Stacks the rows of `below` under this matrix.
  DenseMatrix stacked(const DenseMatrix& below) const {
    if (below.cols_ != cols_ && rows_ != 0 && below.rows_ != 0) throw std::invalid_argument("column count mismatch");
    DenseMatrix out(field_, rows_ + below.rows_, rows_ ? cols_ : below.cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return out;
  }

  /// Appends `extra` zero columns on the right.
  DenseMatrix padded(std::size_t extra) const {
    DenseMatrix out(field_, rows_, cols_ + extra);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out.raw(r, c) = raw(r, c);
    return out;
  }

  bool is_zero() const noexcept {
    for (auto v : data_)
      if (v != 0) return false;
    return true;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_ || a.field_ != b.field_) throw std::invalid_argument("incompatible matrix product");
    const std::uint32_t p = a.field_.modulus();
    DenseMatrix out(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint32_t aik = a.raw(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          out.raw(i, j) = detail::add_mod(out.raw(i, j), detail::mul_mod(aik, b.raw(k, j), p), p);
      }
    return out;
  }

  std::vector<PrimeFieldScalar> apply(std::span<const PrimeFieldScalar> v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
    std::vector<PrimeFieldScalar> out(rows_, field_.zero());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r] += at(r, c) * v[c];
    return out;
  }

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> data_;
};

/// Brings `m` to reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> reduce_to_echelon(DenseMatrix& m) {
  const std::uint32_t p = m.field().modulus();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m.raw(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.raw(sel, c), m.raw(row, c));
    const std::uint32_t inv = detail::inv_mod(m.raw(row, col), p);
    for (std::size_t c = col; c < m.cols(); ++c) m.raw(row, c) = detail::mul_mod(m.raw(row, c), inv, p);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const std::uint32_t f = m.raw(r, col);
      if (f == 0) continue;
      for (std::size_t c = col; c < m.cols(); ++c)
        m.raw(r, c) = detail::sub_mod(m.raw(r, c), detail::mul_mod(f, m.raw(row, c), p), p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(DenseMatrix m) { return reduce_to_echelon(m).size(); }

/// Basis of the right nullspace {v : M v = 0}, one vector per row.
inline DenseMatrix nullspace(DenseMatrix m) {
  const auto pivots = reduce_to_echelon(m);
  const std::uint32_t p = m.field().modulus();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  DenseMatrix basis(m.field(), m.cols() - pivots.size(), m.cols());
  std::size_t out = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis.raw(out, free) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis.raw(out, pivots[i]) = detail::neg_mod(m.raw(i, free), p);
    ++out;
  }
  return basis;
}

/// Row space basis in reduced echelon form (zero rows dropped).
inline DenseMatrix row_space(DenseMatrix m) {
  const auto pivots = reduce_to_echelon(m);
  DenseMatrix out(m.field(), pivots.size(), m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.raw(r, c) = m.raw(r, c);
  return out;
}

struct Solution {
  std::vector<PrimeFieldScalar> particular;
  DenseMatrix kernel;  // rows span the homogeneous solutions
  std::size_t dimension() const noexcept { return kernel.rows(); }
};

/// Solves A x = b. Returns nullopt when the system is inconsistent.
inline std::optional<Solution> solve(const DenseMatrix& a, std::span<const PrimeFieldScalar> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  DenseMatrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.raw(r, c) = a.raw(r, c);
    if (b[r].modulus() != a.field().modulus()) throw std::invalid_argument("prime field modulus mismatch");
    aug.raw(r, a.cols()) = b[r].residue();
  }
  const auto pivots = reduce_to_echelon(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<PrimeFieldScalar> x(a.cols(), a.field().zero());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x[pivots[i]] = PrimeFieldScalar::from_residue(aug.raw(i, a.cols()), a.field().modulus());
  return Solution{std::move(x), nullspace(a)};
}

inline PrimeFieldScalar determinant(DenseMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::uint32_t p = m.field().modulus();
  std::uint32_t det = 1;
  for (std::size_t col = 0; col < m.cols(); ++col) {
    std::size_t sel = col;
    while (sel < m.rows() && m.raw(sel, col) == 0) ++sel;
    if (sel == m.rows()) return m.field().zero();
    if (sel != col) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.raw(sel, c), m.raw(col, c));
      det = detail::neg_mod(det, p);
    }
    det = detail::mul_mod(det, m.raw(col, col), p);
    const std::uint32_t inv = detail::inv_mod(m.raw(col, col), p);
    for (std::size_t r = col + 1; r < m.rows(); ++r) {
      const std::uint32_t f = detail::mul_mod(m.raw(r, col), inv, p);
      if (f == 0) continue;
      for (std::size_t c = col; c < m.cols(); ++c)
        m.raw(r, c) = detail::sub_mod(m.raw(r, c), detail::mul_mod(f, m.raw(col, c), p), p);
    }
  }
  return PrimeFieldScalar::from_residue(det, p);
}

}  // namespace kabreg
