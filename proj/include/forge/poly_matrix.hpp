#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "forge/matrix.hpp"
#include "forge/poly.hpp"

namespace forge {

/// Dense matrix of polynomials, row-major.
class PolyMatrix {
public:
  PolyMatrix(const PrimeField &f, unsigned nvars, std::size_t rows, std::size_t cols)
      : field_(f), nvars_(nvars), rows_(rows), cols_(cols), entries_(rows * cols, MultiPoly(f, nvars)) {}

  /// Scalar matrix viewed as a matrix of constants.
  static PolyMatrix from_scalars(const ScalarMatrix &m, unsigned nvars) {
    PolyMatrix r(m.field(), nvars, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = MultiPoly::constant(m.field(), nvars, m(i, j));
    return r;
  }

  const PrimeField &field() const { return field_; }
  unsigned nvars() const { return nvars_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  MultiPoly &operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const MultiPoly &operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  const std::vector<MultiPoly> &entries() const { return entries_; }

  bool is_zero() const {
    for (const auto &e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  PolyMatrix transpose() const {
    PolyMatrix t(field_, nvars_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  PolyMatrix submatrix(const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols) const {
    PolyMatrix s(field_, nvars_, rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
  }

  /// Stacks a on top of b.
  static PolyMatrix vstack(const PolyMatrix &a, const PolyMatrix &b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
    PolyMatrix r(a.field_, a.nvars_, a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
    return r;
  }

  PolyMatrix scaled(std::uint32_t c) const {
    PolyMatrix r = *this;
    for (auto &e : r.entries_) e = e.scaled(c);
    return r;
  }

  friend PolyMatrix operator+(const PolyMatrix &a, const PolyMatrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    PolyMatrix r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] += b.entries_[i];
    return r;
  }

  friend PolyMatrix operator-(const PolyMatrix &a, const PolyMatrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    PolyMatrix r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] -= b.entries_[i];
    return r;
  }

  /// Product; zero entries are skipped, which matters for the sparse
  /// elementary matrices used when assembling linear systems.
  friend PolyMatrix operator*(const PolyMatrix &a, const PolyMatrix &b) {
    a.field_.check_same(b.field_);
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    PolyMatrix r(a.field_, a.nvars_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto &x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const auto &y = b(k, j);
          if (!y.is_zero()) r(i, j) += x * y;
        }
      }
    return r;
  }

  ScalarMatrix evaluate(std::span<const std::uint32_t> point) const {
    ScalarMatrix m(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).evaluate(point);
    return m;
  }

  friend bool operator==(const PolyMatrix &a, const PolyMatrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
      if (!(a.entries_[i] == b.entries_[i])) return false;
    return true;
  }

private:
  PrimeField field_;
  unsigned nvars_;
  std::size_t rows_, cols_;
  std::vector<MultiPoly> entries_;
};

inline constexpr std::size_t kMaxDeterminantSize = 6;

/// Determinant by cofactor expansion along rows, memoized on the subset of
/// columns still in play (2^n partial minors).
inline MultiPoly det(const PolyMatrix &m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("det: matrix is not square");
  if (n > kMaxDeterminantSize) throw std::invalid_argument("det: sizes above 6x6 are not supported");
  const auto &f = m.field();
  if (n == 0) return MultiPoly::constant(f, m.nvars(), 1);
  // minors[S] = det of rows 0..|S|-1 restricted to the columns in S
  std::vector<std::optional<MultiPoly>> minors(std::size_t{1} << n);
  minors[0] = MultiPoly::constant(f, m.nvars(), 1);
  for (std::size_t size = 1; size <= n; ++size) {
    const std::size_t row = size - 1;
    for (std::size_t set = 1; set < minors.size(); ++set) {
      if (static_cast<std::size_t>(__builtin_popcountll(set)) != size) continue;
      if (size == n && set != minors.size() - 1) continue;
      MultiPoly acc(f, m.nvars());
      std::size_t position = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(set >> c & 1)) continue;
        const auto &entry = m(row, c);
        const auto &rest = *minors[set & ~(std::size_t{1} << c)];
        if (!entry.is_zero() && !rest.is_zero()) {
          // sign of the cofactor: (-1)^(row + position of c inside the set)
          MultiPoly term = entry * rest;
          if ((row + position) & 1) acc -= term;
          else acc += term;
        }
        ++position;
      }
      minors[set] = std::move(acc);
    }
  }
  return *minors.back();
}

/// Classical adjugate of a 3x3 matrix: M * adj(M) = det(M) * I.
inline PolyMatrix adjugate3(const PolyMatrix &m) {
  if (m.rows() != 3 || m.cols() != 3) throw std::invalid_argument("adjugate3: expects a 3x3 matrix");
  PolyMatrix adj(m.field(), m.nvars(), 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      // adj(i,j) = (-1)^(i+j) * minor with row j and column i removed
      std::size_t r0 = j == 0 ? 1 : 0, r1 = j == 2 ? 1 : 2;
      std::size_t c0 = i == 0 ? 1 : 0, c1 = i == 2 ? 1 : 2;
      MultiPoly minor = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
      adj(i, j) = ((i + j) & 1) ? -minor : minor;
    }
  return adj;
}

}  // namespace forge
