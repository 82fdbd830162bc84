#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "forge/field.hpp"

namespace forge {

/// Dense row-major matrix over Z/p.
class ScalarMatrix {
public:
  ScalarMatrix(const PrimeField &f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static ScalarMatrix identity(const PrimeField &f, std::size_t n) {
    ScalarMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds a matrix from signed integers, reduced mod p.
  static ScalarMatrix from_ints(const PrimeField &f, std::size_t rows, std::size_t cols,
                                std::span<const std::int64_t> values) {
    if (values.size() != rows * cols) throw std::invalid_argument("from_ints: size mismatch");
    ScalarMatrix m(f, rows, cols);
    for (std::size_t i = 0; i < values.size(); ++i) m.data_[i] = f.from_int(values[i]);
    return m;
  }

  const PrimeField &field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint32_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<std::uint32_t> &data() const { return data_; }

  bool is_zero() const {
    for (auto v : data_)
      if (v) return false;
    return true;
  }

  ScalarMatrix transpose() const {
    ScalarMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend ScalarMatrix operator*(const ScalarMatrix &a, const ScalarMatrix &b) {
    a.field_.check_same(b.field_);
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    const auto &f = a.field_;
    ScalarMatrix c(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        std::uint32_t x = a(i, k);
        if (!x) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j)) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
      }
    return c;
  }

  std::vector<std::uint32_t> apply(std::span<const std::uint32_t> v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector product: shape mismatch");
    std::vector<std::uint32_t> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        acc += static_cast<std::uint64_t>((*this)(i, j)) * v[j];
        // keep the accumulator far from overflow; p < 2^31 so each term is < 2^62
        if (acc >= (std::uint64_t{1} << 62)) acc = field_.reduce(acc);
      }
      out[i] = field_.reduce(acc);
    }
    return out;
  }

  friend bool operator==(const ScalarMatrix &a, const ScalarMatrix &b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  PrimeField field_;
  std::size_t rows_, cols_;
  std::vector<std::uint32_t> data_;
};

struct RrefResult {
  ScalarMatrix reduced;
  std::size_t rank;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
};

/// Gauss-Jordan elimination. Pivot = first nonzero entry at or below the
/// current row, scanning columns left to right, so the result (and every
/// kernel basis derived from it) is reproducible.
inline RrefResult rref(ScalarMatrix m) {
  const auto &f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> support;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    std::uint32_t inv = f.inv(m(r, c));
    support.clear();
    for (std::size_t j = c; j < cols; ++j)
      if (m(r, j)) {
        m(r, j) = f.mul(m(r, j), inv);
        support.push_back(j);
      }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      std::uint32_t factor = m(i, c);
      if (!factor) continue;
      std::uint32_t nf = f.neg(factor);
      for (std::size_t j : support) m(i, j) = f.add(m(i, j), f.mul(nf, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), r, std::move(pivots)};
}

inline std::size_t rank(const ScalarMatrix &m) { return rref(m).rank; }

/// Basis of the right null space {v : M v = 0}. One vector per non-pivot
/// column j of rref(M): v_j = 1, the other free entries 0.
inline std::vector<std::vector<std::uint32_t>> kernel_basis(const ScalarMatrix &m) {
  const auto &f = m.field();
  auto red = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : red.pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t j = 0; j < cols; ++j) {
    if (is_pivot[j]) continue;
    std::vector<std::uint32_t> v(cols, 0);
    v[j] = 1;
    for (std::size_t i = 0; i < red.rank; ++i) v[red.pivots[i]] = f.neg(red.reduced(i, j));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Columns of the kernel basis packed into a cols x k matrix.
inline ScalarMatrix kernel_matrix(const ScalarMatrix &m) {
  auto basis = kernel_basis(m);
  ScalarMatrix k(m.field(), m.cols(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) k(i, j) = basis[j][i];
  return k;
}

}  // namespace forge
