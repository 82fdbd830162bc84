#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/gcd.hpp"
#include "forge/groebner.hpp"
#include "forge/matrix.hpp"
#include "forge/poly_matrix.hpp"
#include "forge/rng.hpp"

namespace forge {

/// 3x4x3 array of residues. entries[i][j][k]: i runs over the row space
/// (3), j over the four coordinates, k over the column space (3). Read as a
/// matrix of linear forms, entry (i, k) is sum_j entries[i][j][k] * x_j.
class Tensor334 {
public:
  using Entries = std::array<std::array<std::array<std::uint32_t, 3>, 4>, 3>;

  explicit Tensor334(const PrimeField &f) : field_(f), e_{} {}

  static Tensor334 from_ints(const PrimeField &f, const std::array<std::array<std::array<std::int64_t, 3>, 4>, 3> &v) {
    Tensor334 t(f);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 3; ++k) t.e_[i][j][k] = f.from_int(v[i][j][k]);
    return t;
  }

  /// Inverse of as_linear_matrix; every entry must be a linear form in 4 variables.
  static Tensor334 from_linear_matrix(const PolyMatrix &m) {
    if (m.rows() != 3 || m.cols() != 3 || m.nvars() != 4)
      throw std::invalid_argument("from_linear_matrix: expects a 3x3 matrix of forms in 4 variables");
    Tensor334 t(m.field());
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (const auto &term : m(i, k).terms()) {
          if (term.mono.degree() != 1) throw std::invalid_argument("from_linear_matrix: entry is not a linear form");
          for (int j = 0; j < 4; ++j)
            if (term.mono.exponent(j)) t.e_[i][j][k] = term.coeff;
        }
    return t;
  }

  static Tensor334 random(const PrimeField &f, Rng &rng) {
    Tensor334 t(f);
    for (auto &a : t.e_)
      for (auto &b : a)
        for (auto &c : b) c = rng.residue(f);
    return t;
  }

  const PrimeField &field() const { return field_; }
  std::uint32_t &operator()(int i, int j, int k) { return e_[i][j][k]; }
  std::uint32_t operator()(int i, int j, int k) const { return e_[i][j][k]; }
  const Entries &entries() const { return e_; }

  bool is_zero() const {
    for (const auto &a : e_)
      for (const auto &b : a)
        for (auto c : b)
          if (c) return false;
    return true;
  }

  Tensor334 scaled(std::uint32_t c) const {
    Tensor334 t = *this;
    for (auto &a : t.e_)
      for (auto &b : a)
        for (auto &v : b) v = field_.mul(v, c);
    return t;
  }

  /// The scalar c with *this == c * other, if there is one (c may be 0 only
  /// when *this is zero).
  std::optional<std::uint32_t> ratio_to(const Tensor334 &other) const {
    std::optional<std::uint32_t> c;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 3; ++k) {
          std::uint32_t a = e_[i][j][k], b = other.e_[i][j][k];
          if (!b) {
            if (a) return std::nullopt;
            continue;
          }
          std::uint32_t r = field_.div(a, b);
          if (c && *c != r) return std::nullopt;
          c = r;
        }
    if (!c) return is_zero() ? std::optional<std::uint32_t>(0) : std::nullopt;
    return c;
  }

  bool projectively_equal(const Tensor334 &other) const {
    auto c = ratio_to(other);
    return c && (*c != 0 || other.is_zero());
  }

  friend bool operator==(const Tensor334 &a, const Tensor334 &b) { return a.field_ == b.field_ && a.e_ == b.e_; }

private:
  PrimeField field_;
  Entries e_;
};

enum class Side { Primal, Dual };

inline Side flipped(Side s) { return s == Side::Primal ? Side::Dual : Side::Primal; }
inline std::string side_name(Side s) { return s == Side::Primal ? "primal" : "dual"; }

/// A tensor together with the space its linear forms live on: coordinates
/// of P^3 (primal) or of the dual P^3.
struct FiveTuple {
  Tensor334 tensor;
  Side side = Side::Primal;
};

/// Entry (i, k) = sum_j entries[i][j][k] x_j. The side only changes how the
/// variables are named in reports; the polynomials are the same.
inline PolyMatrix as_linear_matrix(const Tensor334 &t, Side = Side::Primal) {
  const auto &f = t.field();
  PolyMatrix m(f, 4, 3, 3);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      std::vector<Term> terms;
      for (int j = 0; j < 4; ++j)
        if (t(i, j, k)) terms.push_back({Monomial::variable(j), t(i, j, k)});
      m(i, k) = MultiPoly::from_terms(f, 4, std::move(terms));
    }
  return m;
}

inline MultiPoly det_cubic(const Tensor334 &t, Side side = Side::Primal) { return det(as_linear_matrix(t, side)); }

namespace detail {

// sign of the permutation (a, b, c) of (0, 1, 2), zero if not a permutation
inline int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace detail

/// The 9x3 contraction matrix: block (a, b) is sum_k eps(a, b, k) times the
/// k-th column of the linear matrix, so row (a, r) = 3a + r.
inline PolyMatrix btilde(const Tensor334 &t) {
  auto m = as_linear_matrix(t);
  PolyMatrix out(t.field(), 4, 9, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int k = 0; k < 3; ++k) {
        int s = detail::levi_civita(a, b, k);
        if (!s) continue;
        for (int r = 0; r < 3; ++r) out(3 * a + r, b) = s > 0 ? m(r, k) : -m(r, k);
      }
  return out;
}

/// Scalar form of btilde: rows (a, r) as above, column (b, j) = 4b + j holds
/// the coefficient of x_j in entry ((a, r), b).
inline ScalarMatrix btilde_coefficients(const Tensor334 &t) {
  const auto &f = t.field();
  ScalarMatrix m(f, 9, 12);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int k = 0; k < 3; ++k) {
        int s = detail::levi_civita(a, b, k);
        if (!s) continue;
        for (int r = 0; r < 3; ++r)
          for (int j = 0; j < 4; ++j) {
            std::uint32_t v = t(r, j, k);
            m(3 * a + r, 4 * b + j) = s > 0 ? v : f.neg(v);
          }
      }
  return m;
}

inline bool main_assumption_holds(const Tensor334 &t) { return rank(btilde_coefficients(t)) == 9; }

class MainAssumptionFailed : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

namespace detail {

// Canonical basis of the span of three vectors in the 12-dimensional space
// with coordinates (b, j) = 4b + j: reduced echelon form with coordinates
// taken in j-major order (all b for x0 first, then x1, ...).
inline std::vector<std::vector<std::uint32_t>> canonical_span(const PrimeField &f,
                                                              const std::vector<std::vector<std::uint32_t>> &vecs) {
  ScalarMatrix m(f, vecs.size(), 12);
  for (std::size_t a = 0; a < vecs.size(); ++a)
    for (int b = 0; b < 3; ++b)
      for (int j = 0; j < 4; ++j) m(a, 3 * j + b) = vecs[a][4 * b + j];
  auto red = rref(m);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t a = 0; a < red.rank; ++a) {
    std::vector<std::uint32_t> v(12, 0);
    for (int b = 0; b < 3; ++b)
      for (int j = 0; j < 4; ++j) v[4 * b + j] = red.reduced(a, 3 * j + b);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// Representative of t modulo base change in the column space: the columns,
/// read as vectors with coordinates (row, j), replaced by the canonical basis
/// of their span. Involution outputs are always in this form.
inline Tensor334 column_normal_form(const Tensor334 &t) {
  std::vector<std::vector<std::uint32_t>> cols(3, std::vector<std::uint32_t>(12, 0));
  for (int k = 0; k < 3; ++k)
    for (int r = 0; r < 3; ++r)
      for (int j = 0; j < 4; ++j) cols[k][4 * r + j] = t(r, j, k);
  auto canon = detail::canonical_span(t.field(), cols);
  Tensor334 out(t.field());
  for (std::size_t k = 0; k < canon.size(); ++k)
    for (int r = 0; r < 3; ++r)
      for (int j = 0; j < 4; ++j) out(r, j, static_cast<int>(k)) = canon[k][4 * r + j];
  return out;
}

/// The cross-product involution. The kernel of btilde_coefficients (three
/// vectors u_a with coordinates (b, j)) becomes the new column space, the
/// wedge-square of the old row space the new row space, in the basis
/// (e2^e3, -e1^e3, e1^e2). New entry (b, j, a) = u_a[(b, j)], the
/// coefficient of the dual variable x_j^v.
inline FiveTuple cross_involution(const FiveTuple &in) {
  const auto &t = in.tensor;
  auto coeffs = btilde_coefficients(t);
  if (rank(coeffs) != 9) throw MainAssumptionFailed("cross_involution: contraction matrix has rank below 9");
  auto ker = detail::canonical_span(t.field(), kernel_basis(coeffs));
  Tensor334 out(t.field());
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int j = 0; j < 4; ++j) out(b, j, a) = ker[a][4 * b + j];
  return {out, flipped(in.side)};
}

namespace detail {

inline std::uint32_t det3(const PrimeField &f, const std::vector<std::uint32_t> &v, std::size_t off) {
  auto a = [&](int r, int c) { return v[off + 3 * r + c]; };
  auto term = [&](int c0, int c1, int c2) { return f.mul(a(0, c0), f.mul(a(1, c1), a(2, c2))); };
  std::uint32_t pos = f.add(term(0, 1, 2), f.add(term(1, 2, 0), term(2, 0, 1)));
  std::uint32_t neg = f.add(term(2, 1, 0), f.add(term(0, 2, 1), term(1, 0, 2)));
  return f.sub(pos, neg);
}

}  // namespace detail

/// Whether g * A * k == B as matrices of linear forms for some invertible
/// 3x3 scalar matrices g and k. The pairs (g, k) with g A = B k^-1 form a
/// linear space; it is searched through its basis vectors and a few random
/// combinations, so a false negative is possible only in degenerate cases.
inline bool gl_equivalent(const Tensor334 &a, const Tensor334 &b, Rng &rng) {
  const auto &f = a.field();
  f.check_same(b.field());
  // unknowns: g(i, l) at 3i + l, h(l, k) at 9 + 3l + k; equation g A_j - B_j h = 0
  ScalarMatrix eq(f, 36, 18);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) {
        std::size_t row = 9 * j + 3 * i + k;
        for (int l = 0; l < 3; ++l) {
          eq(row, 3 * i + l) = a(l, j, k);
          eq(row, 9 + 3 * l + k) = f.neg(b(i, j, l));
        }
      }
  auto ker = kernel_basis(eq);
  auto invertible = [&](const std::vector<std::uint32_t> &v) { return detail::det3(f, v, 0) && detail::det3(f, v, 9); };
  for (const auto &v : ker)
    if (invertible(v)) return true;
  if (ker.size() < 2) return false;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<std::uint32_t> v(18, 0);
    for (const auto &w : ker) {
      std::uint32_t c = rng.residue(f);
      for (std::size_t i = 0; i < 18; ++i) v[i] = f.add(v[i], f.mul(c, w[i]));
    }
    if (invertible(v)) return true;
  }
  return false;
}

class RankDegeneration : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

struct HilbertBurch {
  PolyMatrix bhat;               // 4x3, forms in the plane variables u0..u2
  std::vector<MultiPoly> gammas;  // signed maximal minors, cubics
  GradedIdeal zeta;
};

/// Hilbert-Burch data in the plane: bhat(j, k) = sum_i entries[i][j][k] u_i,
/// gamma_j = (-1)^j det(bhat without row j). Then sum_j bhat(j, k) gamma_j = 0
/// for every k, and the gammas generate the ideal of a length-6 scheme when
/// the tensor is general.
inline HilbertBurch hilbert_burch(const Tensor334 &t) {
  const auto &f = t.field();
  PolyMatrix bhat(f, 3, 4, 3);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 3; ++k) {
      std::vector<Term> terms;
      for (int i = 0; i < 3; ++i)
        if (t(i, j, k)) terms.push_back({Monomial::variable(i), t(i, j, k)});
      bhat(j, k) = MultiPoly::from_terms(f, 3, std::move(terms));
    }
  std::vector<MultiPoly> gammas;
  bool all_zero = true;
  for (std::size_t j = 0; j < 4; ++j) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < 4; ++r)
      if (r != j) rows.push_back(r);
    auto minor = det(bhat.submatrix(rows, {0, 1, 2}));
    if (!minor.is_zero()) all_zero = false;
    gammas.push_back(j % 2 ? -minor : minor);
  }
  if (all_zero) throw RankDegeneration("hilbert_burch: all maximal minors vanish");
  GradedIdeal zeta(f, 3, gammas);
  return {std::move(bhat), std::move(gammas), std::move(zeta)};
}

/// Coefficients of (1 + t)^a (1 + 2t)^(-b) mod t^order, over the integers.
inline std::vector<long long> chern_series(unsigned a, unsigned b, unsigned order) {
  std::vector<long long> s(order, 0);
  if (order == 0) return s;
  s[0] = 1;
  for (unsigned n = 0; n < a; ++n)
    for (unsigned i = order; i-- > 1;) s[i] += s[i - 1];
  // divide by (1 + 2t): s_i <- s_i - 2 s_{i-1}
  for (unsigned n = 0; n < b; ++n)
    for (unsigned i = 1; i < order; ++i) s[i] -= 2 * s[i - 1];
  return s;
}

/// Total Chern class of the rank-6 bundles: (1 + t)^9 (1 + 2t)^(-3) mod t^4.
inline std::vector<long long> chern_polynomial() { return chern_series(9, 3, 4); }

namespace fixtures {

/// x0 * I + the skew matrix of (x1, x2, x3).
inline Tensor334 b0(const PrimeField &f) {
  auto x = [&](unsigned i) { return MultiPoly::variable(f, 4, i); };
  PolyMatrix m(f, 4, 3, 3);
  m(0, 0) = x(0), m(0, 1) = -x(3), m(0, 2) = x(2);
  m(1, 0) = x(3), m(1, 1) = x(0), m(1, 2) = -x(1);
  m(2, 0) = -x(2), m(2, 1) = x(1), m(2, 2) = x(0);
  return Tensor334::from_linear_matrix(m);
}

/// Projections of the cubic scroll: non-special and special case.
inline Tensor334 scroll_projection_general(const PrimeField &f) {
  auto x = [&](unsigned i) { return MultiPoly::variable(f, 4, i); };
  PolyMatrix m(f, 4, 3, 3);
  m(0, 0) = x(0), m(0, 2) = x(1);
  m(1, 1) = x(1), m(1, 2) = -x(0);
  m(2, 0) = -x(2), m(2, 1) = -x(3);
  return Tensor334::from_linear_matrix(m);
}

inline Tensor334 scroll_projection_special(const PrimeField &f) {
  auto x = [&](unsigned i) { return MultiPoly::variable(f, 4, i); };
  PolyMatrix m(f, 4, 3, 3);
  m(0, 0) = x(3), m(0, 1) = -x(2), m(0, 2) = -x(0);
  m(1, 0) = -x(1), m(1, 2) = x(3);
  m(2, 1) = x(3), m(2, 2) = -x(1);
  return Tensor334::from_linear_matrix(m);
}

}  // namespace fixtures

}  // namespace forge
