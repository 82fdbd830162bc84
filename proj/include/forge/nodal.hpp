#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "forge/gcd.hpp"
#include "forge/groebner.hpp"
#include "forge/matrix.hpp"
#include "forge/poly_matrix.hpp"
#include "forge/rng.hpp"
#include "forge/tensor334.hpp"

namespace forge {

class RankDeficiency : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class SexticExtractionFailed : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class PreconditionFailed : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr unsigned kSexticRetryBudget = 10;
inline constexpr unsigned kEvenSetMinors = 50;
inline constexpr std::uint32_t kMinNodalPrime = 57;

/// Product basis of U (x) V: u_i (x) v_j sits at 4i + j.
inline constexpr std::size_t product_index(std::size_t i, std::size_t j) { return 4 * i + j; }

/// The bundle as the kernel of the stacked 6x12 matrix (B, epsilon).
struct BundlePresentation {
  Tensor334 B;
  ScalarMatrix bscalar;  // 3x12, row k, column (i, j): entries[i][j][k]
  PolyMatrix epsilon;    // 3x12, entry (i, (i, j)) = x_j

  PolyMatrix stacked() const { return PolyMatrix::vstack(PolyMatrix::from_scalars(bscalar, 4), epsilon); }
};

inline ScalarMatrix bscalar_of(const Tensor334 &t) {
  ScalarMatrix m(t.field(), 3, 12);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 3; ++k) m(k, product_index(i, j)) = t(i, j, k);
  return m;
}

inline PolyMatrix epsilon_matrix(const PrimeField &f) {
  PolyMatrix e(f, 4, 3, 12);
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 4; ++j) e(i, product_index(i, j)) = MultiPoly::variable(f, 4, j);
  return e;
}

inline BundlePresentation build_presentation(const Tensor334 &t) {
  auto bs = bscalar_of(t);
  if (rank(bs) != 3) throw RankDeficiency("build_presentation: the multiplication map U (x) V -> W has rank below 3");
  return {t, std::move(bs), epsilon_matrix(t.field())};
}

namespace detail {

// Upper-triangle positions (r <= c) of an n x n symmetric matrix, row-major.
inline std::vector<std::pair<std::size_t, std::size_t>> symmetric_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) out.emplace_back(r, c);
  return out;
}

inline std::size_t pair_index(std::size_t n, std::size_t r, std::size_t c) {
  if (r > c) std::swap(r, c);
  // entries before row r: n + (n - 1) + ... + (n - r + 1)
  return r * n - r * (r - 1) / 2 + (c - r);
}

// Symmetric n x n matrix of forms of degree d whose coefficients are read
// from v, at (pair, monomial) = pair * |piece| + monomial.
inline PolyMatrix symmetric_from_coefficients(const PrimeField &f, std::size_t n, unsigned d,
                                              std::span<const std::uint32_t> v) {
  auto piece = graded_piece_basis(4, d);
  PolyMatrix A(f, 4, n, n);
  auto pairs = symmetric_pairs(n);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    std::vector<Term> terms;
    for (std::size_t m = 0; m < piece.size(); ++m)
      if (auto c = v[p * piece.size() + m]) terms.push_back({piece[m], c});
    auto poly = MultiPoly::from_terms(f, 4, std::move(terms));
    A(pairs[p].first, pairs[p].second) = poly;
    A(pairs[p].second, pairs[p].first) = poly;
  }
  return A;
}

}  // namespace detail

/// Coefficient matrix of the linear conditions on a symmetric 12x12 matrix A
/// of quadrics: rows for bscalar * A (36 quadrics, 360 rows) and, unless
/// suppressed, for epsilon * A (36 cubics, 720 rows). Columns are the 780
/// unknowns (pair, monomial).
inline ScalarMatrix symmetric_system(const BundlePresentation &P, bool with_epsilon = true) {
  const auto &f = P.B.field();
  const auto quad = graded_piece_basis(4, 2);
  GradedIndex cubic(4, 3);
  const std::size_t nq = quad.size(), nc = cubic.size();
  ScalarMatrix m(f, 36 * nq + (with_epsilon ? 36 * nc : 0), 78 * nq);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t c = 0; c < 12; ++c)
      for (std::size_t r = 0; r < 12; ++r) {
        auto b = P.bscalar(k, r);
        if (!b) continue;
        std::size_t p = detail::pair_index(12, r, c);
        for (std::size_t q = 0; q < nq; ++q) {
          auto &e = m((12 * k + c) * nq + q, p * nq + q);
          e = f.add(e, b);
        }
      }
  if (with_epsilon) {
    const std::size_t base = 36 * nq;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t c = 0; c < 12; ++c)
        for (unsigned j = 0; j < 4; ++j) {
          std::size_t p = detail::pair_index(12, product_index(i, j), c);
          for (std::size_t q = 0; q < nq; ++q) {
            std::size_t row = base + (12 * i + c) * nc + cubic[quad[q] * Monomial::variable(j)];
            m(row, p * nq + q) = f.add(m(row, p * nq + q), 1);
          }
        }
  }
  return m;
}

/// Basis of the symmetric 12x12 matrices of quadrics A with (B, epsilon) A = 0.
inline std::vector<PolyMatrix> solve_symmetric_space(const BundlePresentation &P) {
  std::vector<PolyMatrix> out;
  for (const auto &v : kernel_basis(symmetric_system(P)))
    out.push_back(detail::symmetric_from_coefficients(P.B.field(), 12, 2, v));
  return out;
}

inline bool annihilates(const BundlePresentation &P, const PolyMatrix &A) {
  return A.is_symmetric() && (P.stacked() * A).is_zero();
}

inline PolyMatrix random_combination(const std::vector<PolyMatrix> &basis, Rng &rng) {
  if (basis.empty()) throw std::invalid_argument("random_combination: empty basis");
  PolyMatrix A(basis.front().field(), basis.front().nvars(), basis.front().rows(), basis.front().cols());
  for (const auto &b : basis) A = A + b.scaled(rng.residue(A.field()));
  return A;
}

namespace detail {

inline PolyMatrix random_scalar_matrix(const PrimeField &f, std::size_t r, std::size_t c, Rng &rng) {
  ScalarMatrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.residue(f);
  return PolyMatrix::from_scalars(m, 4);
}

// det(P A Q) for random P (size x n) and Q (n x size)
inline MultiPoly compressed_minor(const PolyMatrix &A, std::size_t size, Rng &rng) {
  auto P = random_scalar_matrix(A.field(), size, A.rows(), rng);
  auto Q = random_scalar_matrix(A.field(), A.cols(), size, rng);
  return det(P * A * Q);
}

// G with G^2 proportional to F, if F is a square
inline std::optional<MultiPoly> square_root(const MultiPoly &F) {
  if (F.is_zero() || F.degree() % 2) return std::nullopt;
  MultiPoly g = F;
  for (unsigned v = 0; v < F.nvars(); ++v) {
    auto d = F.derivative(v);
    if (!d.is_zero()) g = gcd_multivar(g, d);
  }
  if (g.degree() * 2 != F.degree()) return std::nullopt;
  auto sq = g * g;
  if (!(sq.monic() == F.monic())) return std::nullopt;
  return g.monic();
}

}  // namespace detail

struct SexticExtraction {
  MultiPoly sextic;
  PolyMatrix A;
  unsigned attempts = 0;
  bool double_cubic = false;  // the sextic is the square of a cubic
  std::optional<MultiPoly> cubic;
};

/// F = gcd of two random 6x6 compressions of a random A from the span of
/// `basis`; fresh A and compressions are drawn until deg F = 6.
inline SexticExtraction extract_sextic(const std::vector<PolyMatrix> &basis, Rng &rng,
                                       unsigned budget = kSexticRetryBudget) {
  if (basis.empty()) throw std::invalid_argument("extract_sextic: empty basis");
  std::vector<int> degrees;
  for (unsigned attempt = 1; attempt <= budget; ++attempt) {
    auto A = random_combination(basis, rng);
    auto d1 = detail::compressed_minor(A, 6, rng);
    auto d2 = detail::compressed_minor(A, 6, rng);
    if (d1.is_zero() || d2.is_zero()) {
      degrees.push_back(-1);
      continue;
    }
    auto F = gcd_multivar(d1, d2);
    degrees.push_back(F.degree());
    if (F.degree() != 6) continue;
    SexticExtraction out{F, std::move(A), attempt, false, std::nullopt};
    if (auto g = detail::square_root(F)) {
      out.double_cubic = true;
      out.cubic = *g;
    }
    return out;
  }
  std::string seen;
  bool all_zero = true;
  for (int d : degrees) {
    seen += (seen.empty() ? "" : ", ") + (d < 0 ? std::string("zero") : std::to_string(d));
    all_zero = all_zero && d < 0;
  }
  throw SexticExtractionFailed(all_zero ? "extract_sextic: every compressed determinant vanished (zero determinant)"
                                        : "extract_sextic: no degree-6 gcd in " + std::to_string(budget) +
                                              " attempts; gcd degrees seen: " + seen);
}

inline GradedIdeal singular_ideal(const MultiPoly &F) {
  std::vector<MultiPoly> gens{F};
  for (unsigned v = 0; v < F.nvars(); ++v) gens.push_back(F.derivative(v));
  return GradedIdeal(F.field(), F.nvars(), std::move(gens));
}

struct NodalCheck {
  unsigned codim = 0;
  unsigned long long degree = 0;
  bool radical = false;
  bool radical_decided = false;
  std::optional<GradedIdeal> saturated;
  std::string note;
};

/// Singular scheme of F: (codim, degree) of (F, dF/dx_i), its saturation,
/// and the radical test when it is zero-dimensional.
inline NodalCheck verify_nodal(const MultiPoly &F, Rng &rng) {
  if (!F.is_homogeneous() || F.degree() != 6) throw PreconditionFailed("verify_nodal: expects a homogeneous sextic");
  NodalCheck out;
  auto sing = singular_ideal(F);
  auto cd = codim_degree(sing);
  out.codim = cd.codim;
  out.degree = cd.degree;
  // an empty projective locus saturates to the unit ideal
  out.saturated = cd.codim >= F.nvars() ? GradedIdeal(F.field(), F.nvars(), {MultiPoly::constant(F.field(), F.nvars(), 1)})
                                        : saturate_irrelevant(sing);
  if (out.saturated->is_unit()) {
    out.note = "smooth";
    return out;
  }
  if (cd.codim != F.nvars() - 1) {
    out.note = "singular locus is not zero-dimensional";
    return out;
  }
  try {
    auto r = is_radical_zero_dim_detailed(*out.saturated, rng);
    out.radical = r.radical;
    out.radical_decided = true;
  } catch (const ShapePositionFailure &e) {
    out.note = e.what();
  }
  return out;
}

struct EvenSetCheck {
  bool equal = false;
  unsigned codim = 0;
  unsigned long long degree = 0;
};

/// Ideal of `count` random 5x5 compressions of A, saturated and compared
/// with the saturated singular ideal.
inline EvenSetCheck even_set_check(const PolyMatrix &A, const GradedIdeal &sing_sat, Rng &rng,
                                   unsigned count = kEvenSetMinors) {
  std::vector<MultiPoly> minors;
  for (unsigned n = 0; n < count; ++n) minors.push_back(detail::compressed_minor(A, 5, rng));
  GradedIdeal I(A.field(), 4, std::move(minors));
  auto cd = codim_degree(I);
  auto sat = saturate_irrelevant(I);
  return {ideal_equals(sat, sing_sat), cd.codim, cd.degree};
}

/// Kernel of Bscalar with its free coordinates: kernel vector s has a 1 at
/// free[s] and 0 at the other free coordinates.
struct ProductKernel {
  std::vector<std::vector<std::uint32_t>> vectors;
  std::vector<std::size_t> free;
};

inline ProductKernel product_kernel(const ScalarMatrix &bscalar) {
  auto red = rref(bscalar);
  ProductKernel out;
  std::vector<bool> pivot(bscalar.cols(), false);
  for (auto p : red.pivots) pivot[p] = true;
  for (std::size_t c = 0; c < bscalar.cols(); ++c)
    if (!pivot[c]) out.free.push_back(c);
  out.vectors = kernel_basis(bscalar);
  return out;
}

/// The 3x9 matrix b of linear forms whose columns are the kernel vectors of
/// Bscalar read as U-valued linear forms: b(i, s) = sum_j K_s[(i, j)] x_j.
inline PolyMatrix module_presentation(const Tensor334 &t) {
  auto bs = bscalar_of(t);
  if (rank(bs) != 3) throw RankDeficiency("module_presentation: the multiplication map has rank below 3");
  auto ker = product_kernel(bs);
  const auto &f = t.field();
  PolyMatrix b(f, 4, 3, ker.vectors.size());
  for (std::size_t s = 0; s < ker.vectors.size(); ++s)
    for (unsigned i = 0; i < 3; ++i) {
      std::vector<Term> terms;
      for (unsigned j = 0; j < 4; ++j)
        if (auto c = ker.vectors[s][product_index(i, j)]) terms.push_back({Monomial::variable(j), c});
      b(i, s) = MultiPoly::from_terms(f, 4, std::move(terms));
    }
  return b;
}

/// The 9x9 matrix a with A = K a K^T, K the 12x9 kernel matrix of Bscalar:
/// the restriction of A to the free coordinates.
inline PolyMatrix reduce_to_kernel(const Tensor334 &t, const PolyMatrix &A) {
  auto ker = product_kernel(bscalar_of(t));
  return A.submatrix(ker.free, ker.free);
}

/// Dimension of the tangent space at (B0, A0) to the pairs (B, A) with
/// (B, epsilon) A = 0, A symmetric: 36 unknowns for Bscalar and 780 for A.
inline std::size_t tangent_dimension_AB(const Tensor334 &B0, const PolyMatrix &A0) {
  auto P = build_presentation(B0);
  if (!annihilates(P, A0)) throw PreconditionFailed("tangent_dimension_AB: (B, epsilon) A0 is not zero");
  const auto &f = B0.field();
  auto sys = symmetric_system(P);
  const auto quad = graded_piece_basis(4, 2);
  GradedIndex qi(4, 2);
  const std::size_t nq = quad.size();
  ScalarMatrix m(f, sys.rows(), 36 + sys.cols());
  for (std::size_t r = 0; r < sys.rows(); ++r)
    for (std::size_t c = 0; c < sys.cols(); ++c) m(r, 36 + c) = sys(r, c);
  // d(Bscalar) * A0: row (k, c, q) gains b(k, r) * coeff_q(A0(r, c))
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t c = 0; c < 12; ++c)
      for (std::size_t r = 0; r < 12; ++r)
        for (const auto &term : A0(r, c).terms()) {
          std::size_t row = (12 * k + c) * nq + qi[term.mono];
          m(row, 12 * k + r) = f.add(m(row, 12 * k + r), term.coeff);
        }
  return m.cols() - rank(m);
}

/// Dimension of the tangent space at (b0, a0) to the pairs (b, a) with
/// b a = 0, b a 3x9 matrix of linear forms and a a symmetric 9x9 matrix of
/// quadrics: 108 + 450 unknowns, 27 cubic entries.
inline std::size_t reduced_ab_tangent(const PolyMatrix &b0, const PolyMatrix &a0) {
  if (b0.rows() != 3 || b0.cols() != 9 || a0.rows() != 9 || a0.cols() != 9)
    throw PreconditionFailed("reduced_ab_tangent: expects a 3x9 b0 and a 9x9 a0");
  for (const auto &e : b0.entries())
    if (!e.is_zero() && (!e.is_homogeneous() || e.degree() != 1))
      throw PreconditionFailed("reduced_ab_tangent: b0 must be linear");
  for (const auto &e : a0.entries())
    if (!e.is_zero() && (!e.is_homogeneous() || e.degree() != 2))
      throw PreconditionFailed("reduced_ab_tangent: a0 must be quadratic");
  if (!a0.is_symmetric()) throw PreconditionFailed("reduced_ab_tangent: a0 is not symmetric");
  if (!(b0 * a0).is_zero()) throw PreconditionFailed("reduced_ab_tangent: b0 a0 is not zero");
  const auto &f = b0.field();
  const auto quad = graded_piece_basis(4, 2);
  GradedIndex cubic(4, 3);
  const std::size_t nq = quad.size(), nc = cubic.size();
  const std::size_t nb = 27 * 4;
  ScalarMatrix m(f, 27 * nc, nb + 45 * nq);
  auto bump = [&](std::size_t row, std::size_t col, std::uint32_t c) { m(row, col) = f.add(m(row, col), c); };
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t c = 0; c < 9; ++c)
      for (std::size_t r = 0; r < 9; ++r) {
        const std::size_t base = (9 * i + c) * nc;
        // db(i, r) * a0(r, c)
        for (unsigned j = 0; j < 4; ++j)
          for (const auto &term : a0(r, c).terms())
            bump(base + cubic[term.mono * Monomial::variable(j)], (9 * i + r) * 4 + j, term.coeff);
        // b0(i, r) * da(r, c)
        std::size_t p = detail::pair_index(9, r, c);
        for (const auto &term : b0(i, r).terms())
          for (std::size_t q = 0; q < nq; ++q) bump(base + cubic[term.mono * quad[q]], nb + p * nq + q, term.coeff);
      }
  return m.cols() - rank(m);
}

enum class PipelineMode { B0, Generic, Tensor };

inline std::string mode_name(PipelineMode m) {
  switch (m) {
    case PipelineMode::B0: return "b0";
    case PipelineMode::Generic: return "generic";
    case PipelineMode::Tensor: return "tensor";
  }
  return "unknown";
}

struct PipelineConfig {
  std::uint64_t seed = 1;
  std::uint32_t prime = 101;
  PipelineMode mode = PipelineMode::B0;
  std::optional<Tensor334> tensor;  // used in Tensor mode
  bool nodal_checks = true;         // verify_nodal and even_set stages
};

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

/// A check with a value fixed in advance, e.g. the solution dimension 22 at B0.
struct Expectation {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct NodalReport {
  std::uint64_t seed = 0;
  std::uint32_t prime = 0;
  PipelineMode mode = PipelineMode::B0;
  std::optional<Tensor334> tensor;
  std::optional<std::size_t> solution_dimension;
  std::optional<unsigned> extraction_attempts;
  std::optional<MultiPoly> sextic;
  std::optional<int> degree;
  std::optional<bool> double_cubic;
  std::optional<MultiPoly> cubic;
  std::optional<bool> cubic_is_involution_determinant;
  std::optional<unsigned> sing_codim;
  std::optional<unsigned long long> sing_degree;
  std::optional<bool> radical;
  std::optional<unsigned> minor_codim;
  std::optional<unsigned long long> minor_degree;
  std::optional<bool> even_set_match;
  std::optional<std::size_t> tangent_dimension;
  std::optional<std::size_t> reduced_tangent_dimension;
  std::vector<std::string> notes;
  std::vector<StageTiming> timings;
  std::vector<Expectation> expectations;
  std::optional<std::string> failed_stage;
  std::optional<std::string> error;

  bool all_expectations_pass() const {
    if (failed_stage) return false;
    for (const auto &e : expectations)
      if (!e.pass) return false;
    return true;
  }
};

namespace detail {

template <class T>
std::string show(const std::optional<T> &v) {
  if (!v) return "missing";
  if constexpr (std::is_same_v<T, bool>)
    return *v ? "true" : "false";
  else
    return std::to_string(*v);
}

template <class T>
void expect(NodalReport &r, const std::string &name, const std::optional<T> &actual, const T &expected) {
  r.expectations.push_back({name, show(std::optional<T>(expected)), show(actual), actual && *actual == expected});
}

inline Tensor334 random_admissible_tensor(const PrimeField &f, Rng &rng) {
  for (;;) {
    auto t = Tensor334::random(f, rng);
    if (rank(bscalar_of(t)) == 3 && main_assumption_holds(t) && !det_cubic(t).is_zero()) return t;
  }
}

}  // namespace detail

/// Runs presentation, solve, sextic extraction, the nodal checks, the
/// even-set comparison and both tangent dimensions, recording every result.
/// A failing stage is recorded by name and ends the run.
inline NodalReport full_pipeline(const PipelineConfig &cfg) {
  if (cfg.prime < kMinNodalPrime)
    throw PreconditionFailed("full_pipeline: the prime must exceed 56, got " + std::to_string(cfg.prime));
  const PrimeField f(cfg.prime);
  Rng rng(cfg.seed);
  NodalReport r;
  r.seed = cfg.seed;
  r.prime = cfg.prime;
  r.mode = cfg.mode;

  auto stage = [&](const std::string &name, const std::function<void()> &body) {
    if (r.failed_stage) return;
    auto start = std::chrono::steady_clock::now();
    try {
      body();
    } catch (const std::exception &e) {
      r.failed_stage = name;
      r.error = e.what();
    }
    r.timings.push_back({name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
  };

  std::optional<BundlePresentation> pres;
  std::vector<PolyMatrix> basis;
  std::optional<SexticExtraction> ex;
  std::optional<NodalCheck> nodal;

  stage("presentation", [&] {
    switch (cfg.mode) {
      case PipelineMode::B0: r.tensor = fixtures::b0(f); break;
      case PipelineMode::Generic: {
        auto sub = rng.split("tensor");
        r.tensor = detail::random_admissible_tensor(f, sub);
        break;
      }
      case PipelineMode::Tensor:
        if (!cfg.tensor) throw std::invalid_argument("tensor mode needs a tensor");
        if (!(cfg.tensor->field() == f)) throw ModulusMismatch("tensor prime differs from the run prime");
        r.tensor = *cfg.tensor;
        break;
    }
    pres = build_presentation(*r.tensor);
  });
  stage("solve", [&] {
    basis = solve_symmetric_space(*pres);
    r.solution_dimension = basis.size();
  });
  stage("extract_sextic", [&] {
    auto sub = rng.split("extract_sextic");
    ex = extract_sextic(basis, sub);
    r.extraction_attempts = ex->attempts;
    r.sextic = ex->sextic;
    r.degree = ex->sextic.degree();
    r.double_cubic = ex->double_cubic;
    if (ex->double_cubic) {
      r.cubic = ex->cubic;
      if (main_assumption_holds(*r.tensor))
        r.cubic_is_involution_determinant =
            ex->cubic->monic() == det_cubic(cross_involution({*r.tensor, Side::Primal}).tensor).monic();
    }
  });
  if (ex && !ex->double_cubic && cfg.nodal_checks) {
    stage("verify_nodal", [&] {
      auto sub = rng.split("verify_nodal");
      nodal = verify_nodal(ex->sextic, sub);
      r.sing_codim = nodal->codim;
      r.sing_degree = nodal->degree;
      if (nodal->radical_decided) r.radical = nodal->radical;
      if (!nodal->note.empty()) r.notes.push_back("verify_nodal: " + nodal->note);
    });
    if (nodal && nodal->radical_decided) {
      stage("even_set", [&] {
        auto sub = rng.split("even_set");
        auto es = even_set_check(ex->A, *nodal->saturated, sub);
        r.minor_codim = es.codim;
        r.minor_degree = es.degree;
        r.even_set_match = es.equal;
      });
    }
  } else if (ex && ex->double_cubic) {
    r.notes.push_back("determinant is the square of a cubic surface; nodal checks skipped");
  }
  if (ex) {
    stage("tangent", [&] { r.tangent_dimension = tangent_dimension_AB(*r.tensor, ex->A); });
    stage("reduced_tangent", [&] {
      r.reduced_tangent_dimension =
          reduced_ab_tangent(module_presentation(*r.tensor), reduce_to_kernel(*r.tensor, ex->A));
    });
  }

  switch (cfg.mode) {
    case PipelineMode::B0:
      detail::expect(r, "solution_dimension", r.solution_dimension, std::size_t{22});
      detail::expect(r, "sextic_degree", r.degree, 6);
      detail::expect(r, "double_cubic", r.double_cubic, false);
      if (cfg.nodal_checks) {
        detail::expect(r, "sing_codim", r.sing_codim, 3u);
        detail::expect(r, "sing_degree", r.sing_degree, 56ull);
        detail::expect(r, "radical", r.radical, true);
        detail::expect(r, "minor_codim", r.minor_codim, 3u);
        detail::expect(r, "minor_degree", r.minor_degree, 56ull);
        detail::expect(r, "even_set_match", r.even_set_match, true);
      }
      detail::expect(r, "tangent_dimension", r.tangent_dimension, std::size_t{51});
      detail::expect(r, "reduced_tangent_dimension", r.reduced_tangent_dimension, std::size_t{123});
      break;
    case PipelineMode::Generic:
      detail::expect(r, "solution_dimension", r.solution_dimension, std::size_t{21});
      detail::expect(r, "double_cubic", r.double_cubic, true);
      break;
    case PipelineMode::Tensor: break;
  }
  return r;
}

inline NodalReport full_pipeline(std::uint64_t seed, std::uint32_t prime) {
  PipelineConfig cfg;
  cfg.seed = seed;
  cfg.prime = prime;
  return full_pipeline(cfg);
}

}  // namespace forge
