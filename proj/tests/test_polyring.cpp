#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "forge/gcd.hpp"
#include "forge/poly.hpp"
#include "forge/poly_matrix.hpp"
#include "forge/rng.hpp"

using namespace forge;

namespace {

const PrimeField F(101);

MultiPoly x(unsigned i, unsigned n = 4) { return MultiPoly::variable(F, n, i); }
MultiPoly c(std::int64_t v, unsigned n = 4) { return MultiPoly::constant(F, n, v); }
MultiPoly P(const char *s, unsigned n = 4) { return MultiPoly::parse(F, n, s); }

MultiPoly random_form(Rng &rng, unsigned n, unsigned d) {
  std::vector<Term> terms;
  for (auto m : graded_piece_basis(n, d)) terms.push_back({m, rng.residue(F)});
  return MultiPoly::from_terms(F, n, terms);
}

MultiPoly random_poly(Rng &rng, unsigned n, unsigned max_deg, unsigned nterms) {
  std::vector<Term> terms;
  for (unsigned k = 0; k < nterms; ++k) {
    std::vector<unsigned> e(n, 0);
    unsigned budget = static_cast<unsigned>(rng.below(max_deg + 1));
    for (unsigned b = 0; b < budget; ++b) ++e[rng.below(n)];
    terms.push_back({Monomial::from_exponents(e), rng.nonzero_residue(F)});
  }
  return MultiPoly::from_terms(F, n, terms);
}

std::vector<std::uint32_t> random_point(Rng &rng, unsigned n) {
  std::vector<std::uint32_t> p(n);
  for (auto &v : p) v = rng.residue(F);
  return p;
}

PolyMatrix b0_matrix() {
  PolyMatrix m(F, 4, 3, 3);
  m(0, 0) = x(0), m(0, 1) = -x(3), m(0, 2) = x(2);
  m(1, 0) = x(3), m(1, 1) = x(0), m(1, 2) = -x(1);
  m(2, 0) = -x(2), m(2, 1) = x(1), m(2, 2) = x(0);
  return m;
}

PolyMatrix random_linear_matrix(Rng &rng, std::size_t n) {
  PolyMatrix m(F, 4, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_form(rng, 4, 1);
  return m;
}

// Leibniz formula over all permutations, independent of the memoized expansion.
MultiPoly leibniz_det(const PolyMatrix &m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  MultiPoly acc(F, m.nvars());
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    MultiPoly term = c(1, m.nvars());
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(i, perm[i]);
    acc = (inversions % 2) ? acc - term : acc + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

bool proportional(const MultiPoly &a, const MultiPoly &b) { return a.monic() == b.monic(); }

}  // namespace

TEST(Monomial, OrdersAgreeWithDefinitions) {
  auto m = [](std::vector<unsigned> e) { return Monomial::from_exponents(e); };
  auto grevlex = MonomialOrder::grevlex();
  auto lex = MonomialOrder::lex();
  // x0 x2 vs x1^2: lex says x0 x2 bigger; grevlex compares the last variable: x2 present loses
  EXPECT_TRUE(lex.greater(m({1, 0, 1, 0}), m({0, 2, 0, 0})));
  EXPECT_TRUE(grevlex.greater(m({0, 2, 0, 0}), m({1, 0, 1, 0})));
  EXPECT_TRUE(grevlex.greater(m({0, 0, 0, 3}), m({2, 0, 0, 0})));
  auto elim = MonomialOrder::elimination(1);
  EXPECT_TRUE(elim.greater(m({1, 0, 0, 0}), m({0, 5, 0, 0})));
  EXPECT_TRUE(m({1, 1, 0, 0}).divides(m({2, 1, 3, 0})));
  EXPECT_FALSE(m({1, 2, 0, 0}).divides(m({2, 1, 3, 0})));
  EXPECT_EQ(Monomial::lcm(m({1, 0, 2}), m({0, 3, 1})), m({1, 3, 2}));
  EXPECT_EQ(m({3, 1, 4, 1}).degree(), 9u);
  EXPECT_THROW(m({100, 0}) * m({100, 0}), std::overflow_error);
}

TEST(Monomial, GrevlexIsTotalAndMultiplicative) {
  Rng rng(9);
  auto order = MonomialOrder::grevlex();
  for (int n = 0; n < 1000; ++n) {
    std::vector<unsigned> a(4), b(4), t(4);
    for (unsigned i = 0; i < 4; ++i) a[i] = rng.below(5), b[i] = rng.below(5), t[i] = rng.below(3);
    auto ma = Monomial::from_exponents(a), mb = Monomial::from_exponents(b), mt = Monomial::from_exponents(t);
    int c1 = order.compare(ma, mb);
    EXPECT_EQ(c1, -order.compare(mb, ma));
    EXPECT_EQ(c1 == 0, ma == mb);
    EXPECT_EQ(c1, order.compare(ma * mt, mb * mt));
  }
}

TEST(GradedPiece, Counts) {
  EXPECT_EQ(graded_piece_basis(4, 2).size(), 10u);
  EXPECT_EQ(graded_piece_basis(4, 3).size(), 20u);
  EXPECT_EQ(graded_piece_basis(3, 3).size(), 10u);
  auto b = graded_piece_basis(4, 2);
  EXPECT_EQ(b.front(), Monomial::variable(0, 2));
  EXPECT_EQ(b.back(), Monomial::variable(3, 2));
  EXPECT_TRUE(std::is_sorted(b.begin(), b.end(), [](Monomial p, Monomial q) { return MultiPoly::deglex_greater(p, q); }));
}

TEST(CoefficientMatrix, UnitRowsAndZeroRow) {
  std::vector<MultiPoly> polys{x(0) * x(0), x(0) * x(1), MultiPoly(F, 4)};
  auto m = coefficient_matrix(polys, 2);
  ASSERT_EQ(m.rows(), 3u);
  ASSERT_EQ(m.cols(), 10u);
  for (std::size_t j = 0; j < 10; ++j) {
    EXPECT_EQ(m(0, j), j == 0 ? 1u : 0u);
    EXPECT_EQ(m(1, j), j == 1 ? 1u : 0u);
    EXPECT_EQ(m(2, j), 0u);
  }
}

TEST(CoefficientMatrix, RejectsBadDegrees) {
  std::vector<MultiPoly> mixed{x(0) * x(0) + x(1)};
  EXPECT_THROW(coefficient_matrix(mixed, 2), std::invalid_argument);
  std::vector<MultiPoly> cubic{x(0).pow(3)};
  EXPECT_THROW(coefficient_matrix(cubic, 2), std::invalid_argument);
}

TEST(CoefficientMatrix, RoundTrip) {
  Rng rng(4);
  for (int n = 0; n < 100; ++n) {
    std::vector<MultiPoly> q{random_form(rng, 4, 2)};
    auto m = coefficient_matrix(q, 2);
    EXPECT_EQ(poly_from_coefficients(F, 4, 2, m.row(0)), q[0]);
  }
}

TEST(MultiPoly, TextFormat) {
  auto p = x(0).pow(2) * x(1) - c(3) * x(3) + c(5);
  EXPECT_EQ(p.to_string(), "1*x0^2*x1 + 98*x3 + 5");
  EXPECT_EQ(MultiPoly::parse(F, 4, p.to_string()), p);
  EXPECT_EQ(P("x0^2*x1 - 3*x3 + 5"), p);
  EXPECT_EQ(MultiPoly(F, 4).to_string(), "0");
}

TEST(MultiPoly, RingAxiomsAndHomogeneity) {
  Rng rng(77);
  for (int n = 0; n < 1000; ++n) {
    auto f = random_poly(rng, 4, 3, 4), g = random_poly(rng, 4, 3, 4), h = random_poly(rng, 4, 3, 4);
    ASSERT_EQ((f + g) * h, f * h + g * h);
    ASSERT_EQ(f * g, g * f);
    ASSERT_EQ((f * g) * h, f * (g * h));
    auto pt = random_point(rng, 4);
    ASSERT_EQ(((f + g) * h).evaluate(pt), F.mul(F.add(f.evaluate(pt), g.evaluate(pt)), h.evaluate(pt)));
    if (!f.is_zero() && !g.is_zero()) ASSERT_EQ((f * g).degree(), f.degree() + g.degree());

    unsigned d = static_cast<unsigned>(rng.below(4));
    auto form = random_form(rng, 4, d);
    ASSERT_TRUE(form.is_homogeneous());
    std::uint32_t lambda = rng.residue(F);
    auto scaled = pt;
    for (auto &v : scaled) v = F.mul(v, lambda);
    ASSERT_EQ(form.evaluate(scaled), F.mul(F.pow(lambda, d), form.evaluate(pt)));
  }
}

TEST(MultiPoly, DerivativeAndSubstitution) {
  auto f = P("x0^3*x1 + 2*x1*x2^2");
  EXPECT_EQ(f.derivative(0), P("3*x0^2*x1"));
  EXPECT_EQ(f.derivative(2), P("4*x1*x2"));
  std::vector<MultiPoly> images{x(1), x(0), x(2), x(3)};
  EXPECT_EQ(f.substitute(images), P("x0*x1^3 + 2*x0*x2^2"));
  EXPECT_EQ(f.specialize(1, 2), P("2*x0^3 + 4*x2^2"));
}

TEST(MultiPoly, ExactDivision) {
  auto f = P("x0^2 - x1^2"), g = P("x0 + x1");
  auto q = divide_exact(f, g);
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, P("x0 - x1"));
  EXPECT_FALSE(divide_exact(f, P("x0 + x2")));
}

TEST(Det, DiagonalAndB0) {
  PolyMatrix d(F, 4, 3, 3);
  for (int i = 0; i < 3; ++i) d(i, i) = x(0);
  EXPECT_EQ(det(d), x(0).pow(3));
  EXPECT_EQ(det(b0_matrix()), x(0) * (x(0).pow(2) + x(1).pow(2) + x(2).pow(2) + x(3).pow(2)));
}

TEST(Det, MatchesLeibnizOracle) {
  Rng rng(31);
  for (int n = 0; n < 5; ++n) {
    auto m = random_linear_matrix(rng, 4);
    EXPECT_EQ(det(m), leibniz_det(m));
  }
  auto m5 = random_linear_matrix(rng, 5);
  EXPECT_EQ(det(m5), leibniz_det(m5));
}

TEST(Det, RejectsBadShapes) {
  EXPECT_THROW(det(PolyMatrix(F, 4, 2, 3)), std::invalid_argument);
  EXPECT_THROW(det(PolyMatrix(F, 4, 7, 7)), std::invalid_argument);
}

TEST(Adjugate, B0Entries) {
  auto adj = adjugate3(b0_matrix());
  // first row and column of the classical adjugate; the diagonal and the
  // mixed monomials agree with the usual cofactor display of this matrix
  EXPECT_EQ(adj(0, 0), P("x0^2 + x1^2"));
  EXPECT_EQ(adj(0, 1), P("x1*x2 + x0*x3"));
  EXPECT_EQ(adj(2, 0), P("x1*x3 + x0*x2"));
  EXPECT_EQ(adj(1, 0), P("x1*x2 - x0*x3"));
  EXPECT_EQ(adj(1, 1), P("x0^2 + x2^2"));
  EXPECT_EQ(adj(2, 2), P("x0^2 + x3^2"));
  EXPECT_EQ(adj(1, 2), P("x2*x3 + x0*x1"));
}

TEST(Adjugate, ScalarMatrixAndIdentity) {
  PolyMatrix d(F, 4, 3, 3);
  for (int i = 0; i < 3; ++i) d(i, i) = x(0);
  auto adj = adjugate3(d);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(adj(i, j), i == j ? x(0).pow(2) : MultiPoly(F, 4));
  EXPECT_THROW(adjugate3(PolyMatrix(F, 4, 2, 2)), std::invalid_argument);
}

TEST(Adjugate, IdentityOnRandomMatrices) {
  Rng rng(12);
  for (int n = 0; n < 200; ++n) {
    auto m = random_linear_matrix(rng, 3);
    auto adj = adjugate3(m);
    auto d = det(m);
    if (n < 20) {
      auto prod = m * adj;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ASSERT_EQ(prod(i, j), i == j ? d : MultiPoly(F, 4));
    }
    for (int k = 0; k < 20; ++k) {
      auto pt = random_point(rng, 4);
      auto me = m.evaluate(pt), ae = adj.evaluate(pt);
      auto pe = me * ae;
      std::uint32_t de = d.evaluate(pt);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ASSERT_EQ(pe(i, j), i == j ? de : 0u);
    }
  }
}

TEST(UPoly, GcdAndSquarefree) {
  UPoly a(F, {2, 3, 1});  // (x+1)(x+2)
  UPoly b(F, {3, 4, 1});  // (x+1)(x+3)
  EXPECT_EQ(gcd(a, b), UPoly(F, {1, 1}));
  EXPECT_TRUE(is_squarefree(a));
  EXPECT_FALSE(is_squarefree(a * UPoly(F, {1, 1})));
  auto [q, r] = divmod(a * b + UPoly(F, {5}), b);
  EXPECT_EQ(q, a);
  EXPECT_EQ(r, UPoly(F, {5}));
}

TEST(Gcd, SmallCases) {
  EXPECT_EQ(gcd_multivar(x(0) * x(1), x(0) * x(2)), x(0));
  auto f = P("x0^2*x1 + 3*x2^3 + x3");
  EXPECT_EQ(gcd_multivar(f, f), f.monic());
  EXPECT_EQ(gcd_multivar(f, c(7)), c(1));
  EXPECT_EQ(gcd_multivar(x(3).pow(2) * x(1), x(3) * x(2)), x(3));
  EXPECT_EQ(gcd_multivar(f, MultiPoly(F, 4)), f.monic());
}

TEST(Gcd, CommonFactorIsRecovered) {
  Rng rng(2718);
  for (int n = 0; n < 1000; ++n) {
    unsigned nv = 1 + static_cast<unsigned>(rng.below(4));
    auto f = random_poly(rng, nv, 3, 3), g = random_poly(rng, nv, 3, 3), h = random_poly(rng, nv, 3, 3);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    auto fh = f * h, gh = g * h;
    auto d = gcd_multivar(fh, gh);
    ASSERT_TRUE(divide_exact(d, h)) << "h=" << h.to_string() << " f=" << f.to_string() << " g=" << g.to_string();
    ASSERT_TRUE(divide_exact(fh, d));
    ASSERT_TRUE(divide_exact(gh, d));
  }
}

TEST(Gcd, DenseHomogeneousCase) {
  // degree-12 products sharing a sextic, the size met in sextic extraction
  Rng rng(5);
  auto h = random_form(rng, 4, 6);
  auto a = random_form(rng, 4, 3) * random_form(rng, 4, 3), b = random_form(rng, 4, 3) * random_form(rng, 4, 3);
  auto d = gcd_multivar(h * a, h * b);
  EXPECT_EQ(d.degree(), 6);
  EXPECT_TRUE(proportional(d, h));
}
