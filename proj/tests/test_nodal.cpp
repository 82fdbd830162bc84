#include <gtest/gtest.h>

#include <vector>

#include "forge/nodal.hpp"

using namespace forge;

namespace {

const PrimeField F(101);

MultiPoly x(unsigned i) { return MultiPoly::variable(F, 4, i); }

// Rank of the annihilation conditions built by multiplying (B, epsilon) with
// each symmetric unit matrix times a quadratic monomial, so the assembly in
// symmetric_system is not reused.
std::size_t annihilation_rank_oracle(const BundlePresentation &P, bool with_epsilon) {
  auto M = with_epsilon ? P.stacked() : PolyMatrix::from_scalars(P.bscalar, 4);
  auto quad = graded_piece_basis(4, 2);
  GradedIndex quad_index(4, 2), cubic_index(4, 3);
  std::vector<std::vector<std::uint32_t>> images;
  for (std::size_t r = 0; r < 12; ++r)
    for (std::size_t c = r; c < 12; ++c)
      for (auto m : quad) {
        PolyMatrix E(F, 4, 12, 12);
        E(r, c) = MultiPoly::monomial(F, 4, m);
        E(c, r) = MultiPoly::monomial(F, 4, m);
        auto prod = M * E;
        std::vector<std::uint32_t> flat;
        for (std::size_t i = 0; i < prod.rows(); ++i)
          for (std::size_t j = 0; j < prod.cols(); ++j) {
            const auto &idx = i < 3 ? quad_index : cubic_index;
            std::vector<std::uint32_t> block(idx.size(), 0);
            for (const auto &t : prod(i, j).terms()) block[idx[t.mono]] = t.coeff;
            flat.insert(flat.end(), block.begin(), block.end());
          }
        images.push_back(std::move(flat));
      }
  ScalarMatrix m(F, images.size(), images.front().size());
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = 0; j < images[i].size(); ++j) m(i, j) = images[i][j];
  return rank(m);
}

// One B0 run shared by the tests that need a sextic.
struct B0Run {
  BundlePresentation pres = build_presentation(fixtures::b0(F));
  std::vector<PolyMatrix> basis = solve_symmetric_space(pres);
  SexticExtraction ex;
  NodalCheck nodal;

  B0Run() : ex(make_extraction()), nodal(make_nodal()) {}

  SexticExtraction make_extraction() {
    Rng rng(2024);
    return extract_sextic(basis, rng);
  }
  NodalCheck make_nodal() {
    Rng rng(77);
    return verify_nodal(ex.sextic, rng);
  }
};

const B0Run &b0_run() {
  static const B0Run run;
  return run;
}

Tensor334 random_admissible(Rng &rng) { return detail::random_admissible_tensor(F, rng); }

}  // namespace

TEST(Presentation, B0IsSurjectiveEverywhere) {
  auto P = build_presentation(fixtures::b0(F));
  EXPECT_EQ(P.bscalar.rows(), 3u);
  EXPECT_EQ(P.bscalar.cols(), 12u);
  EXPECT_EQ(rank(P.bscalar), 3u);
  auto S = P.stacked();
  // all 6x6 minors; they have no common zero in P^3
  std::vector<MultiPoly> minors;
  std::vector<std::size_t> rows{0, 1, 2, 3, 4, 5};
  for (unsigned mask = 0; mask < (1u << 12); ++mask) {
    if (__builtin_popcount(mask) != 6) continue;
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < 12; ++c)
      if (mask >> c & 1) cols.push_back(c);
    auto d = det(S.submatrix(rows, cols));
    if (!d.is_zero()) minors.push_back(d);
  }
  GradedIdeal I(F, 4, minors);
  EXPECT_EQ(codim_degree(I).codim, 4u);  // primary to the irrelevant ideal
  EXPECT_TRUE(saturate_irrelevant(I).is_unit());
}

TEST(Presentation, EpsilonLayout) {
  auto e = epsilon_matrix(F);
  EXPECT_EQ(e(1, product_index(1, 2)), x(2));
  EXPECT_TRUE(e(1, product_index(0, 2)).is_zero());
}

TEST(Presentation, RankDeficiency) {
  Rng rng(1);
  auto t = Tensor334::random(F, rng);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) t(i, j, 2) = 0;
  EXPECT_THROW(build_presentation(t), RankDeficiency);
  EXPECT_THROW(module_presentation(t), RankDeficiency);
  for (int n = 0; n < 20; ++n) EXPECT_EQ(rank(build_presentation(Tensor334::random(F, rng)).bscalar), 3u);
}

TEST(SymmetricSpace, B0HasDimension22) {
  const auto &run = b0_run();
  ASSERT_EQ(run.basis.size(), 22u);
  for (const auto &A : run.basis) {
    EXPECT_TRUE(A.is_symmetric());
    EXPECT_TRUE((run.pres.stacked() * A).is_zero());
    for (const auto &e : A.entries()) EXPECT_TRUE(e.is_zero() || (e.is_homogeneous() && e.degree() == 2));
  }
  auto sys = symmetric_system(run.pres);
  EXPECT_EQ(sys.rows(), 1080u);
  EXPECT_EQ(sys.cols(), 780u);
  EXPECT_EQ(780 - annihilation_rank_oracle(run.pres, true), 22u);
}

TEST(SymmetricSpace, GenericTensorsHaveDimension21) {
  Rng rng(21);
  for (int n = 0; n < 5; ++n) {
    auto P = build_presentation(random_admissible(rng));
    auto basis = solve_symmetric_space(P);
    ASSERT_EQ(basis.size(), 21u);
    for (const auto &A : basis) ASSERT_TRUE(annihilates(P, A));
  }
}

TEST(SymmetricSpace, WithoutEpsilonMatchesOracle) {
  // A with Bscalar A = 0 and A symmetric: A = K a K^T with a a symmetric 9x9
  // matrix of quadrics, 45 * 10 = 450 dimensions
  Rng rng(3);
  auto P = build_presentation(Tensor334::random(F, rng));
  auto sys = symmetric_system(P, false);
  EXPECT_EQ(sys.rows(), 360u);
  std::size_t dim = kernel_basis(sys).size();
  EXPECT_EQ(dim, 450u);
  EXPECT_EQ(780 - annihilation_rank_oracle(P, false), dim);
}

TEST(Sextic, B0GivesADegreeSixGcd) {
  const auto &run = b0_run();
  EXPECT_EQ(run.ex.sextic.degree(), 6);
  EXPECT_TRUE(run.ex.sextic.is_homogeneous());
  EXPECT_FALSE(run.ex.double_cubic);
  EXPECT_LE(run.ex.attempts, kSexticRetryBudget);
  // every compression of A is divisible by F
  Rng rng(5);
  for (int n = 0; n < 3; ++n) {
    auto d = detail::compressed_minor(run.ex.A, 6, rng);
    EXPECT_TRUE(divide_exact(d, run.ex.sextic).has_value());
  }
}

TEST(Sextic, IndependentOfCompressions) {
  const auto &run = b0_run();
  Rng rng(6);
  for (int n = 0; n < 3; ++n) {
    auto d1 = detail::compressed_minor(run.ex.A, 6, rng), d2 = detail::compressed_minor(run.ex.A, 6, rng);
    auto g = gcd_multivar(d1, d2);
    ASSERT_EQ(g.degree(), 6);
    EXPECT_EQ(g.monic(), run.ex.sextic.monic());
  }
}

TEST(Sextic, GenericTensorGivesTheSquareOfTheInvolutionCubic) {
  Rng rng(8);
  for (int n = 0; n < 2; ++n) {
    auto t = random_admissible(rng);
    auto basis = solve_symmetric_space(build_presentation(t));
    auto ex = extract_sextic(basis, rng);
    ASSERT_TRUE(ex.double_cubic);
    ASSERT_TRUE(ex.cubic.has_value());
    EXPECT_EQ((*ex.cubic * *ex.cubic).monic(), ex.sextic.monic());
    EXPECT_EQ(ex.cubic->monic(), det_cubic(cross_involution({t, Side::Primal}).tensor).monic());
  }
}

TEST(Sextic, ZeroMatrixIsAnError) {
  Rng rng(9);
  std::vector<PolyMatrix> zero{PolyMatrix(F, 4, 12, 12)};
  try {
    extract_sextic(zero, rng);
    FAIL() << "expected SexticExtractionFailed";
  } catch (const SexticExtractionFailed &e) {
    EXPECT_NE(std::string(e.what()).find("zero determinant"), std::string::npos);
  }
  EXPECT_THROW(extract_sextic({}, rng), std::invalid_argument);
}

TEST(SquareRoot, DetectsSquares) {
  auto q = x(0) * x(1) + x(2) * x(2) + x(3) * x(0);
  auto c = q * x(1) + x(3).pow(3);
  EXPECT_TRUE(detail::square_root(c * c).has_value());
  EXPECT_EQ(detail::square_root(c * c)->monic(), c.monic());
  EXPECT_FALSE(detail::square_root(c * (c + x(0).pow(3))).has_value());
  EXPECT_FALSE(detail::square_root(c).has_value());
}

TEST(Nodal, B0SexticHas56Nodes) {
  const auto &run = b0_run();
  EXPECT_EQ(run.nodal.codim, 3u);
  EXPECT_EQ(run.nodal.degree, 56u);
  ASSERT_TRUE(run.nodal.radical_decided);
  EXPECT_TRUE(run.nodal.radical);
  ASSERT_TRUE(run.nodal.saturated.has_value());
  EXPECT_EQ(codim_degree(*run.nodal.saturated), (CodimDegree{3, 56}));
}

TEST(Nodal, DegenerateAndSmoothSextics) {
  Rng rng(10);
  auto r = verify_nodal(x(0).pow(6), rng);
  EXPECT_LT(r.codim, 3u);
  EXPECT_FALSE(r.radical_decided);

  std::vector<Term> terms;
  for (auto m : graded_piece_basis(4, 6)) terms.push_back({m, rng.residue(F)});
  auto smooth = verify_nodal(MultiPoly::from_terms(F, 4, terms), rng);
  EXPECT_EQ(smooth.codim, 4u);
  ASSERT_TRUE(smooth.saturated.has_value());
  EXPECT_TRUE(smooth.saturated->is_unit());

  EXPECT_THROW(verify_nodal(x(0).pow(5), rng), PreconditionFailed);
}

TEST(EvenSet, MinorIdealMatchesSingularScheme) {
  const auto &run = b0_run();
  Rng rng(11);
  auto es = even_set_check(run.ex.A, *run.nodal.saturated, rng);
  EXPECT_EQ(es.codim, 3u);
  EXPECT_EQ(es.degree, 56u);
  EXPECT_TRUE(es.equal);
  GradedIdeal unit(F, 4, {MultiPoly::constant(F, 4, 1)});
  EXPECT_FALSE(even_set_check(run.ex.A, unit, rng, 10).equal);
}

TEST(Tangent, B0Gives51) {
  const auto &run = b0_run();
  auto t = fixtures::b0(F);
  EXPECT_EQ(tangent_dimension_AB(t, run.ex.A), 51u);
  EXPECT_EQ(tangent_dimension_AB(t, run.ex.A.scaled(17)), 51u);
}

TEST(Tangent, ZeroA0AddsAllOfB) {
  // with A0 = 0 the Bscalar directions are unconstrained
  auto t = fixtures::b0(F);
  PolyMatrix zero(F, 4, 12, 12);
  EXPECT_EQ(tangent_dimension_AB(t, zero), 36u + b0_run().basis.size());
  Rng rng(12);
  auto other = Tensor334::random(F, rng);
  EXPECT_EQ(tangent_dimension_AB(other, zero), 36u + solve_symmetric_space(build_presentation(other)).size());
}

TEST(Tangent, PreconditionViolation) {
  PolyMatrix A(F, 4, 12, 12);
  A(0, 0) = x(0) * x(0);
  EXPECT_THROW(tangent_dimension_AB(fixtures::b0(F), A), PreconditionFailed);
}

TEST(ModulePresentation, ShapeAndContraction) {
  Rng rng(13);
  for (int n = 0; n < 5; ++n) {
    auto t = Tensor334::random(F, rng);
    auto b = module_presentation(t);
    ASSERT_EQ(b.rows(), 3u);
    ASSERT_EQ(b.cols(), 9u);
    // sum_{i,j} entries[i][j][k] * (coefficient of x_j in b(i, s)) = 0
    for (std::size_t s = 0; s < 9; ++s)
      for (int k = 0; k < 3; ++k) {
        Fp sum(F, 0);
        for (int i = 0; i < 3; ++i)
          for (unsigned j = 0; j < 4; ++j)
            sum = sum + Fp::raw(F, t(i, j, k)) * Fp::raw(F, b(i, s).coefficient(Monomial::variable(j)));
        ASSERT_TRUE(sum.is_zero());
      }
  }
}

TEST(ReducedTangent, B0Gives123) {
  const auto &run = b0_run();
  auto t = fixtures::b0(F);
  auto b = module_presentation(t);
  auto a = reduce_to_kernel(t, run.ex.A);
  EXPECT_TRUE(a.is_symmetric());
  EXPECT_TRUE((b * a).is_zero());
  EXPECT_EQ(reduced_ab_tangent(b, a), 123u);
}

TEST(ReducedTangent, DegenerateInputs) {
  PolyMatrix b0(F, 4, 3, 9), a0(F, 4, 9, 9);
  EXPECT_EQ(reduced_ab_tangent(b0, a0), 558u);

  // random b0, a0 = 0: all of b is free, plus the a with b0 a = 0
  Rng rng(14);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t s = 0; s < 9; ++s) {
      std::vector<Term> terms;
      for (unsigned j = 0; j < 4; ++j) terms.push_back({Monomial::variable(j), rng.residue(F)});
      b0(i, s) = MultiPoly::from_terms(F, 4, terms);
    }
  auto quad = graded_piece_basis(4, 2);
  GradedIndex cubic(4, 3);
  std::vector<std::vector<std::uint32_t>> images;
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = r; c < 9; ++c)
      for (auto m : quad) {
        PolyMatrix E(F, 4, 9, 9);
        E(r, c) = E(c, r) = MultiPoly::monomial(F, 4, m);
        auto prod = b0 * E;
        std::vector<std::uint32_t> flat(27 * cubic.size(), 0);
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 9; ++j)
            for (const auto &t : prod(i, j).terms()) flat[(9 * i + j) * cubic.size() + cubic[t.mono]] = t.coeff;
        images.push_back(std::move(flat));
      }
  ScalarMatrix m(F, images.size(), images.front().size());
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = 0; j < images[i].size(); ++j) m(i, j) = images[i][j];
  EXPECT_EQ(reduced_ab_tangent(b0, PolyMatrix(F, 4, 9, 9)), 108u + (450u - rank(m)));
}

TEST(ReducedTangent, PreconditionViolation) {
  PolyMatrix b0(F, 4, 3, 9), a0(F, 4, 9, 9);
  b0(0, 0) = x(0);
  a0(0, 0) = x(1) * x(1);
  EXPECT_THROW(reduced_ab_tangent(b0, a0), PreconditionFailed);
  a0 = PolyMatrix(F, 4, 9, 9);
  a0(0, 1) = x(1) * x(1);
  EXPECT_THROW(reduced_ab_tangent(PolyMatrix(F, 4, 3, 9), a0), PreconditionFailed);
}

TEST(Pipeline, SeededB0RunMeetsEveryExpectation) {
  auto r = full_pipeline(1, 101);
  EXPECT_FALSE(r.failed_stage.has_value()) << r.error.value_or("");
  for (const auto &e : r.expectations) EXPECT_TRUE(e.pass) << e.name << ": expected " << e.expected << ", got " << e.actual;
  EXPECT_TRUE(r.all_expectations_pass());
  EXPECT_EQ(r.seed, 1u);
  EXPECT_EQ(r.prime, 101u);

  // replay
  auto again = full_pipeline(1, 101);
  ASSERT_TRUE(again.sextic.has_value());
  EXPECT_EQ(again.sextic, r.sextic);
  EXPECT_EQ(again.extraction_attempts, r.extraction_attempts);
  EXPECT_EQ(again.expectations.size(), r.expectations.size());
}

TEST(Pipeline, SmallPrimeIsRejected) { EXPECT_THROW(full_pipeline(1, 7), PreconditionFailed); }

TEST(Pipeline, GenericModeFindsTheDoubleCubic) {
  PipelineConfig cfg;
  cfg.mode = PipelineMode::Generic;
  auto r = full_pipeline(cfg);
  EXPECT_TRUE(r.all_expectations_pass());
  EXPECT_EQ(r.solution_dimension, std::optional<std::size_t>(21));
  EXPECT_EQ(r.double_cubic, std::optional<bool>(true));
  EXPECT_EQ(r.cubic_is_involution_determinant, std::optional<bool>(true));
  EXPECT_FALSE(r.sing_codim.has_value());
}

TEST(Pipeline, FailingStageIsNamed) {
  PipelineConfig cfg;
  cfg.mode = PipelineMode::Tensor;
  cfg.tensor = Tensor334(F);
  auto r = full_pipeline(cfg);
  ASSERT_TRUE(r.failed_stage.has_value());
  EXPECT_EQ(*r.failed_stage, "presentation");
  EXPECT_FALSE(r.all_expectations_pass());
}
