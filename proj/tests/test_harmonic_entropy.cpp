#include "support.hpp"

using namespace jwt;
using namespace jwt::testing;

namespace {

TowerView base(const Tower& t) { return TowerView(t, 0); }

Mat one(const Tower& t, int level) { return identity(t.ambient(level)); }

// Random orthogonal projections summing to 1 in M_n: spectral projections of a random Hermitian matrix.
std::vector<Mat> spectral_projections(long n, Rng& rng) {
  Mat h = hermitian_part(rng.gaussian_matrix(n, n));
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  std::vector<Mat> out;
  for (long i = 0; i < n; ++i) out.push_back(es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint());
  return out;
}

}  // namespace

TEST(Harmonic, ConjugateExponents) {
  EXPECT_DOUBLE_EQ(conjugate_exponent(2.0), 2.0);
  EXPECT_DOUBLE_EQ(conjugate_exponent(4.0), 4.0 / 3.0);
  EXPECT_TRUE(std::isinf(conjugate_exponent(1.0)));
  EXPECT_DOUBLE_EQ(conjugate_exponent(kInf), 1.0);
}

TEST(Harmonic, KappaOracles) {
  TowerView v = base(c_in_m2());
  EXPECT_NEAR(kappa(v, Sign::plus, 0), 0.5, kTight);
  EXPECT_NEAR(kappa(v, Sign::minus, 0), 0.5, kTight);
  EXPECT_NEAR(kappa(v, 0), std::sqrt(kappa(v, Sign::plus, 0) * kappa(v, Sign::minus, 0)), kTight);
  EXPECT_NEAR(delta(v), 2.0, kTight);
  // B = A: B' cap A is the centre, a single trivial block
  EXPECT_NEAR(kappa(base(degenerate()), Sign::plus, 0), 1.0, kTight);
}

TEST(Harmonic, HausdorffYoungWitnesses) {
  const Tower& t = c_in_m2();
  TowerView v = base(t);
  EXPECT_GE(hausdorff_young_margin(v, Sign::plus, 1, one(t, 1), 2.0), -kTight);
  Mat e1 = t.jones_at(1, 1);
  EXPECT_NEAR(p_norm(fourier(v, 1, e1), t.algebra(2), kInf), std::sqrt(t.tau()), kTight);
  EXPECT_NEAR(p_norm(e1, t.algebra(1), 1.0), t.tau(), kTight);
  EXPECT_GE(hausdorff_young_margin(v, Sign::plus, 1, e1, kInf), 0.0);
  EXPECT_THROW(hausdorff_young_margin(v, Sign::plus, 1, e1, 1.5), Error);
  EXPECT_THROW(hausdorff_young_margin(v, Sign::plus, 0, e1, 2.0), Error);
}

TEST(Harmonic, HausdorffYoungAtTwoIsIsometry) {
  const Tower& t = m2_in_m4();
  TowerView v = base(t);
  Rng rng(41);
  for (int n = 1; n <= 2; ++n)
    for (Sign s : {Sign::plus, Sign::minus}) {
      Mat x = box_space(v, s, n).random(rng);
      double a = p_norm(x, algebra_of(v, s, n), 2);
      double b = p_norm(transform(v, s, n, x), algebra_of(v, opposite(s), n), 2);
      EXPECT_NEAR(a, b, kTight * a);
    }
}

TEST(Harmonic, InequalitiesHoldOnRandomSamples) {
  for (const Tower* t : {&c_in_m2(), &m2_in_m4()}) {
    TowerView v = base(*t);
    Rng rng(42);
    for (int n = 1; n <= 2; ++n)
      for (Sign s : {Sign::plus, Sign::minus})
        for (int i = 0; i < 25; ++i) {
          Mat x = box_space(v, s, n).random(rng);
          for (double p : {2.0, 4.0, kInf}) EXPECT_GE(hausdorff_young_margin(v, s, n, x, p), -1e-9);
          EXPECT_GE(donoho_stark_margin(v, s, n, x), -1e-9);
          EXPECT_GE(hirschman_beckner_margin(v, s, n, x), -1e-9);
        }
  }
}

TEST(Harmonic, DonohoStarkOnFirstJones) {
  const Tower& t = c_in_m2();
  TowerView v = base(t);
  Mat e1 = t.jones_at(1, 1);
  EXPECT_NEAR(support_size(e1, t.algebra(1)), t.tau(), kTight);
  EXPECT_NEAR(support_size(fourier(v, 1, e1), t.algebra(2)), 1.0, kTight);
  const double k = kappa(v, 0);
  EXPECT_NEAR(donoho_stark_margin(v, Sign::plus, 1, e1), 1.0 / (k * k) - 1.0, 1e-9);
  EXPECT_GE(donoho_stark_margin(v, Sign::plus, 1, one(t, 1)), 0.0);
  EXPECT_THROW(donoho_stark_margin(v, Sign::plus, 1, Mat::Zero(t.ambient(1), t.ambient(1))), Error);
}

TEST(Harmonic, HirschmanBecknerWitnesses) {
  const Tower& t = c_in_m2();
  TowerView v = base(t);
  Mat e1 = t.jones_at(1, 1);
  Mat x = e1 / p_norm(e1, t.algebra(1), 2);
  EXPECT_GE(hirschman_beckner_margin(v, Sign::plus, 1, x), -kTight);
  // unit: both entropies vanish, bound is -log(delta/kappa) < 0
  EXPECT_GT(hirschman_beckner_margin(v, Sign::plus, 1, one(t, 1)), 0.0);
}

TEST(Harmonic, YoungAdmissibility) {
  EXPECT_TRUE(young_admissible(1, 1, 1));
  EXPECT_TRUE(young_admissible(2, 2, kInf));
  EXPECT_TRUE(young_admissible(2, 1, 2));
  EXPECT_TRUE(young_admissible(kInf, 1, kInf));
  EXPECT_FALSE(young_admissible(2, 2, 2));
  TowerView v = base(c_in_m2());
  Mat x = one(c_in_m2(), 1);
  EXPECT_THROW(young_ratio(v, Sign::plus, x, x, 2, 2, 2), Error);
}

TEST(Harmonic, YoungOnBothBoxes) {
  for (const Tower* t : {&c_in_m2(), &m2_in_m4()}) {
    TowerView v = base(*t);
    Rng rng(43);
    const std::vector<std::array<double, 3>> triples{{1, 1, 1}, {2, 2, kInf}, {2, 1, 2}, {kInf, 1, kInf}};
    Mat e1 = t->jones_at(1, 1);
    EXPECT_GE(young_margin(v, Sign::plus, e1, e1, 1, 1, 1), -1e-9);
    for (auto& [p, q, r] : triples) {
      EXPECT_GE(young_margin(v, Sign::plus, one(*t, 1), one(*t, 1), p, q, r), -1e-9);
      for (int i = 0; i < 10; ++i) {
        Mat x = v.plus_box(1).random(rng), y = v.plus_box(1).random(rng);
        EXPECT_GE(young_margin(v, Sign::plus, x, y, p, q, r), -1e-9);
        Mat w = v.minus_box(2).random(rng), z = v.minus_box(2).random(rng);
        EXPECT_GE(young_margin(v, Sign::minus, w, z, p, q, r), -1e-9);
      }
    }
    EXPECT_NEAR(young_constant(v, Sign::plus), delta(v) / kappa(v, Sign::plus, 0), kTight);
  }
}

TEST(Entropy, AlgebraEntropyOracles) {
  EXPECT_NEAR(algebra_entropy(MultiMatrixAlgebra::full(1)), 0.0, kTight);
  for (int d : {2, 3, 5}) EXPECT_NEAR(algebra_entropy(MultiMatrixAlgebra::full(d)), std::log(d), kTight);
  MultiMatrixAlgebra diag = MultiMatrixAlgebra::block_diagonal({1, 1}, {0.5, 0.5});
  EXPECT_NEAR(algebra_entropy(diag), std::log(2.0), kTight);
  EXPECT_NEAR(center_entropy(diag), std::log(2.0), kTight);
  EXPECT_NEAR(center_entropy(MultiMatrixAlgebra::full(4)), 0.0, kTight);
  EXPECT_NEAR(center_entropy(c_in_m2().relative_commutant(0, 2)), 0.0, kTight);
}

TEST(Entropy, InclusionMatrixOracles) {
  MultiMatrixAlgebra m3 = MultiMatrixAlgebra::full(3);
  MultiMatrixAlgebra scalars = generate_algebra({identity(3)}, &m3);
  InclusionMatrix g = inclusion_matrix(scalars, m3);
  ASSERT_EQ(g.g.rows(), 1);
  EXPECT_EQ(g.g(0, 0), 3);
  EXPECT_TRUE(g.connected);
  EXPECT_LT(g.dimension_residual, kTight);
  EXPECT_LT(g.trace_residual, kTight);

  MultiMatrixAlgebra diag = MultiMatrixAlgebra::block_diagonal({2, 3}, {0.2, 0.2});
  InclusionMatrix self = inclusion_matrix(diag, diag);
  EXPECT_EQ(self.g, Eigen::MatrixXi::Identity(2, 2));
  EXPECT_FALSE(self.connected);

  InclusionMatrix chain = commutant_inclusion(base(c_in_m2()), 1, 2);
  ASSERT_EQ(chain.g.size(), 1);
  EXPECT_EQ(chain.g(0, 0), 2);
  EXPECT_LT(chain.trace_residual, kTight);
  EXPECT_THROW(inclusion_matrix(scalars, MultiMatrixAlgebra::full(2)), Error);
}

TEST(Entropy, DepthDetection) {
  for (const Tower* t : {&c_in_m2(), &m2_in_m4()}) {
    Rng rng(44);
    DepthResult d = depth_detect(*t, 4, rng);
    EXPECT_TRUE(d.finite);
    EXPECT_GE(d.depth, 1);
    EXPECT_LE(d.depth, 2);
    EXPECT_EQ(d.span_ranks.back(), d.target_dims.back());
  }
  Rng rng(45);
  DepthResult d = depth_detect(degenerate(), 3, rng);
  EXPECT_TRUE(d.finite);
  EXPECT_EQ(d.depth, 1);
}

TEST(Entropy, GrowthOfCommutantEntropy) {
  EntropyGrowth g = entropy_growth(c_in_m2(), 3);
  ASSERT_EQ(g.values.size(), 4u);
  for (int n = 0; n <= 3; ++n) EXPECT_NEAR(g.values[n], 2.0 * n * std::log(2.0), kTight);
  EXPECT_NEAR(g.slope, std::log(4.0), 1e-6);
  EXPECT_NEAR(entropy_growth(m2_in_m4(), 3).slope, std::log(4.0), 1e-6);
  EntropyGrowth z = entropy_growth(degenerate(), 2);
  for (double h : z.values) EXPECT_NEAR(h, 0.0, kTight);
  EXPECT_NEAR(z.slope, 0.0, kTight);
  EXPECT_THROW(entropy_growth(c_in_m2(), 0), Error);
  EXPECT_THROW(entropy_growth(c_in_m2(), 9), Error);
}

TEST(Entropy, LeastSquaresSlope) {
  EXPECT_NEAR(least_squares_slope({0, 1, 2, 3}, {1, 3, 5, 7}), 2.0, kTight);
  EXPECT_EQ(least_squares_slope({1, 1}, {0, 5}), 0.0);
}

TEST(Entropy, ShiftEntropyIsLogIndex) {
  for (const Tower* t : {&c_in_m2(), &m2_in_m4()}) {
    Rng rng(46);
    DepthResult d = depth_detect(*t, 4, rng);
    ShiftEntropy s = shift_entropy(*t, d, 3);
    EXPECT_NEAR(s.beta, 4.0, 1e-10);
    EXPECT_LT(s.pf_residual, 1e-10);
    EXPECT_LT(s.trace_vector_residual, 1e-10);
    EXPECT_NEAR(s.log_beta, std::log(4.0), 1e-10);
    EXPECT_NEAR(s.implied_relative, 2.0 * std::log(4.0), 1e-10);
    EXPECT_NEAR(s.growth_slope, s.log_beta, 1e-6);
    EXPECT_TRUE(s.transpose_consistent);
  }
  Rng rng(47);
  DepthResult d = depth_detect(degenerate(), 3, rng);
  ShiftEntropy s = shift_entropy(degenerate(), d, 2);
  EXPECT_NEAR(s.log_beta, 0.0, kTight);
  EXPECT_THROW(shift_entropy(degenerate(), DepthResult{}, 2), Error);
}

TEST(PartitionEntropy, DiagonalUnitsOverScalars) {
  MultiMatrixAlgebra m2 = MultiMatrixAlgebra::full(2);
  MultiMatrixAlgebra scalars = generate_algebra({identity(2)}, &m2);
  Partition g{{matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)}};
  EXPECT_NEAR(partition_relative_entropy(m2, scalars, g), std::log(2.0), kTight);
}

TEST(PartitionEntropy, TrivialCasesVanish) {
  Rng rng(48);
  MultiMatrixAlgebra m4 = MultiMatrixAlgebra::full(4);
  std::vector<Mat> gens;
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) gens.push_back(kron(matrix_unit(2, i, j), identity(2)));
  MultiMatrixAlgebra n = generate_algebra(gens, &m4);
  EXPECT_NEAR(partition_relative_entropy(m4, n, Partition{{identity(4)}}), 0.0, kTight);
  Partition g{spectral_projections(4, rng)};
  EXPECT_NEAR(partition_relative_entropy(n, n, g), 0.0, kTight);
  EXPECT_NEAR(partition_relative_entropy(m4, m4, g), 0.0, kTight);
}

TEST(PartitionEntropy, MonotoneUnderRefinement) {
  Rng rng(49);
  MultiMatrixAlgebra m4 = MultiMatrixAlgebra::full(4);
  std::vector<Mat> gens;
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) gens.push_back(kron(matrix_unit(2, i, j), identity(2)));
  MultiMatrixAlgebra n = generate_algebra(gens, &m4);
  for (int s = 0; s < 20; ++s) {
    std::vector<Mat> fine = spectral_projections(4, rng);
    Partition coarse{{fine[0] + fine[1], fine[2] + fine[3]}};
    EXPECT_GE(partition_relative_entropy(m4, n, Partition{fine}), partition_relative_entropy(m4, n, coarse) - 1e-12);
  }
}

TEST(PartitionEntropy, RejectsNonPartitions) {
  MultiMatrixAlgebra m2 = MultiMatrixAlgebra::full(2);
  EXPECT_THROW(partition_relative_entropy(m2, m2, Partition{{matrix_unit(2, 0, 0)}}), Error);
  EXPECT_THROW(partition_relative_entropy(m2, m2, Partition{{2.0 * identity(2), -identity(2)}}), Error);
}
