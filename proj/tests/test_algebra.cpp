#include "support.hpp"

#include <Eigen/LU>

using namespace jwt;
using namespace jwt::testing;

namespace {

std::vector<Mat> units_of(long n) {
  std::vector<Mat> out;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out.push_back(matrix_unit(n, i, j));
  return out;
}

// Dimension of {x : [g, x] = 0 for all g} by dense kernel, independent of the library's solver.
long brute_commutant_dim(const std::vector<Mat>& gens, long n) {
  Mat c(long(gens.size()) * n * n, n * n);
  for (long k = 0; k < n * n; ++k) {
    Mat x = Mat::Zero(n, n);
    x(k % n, k / n) = 1.0;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Mat d = gens[g] * x - x * gens[g];
      c.block(long(g) * n * n, k, n * n, 1) = Eigen::Map<const Vec>(d.data(), n * n);
    }
  }
  Eigen::FullPivLU<Mat> lu(c);
  lu.setThreshold(1e-10);
  return lu.dimensionOfKernel();
}

// ||x||_p^p from eigenvalues of x*x per block, bypassing the library's norm code.
double eigen_p_norm(const Mat& x, const MultiMatrixAlgebra& q, double p) {
  double acc = 0.0, mx = 0.0;
  auto bs = q.to_blocks(x);
  for (int k = 0; k < q.num_blocks(); ++k) {
    Eigen::SelfAdjointEigenSolver<Mat> es(bs[k].adjoint() * bs[k], Eigen::EigenvaluesOnly);
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
      double s = std::sqrt(std::max(0.0, es.eigenvalues()[i]));
      acc += q.block(k).weight * std::pow(s, p);
      mx = std::max(mx, s);
    }
  }
  return std::isinf(p) ? mx : std::pow(acc, 1.0 / p);
}

MultiMatrixAlgebra diag_m2_m3() { return MultiMatrixAlgebra::block_diagonal({2, 3}, {0.2, 0.2}); }

}  // namespace

TEST(MultiMatrix, CommutantOfFullAlgebraIsScalars) {
  MultiMatrixAlgebra m3 = MultiMatrixAlgebra::full(3);
  MultiMatrixAlgebra c = commutant(units_of(3), m3);
  EXPECT_EQ(c.block_dims(), std::vector<int>{1});
  EXPECT_EQ(c.dimension(), 1);
}

TEST(MultiMatrix, CommutantOfUnitIsEverything) {
  MultiMatrixAlgebra m3 = MultiMatrixAlgebra::full(3);
  MultiMatrixAlgebra c = commutant({identity(3)}, m3);
  EXPECT_EQ(c.dimension(), 9);
}

TEST(MultiMatrix, CommutantOfAmplifiedM2MatchesBruteForce) {
  std::vector<Mat> gens;
  for (auto& u : units_of(2)) gens.push_back(kron(u, identity(2)));
  MultiMatrixAlgebra c = commutant(gens, MultiMatrixAlgebra::full(4));
  EXPECT_EQ(c.block_dims(), std::vector<int>{2});
  EXPECT_EQ(c.dimension(), brute_commutant_dim(gens, 4));
  for (auto& u : units_of(2)) EXPECT_LT(c.membership_residual(kron(identity(2), u)), kTight);
}

TEST(MultiMatrix, BlockDiagonalGeneratorsDecompose) {
  std::vector<Mat> gens;
  for (auto& u : units_of(2)) {
    Mat g = Mat::Zero(5, 5);
    g.topLeftCorner(2, 2) = u;
    gens.push_back(g);
  }
  for (auto& u : units_of(3)) {
    Mat g = Mat::Zero(5, 5);
    g.bottomRightCorner(3, 3) = u;
    gens.push_back(g);
  }
  MultiMatrixAlgebra q = generate_algebra(gens).canonical();
  EXPECT_EQ(q.block_dims(), (std::vector<int>{2, 3}));
  EXPECT_EQ(q.dimension(), 13);
}

TEST(MultiMatrix, DiagonalAlgebraHasTwoAbelianBlocks) {
  MultiMatrixAlgebra q = generate_algebra({matrix_unit(2, 0, 0)});
  EXPECT_EQ(q.block_dims(), (std::vector<int>{1, 1}));
}

TEST(MultiMatrix, ExpectationOntoScalarsIsTrace) {
  Rng rng(3);
  MultiMatrixAlgebra m4 = MultiMatrixAlgebra::full(4);
  MultiMatrixAlgebra scalars = generate_algebra({identity(4)}, &m4);
  Mat x = m4.random(rng);
  EXPECT_LT(rel_diff(scalars.expect(x), m4.trace(x) * identity(4)), kTight);
}

TEST(MultiMatrix, ExpectationIsIdempotentAndTracePreserving) {
  Rng rng(4);
  MultiMatrixAlgebra amb = diag_m2_m3();
  std::vector<Mat> gens;
  for (auto& u : units_of(2)) {
    Mat g = Mat::Zero(5, 5);
    g.topLeftCorner(2, 2) = u;
    gens.push_back(g);
  }
  MultiMatrixAlgebra sub = generate_algebra(gens, &amb);
  for (int i = 0; i < 20; ++i) {
    Mat x = amb.random(rng);
    Mat ex = sub.expect(x);
    EXPECT_LT(rel_diff(sub.expect(ex), ex), kTight);
    EXPECT_LT(std::abs(sub.trace(ex) - amb.trace(x)), kTight * (1.0 + x.norm()));
    EXPECT_LT(sub.membership_residual(ex), kTight * (1.0 + ex.norm()));
  }
}

TEST(MultiMatrix, TraceIsFaithfulPositiveAndTracial) {
  Rng rng(5);
  MultiMatrixAlgebra q = diag_m2_m3();
  for (auto& b : q.blocks()) EXPECT_GT(b.weight, 0.0);
  EXPECT_NEAR(q.trace(q.unit()).real(), 1.0, kTight);
  for (int i = 0; i < 50; ++i) {
    Mat x = q.random(rng), y = q.random(rng);
    EXPECT_LT(std::abs(q.trace(x * y) - q.trace(y * x)), kTight * x.norm() * y.norm());
    cplx p = q.trace(x.adjoint() * x);
    EXPECT_GT(p.real(), 0.0);
    EXPECT_LT(std::abs(p.imag()), kTight * p.real());
  }
}

TEST(MultiMatrix, SamplingIsSeededAndInSpan) {
  MultiMatrixAlgebra q = diag_m2_m3();
  Rng a(0), b(0);
  Mat x = q.random(a), y = q.random(b);
  EXPECT_EQ(x, y);
  EXPECT_LT(q.membership_residual(x), kTight * x.norm());
}

TEST(MultiMatrix, GaussianSecondMomentMatchesDimension) {
  MultiMatrixAlgebra q = diag_m2_m3();
  Rng rng(11);
  const int n = 1000;
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    Mat x = q.random(rng);
    mean += q.trace(x.adjoint() * x).real() / n;
  }
  // coordinates are unit-variance in a tr-orthonormal basis of dimension 13
  EXPECT_NEAR(mean, double(q.dimension()), 0.1 * q.dimension());
}

TEST(PNorm, UnitHasNormOne) {
  MultiMatrixAlgebra q = diag_m2_m3();
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) EXPECT_NEAR(p_norm(q.unit(), q, p), 1.0, kTight);
}

TEST(PNorm, AgreesWithEigenvalueOracle) {
  Rng rng(6);
  MultiMatrixAlgebra q = diag_m2_m3();
  for (int i = 0; i < 20; ++i) {
    Mat x = q.random(rng);
    for (double p : {1.0, 2.0, 3.0, 4.0, kInf}) EXPECT_NEAR(p_norm(x, q, p), eigen_p_norm(x, q, p), 1e-9 * eigen_p_norm(x, q, p));
  }
}

TEST(PNorm, HandlesRepeatedSingularValues) {
  // Blocks with clustered singular values: the case that breaks divide-and-conquer SVD in Eigen 3.4.0.
  MultiMatrixAlgebra q = MultiMatrixAlgebra::full(16);
  Mat x = Mat::Zero(16, 16);
  for (int i = 0; i < 16; ++i) x(i, (i + 3) % 16) = i < 8 ? 6.67 : 2.29;
  Rng rng(7);
  Mat u = q.random(rng).householderQr().householderQ();
  Mat y = u * x * u.adjoint();
  for (double p : {1.0, 3.0, kInf}) EXPECT_NEAR(p_norm(y, q, p), eigen_p_norm(y, q, p), 1e-10 * eigen_p_norm(y, q, p));
}

TEST(PNorm, HolderAndMonotone) {
  Rng rng(8);
  MultiMatrixAlgebra q = diag_m2_m3();
  for (int i = 0; i < 50; ++i) {
    Mat x = q.random(rng), y = q.random(rng);
    for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
      double qq = conjugate_exponent(p);
      EXPECT_LE(std::abs(q.trace(x * y)), p_norm(x, q, p) * p_norm(y, q, qq) * (1 + 1e-12));
    }
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 3.0, 8.0, kInf}) {
      double v = p_norm(x, q, p);
      EXPECT_GE(v, prev * (1 - 1e-12));
      prev = v;
    }
  }
}

TEST(PNorm, RejectsExponentBelowOne) {
  MultiMatrixAlgebra q = MultiMatrixAlgebra::full(2);
  EXPECT_THROW(p_norm(q.unit(), q, 0.5), Error);
}

TEST(Support, UnitAndInvertibleElementsHaveFullSupport) {
  Rng rng(9);
  MultiMatrixAlgebra q = diag_m2_m3();
  EXPECT_NEAR(support_size(q.unit(), q), 1.0, kTight);
  EXPECT_NEAR(support_size(q.random(rng), q), 1.0, kTight);
  EXPECT_NEAR(support_size(q.minimal_projection(1), q), q.block(1).weight, kTight);
}

TEST(EntropyFunctional, ProjectionsHaveZeroEntropy) {
  MultiMatrixAlgebra q = diag_m2_m3();
  EXPECT_NEAR(entropy_functional(q.unit(), q), 0.0, kTight);
  EXPECT_NEAR(entropy_functional(q.central_projection(0), q), 0.0, kTight);
}

TEST(EntropyFunctional, HalfDensityOnM2) {
  // normalized trace: tr(eta(diag(1/2,1/2))) = eta(1/2) = log(2)/2
  MultiMatrixAlgebra m2 = MultiMatrixAlgebra::full(2);
  EXPECT_NEAR(entropy_functional(0.5 * identity(2), m2), 0.5 * std::log(2.0), kTight);
  EXPECT_THROW(entropy_functional(-identity(2), m2), Error);
}

TEST(EntropyFunctional, MatchesEigenvalueOracleOnPositiveElements) {
  Rng rng(10);
  MultiMatrixAlgebra q = diag_m2_m3();
  for (int i = 0; i < 20; ++i) {
    Mat x = q.random(rng);
    Mat y = x.adjoint() * x;
    double oracle = 0.0;
    auto bs = q.to_blocks(y);
    for (int k = 0; k < q.num_blocks(); ++k) {
      Eigen::SelfAdjointEigenSolver<Mat> es(bs[k]);
      for (long j = 0; j < es.eigenvalues().size(); ++j) oracle += q.block(k).weight * eta(es.eigenvalues()[j]);
    }
    EXPECT_NEAR(entropy_functional(y, q), oracle, 1e-9 * (1 + std::abs(oracle)));
  }
}

TEST(Perron, ScalarMatrix) {
  RealMat m(1, 1);
  m << 4;
  PerronPair p = pf_eigen(m);
  EXPECT_NEAR(p.eigenvalue, 4.0, kTight);
  EXPECT_NEAR(p.vector[0], 1.0, kTight);
}

TEST(Perron, SymmetricTwoByTwo) {
  RealMat m(2, 2);
  m << 2, 1, 1, 2;
  PerronPair p = pf_eigen(m);
  EXPECT_NEAR(p.eigenvalue, 3.0, kTight);
  EXPECT_NEAR(p.vector[0], 1 / std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(p.vector[1], 1 / std::sqrt(2.0), 1e-9);
  EXPECT_LT(p.residual, kTight);
}

TEST(Perron, RandomPositiveMatchesEigenSolver) {
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    RealMat m(5, 5);
    for (long i = 0; i < 5; ++i)
      for (long j = 0; j < 5; ++j) m(i, j) = rng.uniform();
    PerronPair p = pf_eigen(m);
    Eigen::EigenSolver<RealMat> es(m);
    double top = es.eigenvalues().real().maxCoeff();
    EXPECT_NEAR(p.eigenvalue, top, 1e-9 * top);
    EXPECT_TRUE((p.vector.array() > 0).all());
  }
}

TEST(Perron, RejectsReducibleAndNegative) {
  RealMat r(2, 2);
  r << 1, 0, 0, 1;
  try {
    pf_eigen(r);
    FAIL() << "reducible matrix accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::reducible);
  }
  RealMat n(2, 2);
  n << 1, -1, 1, 1;
  EXPECT_THROW(pf_eigen(n), Error);
}

TEST(Tower, IndexOfTensorModels) {
  for (const Tower* t : {&c_in_m2(), &m2_in_m4()}) {
    EXPECT_NEAR(t->scalars().index, 4.0, kTight);
    EXPECT_NEAR(t->tau(), 0.25, kTight);
    EXPECT_NEAR(t->tau() * t->scalars().index, 1.0, kTight);
    const TowerScalars& s = t->scalars();
    for (int k = 1; k <= 3; ++k)
      for (int n = 1; n <= 3; ++n) EXPECT_NEAR(s.c(k + 1, n), std::pow(s.tau, k - n) * s.c(k, n), 1e-9 * s.c(k + 1, n));
  }
  const Tower& d = degenerate();
  EXPECT_NEAR(d.scalars().index, 1.0, kTight);
  ASSERT_EQ(d.quasi_basis().size(), 1u);
  EXPECT_LT(rel_diff(d.quasi_basis()[0], identity(d.ambient(0))), kTight);
}

TEST(Tower, QuasiBasisOfScalarsInM2) {
  const Tower& t = c_in_m2();
  const auto& qb = t.quasi_basis();
  ASSERT_EQ(qb.size(), 4u);
  Mat sum = Mat::Zero(2, 2), sum_e = Mat::Zero(4, 4);
  for (auto& l : qb) {
    sum += l * l.adjoint();
    Mat ll = t.lift(l, 0, 1);
    sum_e += ll * t.jones(1) * ll.adjoint();
  }
  EXPECT_LT(rel_diff(sum, 4.0 * identity(2)), kTight);
  EXPECT_LT(rel_diff(sum_e, identity(4)), kTight);
  // reconstruction on a basis of A
  for (auto& x : t.algebra(0).basis()) {
    Mat acc = Mat::Zero(2, 2);
    for (auto& l : qb) acc += l * t.lift(t.expect(0, l.adjoint() * x), -1, 0);
    EXPECT_LT(rel_diff(acc, x), kTight);
  }
}

TEST(Tower, LevelDimensionsGrowByIndex) {
  const Tower& t = c_in_m2();
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(t.algebra(n).block_dims(), std::vector<int>{1 << (n + 1)});
  EXPECT_EQ(t.ambient(1), 4);
  EXPECT_EQ(t.ambient(2), 8);
}

TEST(Tower, JonesProjectionsAndTemperleyLieb) {
  for (const Tower* t : {&c_in_m2(), &m2_in_m4()}) {
    const double tau = t->tau();
    for (int n = 1; n <= 5; ++n) {
      Mat e = t->jones(n);
      EXPECT_LT(rel_diff(e * e, e), kTight);
      EXPECT_LT(rel_diff(e.adjoint(), e), kTight);
      EXPECT_LT(rel_diff(t->expect(n, e), tau * identity(t->ambient(n - 1))), kTight);
      if (n >= 2) {
        Mat ep = t->jones_at(n - 1, n);
        EXPECT_LT(rel_diff(e * ep * e, tau * e), kTight);
        EXPECT_LT(rel_diff(ep * e * ep, tau * ep), kTight);
      }
      for (int i = 1; i + 2 <= n; ++i) {
        Mat ei = t->jones_at(i, n);
        EXPECT_LT(rel_diff(ei * e, e * ei, 1.0), kTight);
      }
    }
  }
}

TEST(Tower, JonesCommutesWithLevelTwoBelow) {
  Rng rng(13);
  const Tower& t = m2_in_m4();
  for (int n = 1; n <= 5; ++n) {
    Mat x = t.lift(t.algebra(n - 2).random(rng), n - 2, n);
    EXPECT_LT(rel_diff(x * t.jones(n), t.jones(n) * x, x.norm()), kTight);
  }
}

TEST(Tower, MarkovPropertyAndTraceRestriction) {
  Rng rng(14);
  for (const Tower* t : {&c_in_m2(), &m2_in_m4()}) {
    for (int n = 1; n <= 5; ++n) {
      for (int s = 0; s < 10; ++s) {
        Mat x = t->algebra(n - 1).random(rng);
        Mat xl = t->lift(x, n - 1, n);
        double scale = p_norm(x, t->algebra(n - 1), 2);
        EXPECT_LT(std::abs(t->trace(n, xl * t->jones(n)) - t->tau() * t->trace(n - 1, x)), kTight * scale);
        EXPECT_LT(std::abs(t->trace(n, xl) - t->trace(n - 1, x)), kTight * scale);
      }
    }
  }
}

TEST(Tower, TraceOfFirstJonesOnCommutant) {
  Rng rng(15);
  const Tower& t = m2_in_m4();
  for (int n = 1; n <= 4; ++n) {
    const auto& q = t.relative_commutant(0, n);
    for (int s = 0; s < 10; ++s) {
      Mat x = q.random(rng);
      double scale = p_norm(x, t.algebra(n), 2);
      EXPECT_LT(std::abs(t.trace(n, x * t.jones_at(1, n)) - t.tau() * t.trace(n, x)), kTight * scale);
    }
  }
}

TEST(Tower, PushdownLemma) {
  Rng rng(16);
  const Tower& t = c_in_m2();
  for (int n = 1; n <= 4; ++n) {
    Mat e = t.jones(n + 1);
    for (int s = 0; s < 5; ++s) {
      Mat x = t.algebra(n + 1).random(rng);
      Mat xe = x * e;
      Mat pushed = t.lift(t.expect(n + 1, xe), n, n + 1) * e / t.tau();
      EXPECT_LT(rel_diff(pushed, xe), kTight);
    }
  }
}

TEST(Tower, WordsAndImplementers) {
  const Tower& t = c_in_m2();
  for (int n = 1; n <= 5; ++n) {
    EXPECT_LT(rel_diff(t.v_word(n, n, n), t.jones(n)), kTight);
    for (int k = 1; k < n; ++k)
      EXPECT_LT(rel_diff(t.v_word(n, k + 1, n) * t.v_word(n, k, n).adjoint(), std::pow(t.tau(), n - k) * t.jones(n)), kTight);
  }
}

TEST(Tower, WordIdentityWithArbitraryCoefficients) {
  Rng rng(17);
  const Tower& t = c_in_m2();
  const int n = 2;
  std::vector<Mat> a;
  for (int i = 0; i <= n; ++i) a.push_back(t.lift(t.algebra(0).random(rng), 0, n));
  Mat lhs = a[0], rhs = a[0];
  for (int i = 1; i <= n; ++i) {
    lhs = lhs * t.v_word(n + 1 - i, 1, n).adjoint() * a[i];
    rhs = rhs * t.v_word(i, 1, n) * a[i];
  }
  EXPECT_LT(rel_diff(lhs, rhs), kLoose);
}

TEST(Tower, MultiStepJones) {
  const Tower& t = c_in_m2();
  EXPECT_LT(rel_diff(t.multi_step_jones(0), t.jones(1)), kTight);
  Mat e = t.multi_step_jones(1);
  Mat direct = (t.jones_at(2, 3) * t.jones_at(1, 3)) * (t.jones(3) * t.jones_at(2, 3)) / t.tau();
  EXPECT_LT(rel_diff(e, direct), kTight);
  EXPECT_LT(rel_diff(e * e, e), kTight);
  EXPECT_LT(rel_diff(e.adjoint(), e), kTight);
}

TEST(Tower, CompositeQuasiBasis) {
  const Tower& t = c_in_m2();
  auto base = t.composite_quasi_basis(0);
  ASSERT_EQ(base.size(), t.quasi_basis().size());
  auto qb = t.composite_quasi_basis(1);
  ASSERT_EQ(qb.size(), 16u);
  Mat sum = Mat::Zero(t.ambient(1), t.ambient(1));
  for (auto& l : qb) sum += l * l.adjoint();
  EXPECT_LT(rel_diff(sum, 16.0 * identity(t.ambient(1))), kLoose);
  for (auto& x : t.algebra(1).basis()) {
    Mat acc = Mat::Zero(x.rows(), x.cols());
    for (auto& l : qb) acc += l * t.lift(t.expectation_chain(0, 1, l.adjoint() * x), -1, 1);
    EXPECT_LT(rel_diff(acc, x), kLoose);
  }
}

TEST(Tower, RelativeCommutants) {
  const Tower& t = c_in_m2();
  const auto& rc = t.relative_commutant(0, 1);
  EXPECT_EQ(rc.block_dims(), std::vector<int>{2});
  EXPECT_NEAR(rc.block(0).weight, 0.5, kTight);
  EXPECT_EQ(t.relative_commutant(-1, 3).dimension(), t.algebra(3).dimension());
  // E onto A' cap A_1 of e_1 is tau
  EXPECT_LT(rel_diff(rc.expect(t.jones(1)), t.tau() * identity(t.ambient(1))), kTight);
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(t.relative_commutant(0, n).block_dims(), std::vector<int>{1 << n});
}

TEST(Tower, ExpectationChainGivesTraceOnCommutant) {
  Rng rng(18);
  const Tower& t = m2_in_m4();
  EXPECT_LT(rel_diff(t.expectation_chain(1, 1, t.jones(1)), t.expect(1, t.jones(1))), kTight);
  for (int n = 0; n <= 4; ++n) {
    const auto& q = t.relative_commutant(-1, n);
    Mat x = q.random(rng);
    Mat y = t.expectation_chain(0, n, x);
    EXPECT_LT(rel_diff(y, t.trace(n, x) * identity(y.rows()), x.norm()), kTight);
  }
  EXPECT_LT(rel_diff(t.expectation_chain(0, 1, t.jones(1)), t.tau() * identity(t.ambient(-1))), kTight);
}

TEST(Tower, ShiftedViewSharesScalarsAndQuasiBasis) {
  const Tower& t = c_in_m2();
  TowerView v = t.view(1);
  EXPECT_DOUBLE_EQ(v.tau(), t.tau());
  const auto& qb = v.quasi_basis();
  for (auto& x : v.algebra(0).basis()) {
    Mat acc = Mat::Zero(x.rows(), x.cols());
    for (auto& l : qb) acc += l * v.lift(v.expect(0, l.adjoint() * x), -1, 0);
    EXPECT_LT(rel_diff(acc, x), kLoose);
  }
  TowerView base = t.view(0);
  EXPECT_EQ(base.shift(), 0);
  EXPECT_EQ(&base.algebra(2), &t.algebra(2));
}

TEST(Tower, ExplicitInclusionMatchesTensorModel) {
  InclusionSpec s;
  s.kind = InclusionSpec::Kind::explicit_matrices;
  s.a_generators = {matrix_unit(2, 0, 0), matrix_unit(2, 0, 1), matrix_unit(2, 1, 0)};
  s.b_generators = {identity(2)};
  Tower t(s);
  t.extend_to(3);
  EXPECT_NEAR(t.scalars().index, 4.0, 1e-9);
  EXPECT_EQ(t.relative_commutant(0, 2).block_dims(), std::vector<int>{4});
  EXPECT_FALSE(t.outside_hypotheses());
}

TEST(Tower, MissingLevelIsReported) {
  const Tower& t = degenerate();
  try {
    t.algebra(t.max_level() + 1);
    FAIL() << "missing level accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::level_missing);
  }
  EXPECT_THROW(Tower(InclusionSpec::tensor(1, 0)), Error);
}

TEST(Tower, DimensionCapStopsExtension) {
  Tower t(InclusionSpec::tensor(1, 2), 64);
  try {
    t.extend_to(10);
    FAIL() << "cap not enforced";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::dimension_cap);
  }
  EXPECT_GE(t.max_level(), 1);
}
