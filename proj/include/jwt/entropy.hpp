#pragma once

#include "jwt/fourier.hpp"
#include "jwt/perron.hpp"

#include <optional>

namespace jwt {

// -sum_k n_k s_k log s_k: von Neumann entropy of the trace density in the minimal representation.
inline double algebra_entropy(const MultiMatrixAlgebra& q) {
  double h = 0.0;
  for (auto& b : q.blocks()) h += b.dim * eta(b.weight);
  return h;
}

inline double center_entropy(const MultiMatrixAlgebra& q) {
  double h = 0.0;
  for (auto& b : q.blocks()) h += eta(b.dim * b.weight);
  return h;
}

struct InclusionMatrix {
  Eigen::MatrixXi g;  // rows: blocks of the subalgebra, cols: blocks of the algebra
  bool connected = false;
  double dimension_residual = 0.0;  // |n_R - G^t n_Q|
  double trace_residual = 0.0;      // |s_Q - G s_R|

  RealMat real() const { return g.cast<double>(); }
};

// Multiplicities of the blocks of q in the blocks of r; both must share the ambient space.
inline InclusionMatrix inclusion_matrix(const MultiMatrixAlgebra& q, const MultiMatrixAlgebra& r, double tol = 1e-6) {
  if (q.ambient_dim() != r.ambient_dim()) throw Error(ErrorKind::invalid_argument, "inclusion matrix needs a common ambient space");
  InclusionMatrix out;
  out.g.resize(q.num_blocks(), r.num_blocks());
  for (int k = 0; k < q.num_blocks(); ++k) {
    auto cut = r.to_blocks(q.minimal_projection(k));
    for (int j = 0; j < r.num_blocks(); ++j) {
      double t = cut[j].trace().real();
      long m = std::lround(t);
      if (std::abs(t - double(m)) > tol || m < 0)
        throw Error(ErrorKind::not_subalgebra, "minimal projection does not cut down to a projection");
      out.g(k, j) = int(m);
    }
  }
  RealMat gr = out.real();
  RealVec nq(q.num_blocks()), sq(q.num_blocks()), nr(r.num_blocks()), sr(r.num_blocks());
  for (int k = 0; k < q.num_blocks(); ++k) nq[k] = q.block(k).dim, sq[k] = q.block(k).weight;
  for (int j = 0; j < r.num_blocks(); ++j) nr[j] = r.block(j).dim, sr[j] = r.block(j).weight;
  out.dimension_residual = (nr - gr.transpose() * nq).cwiseAbs().maxCoeff();
  out.trace_residual = (sq - gr * sr).cwiseAbs().maxCoeff();
  RealMat bip = RealMat::Zero(gr.rows() + gr.cols(), gr.rows() + gr.cols());
  bip.topRightCorner(gr.rows(), gr.cols()) = gr;
  bip.bottomLeftCorner(gr.cols(), gr.rows()) = gr.transpose();
  out.connected = irreducible(bip);
  return out;
}

// A' cap A_i inside A' cap A_j (i <= j), both at level j of the view.
inline InclusionMatrix commutant_inclusion(const TowerView& v, int i, int j) {
  MultiMatrixAlgebra q = lifted_algebra(v, v.minus_box(i), i, j);
  return inclusion_matrix(q, v.minus_box(j));
}

struct DepthResult {
  bool finite = false;
  int depth = -1;  // smallest n with (B' cap A_{n-1}) e_n (B' cap A_{n-1}) = B' cap A_n
  std::vector<long> span_ranks;
  std::vector<long> target_dims;
};

// Rank test on random products x e_n y, x, y in B' cap A_{n-1}.
inline DepthResult depth_detect(const Tower& t, int max_n, Rng& rng) {
  TowerView v(t, 0);
  DepthResult out;
  for (int n = 1; n <= std::min(max_n, t.max_level()); ++n) {
    const MultiMatrixAlgebra& src = v.plus_box(n - 1);
    const MultiMatrixAlgebra& dst = v.plus_box(n);
    const long dim = dst.dimension();
    Mat e = t.jones(n);
    Mat coords(dim, dim + 8);
    for (long s = 0; s < coords.cols(); ++s) {
      Mat z = v.lift(src.random(rng), n - 1, n) * e * v.lift(src.random(rng), n - 1, n);
      long row = 0;
      for (auto& b : dst.to_blocks(z))
        for (long c = 0; c < b.cols(); ++c)
          for (long r = 0; r < b.rows(); ++r) coords(row++, s) = b(r, c);
    }
    Eigen::ColPivHouseholderQR<Mat> qr(coords);
    qr.setThreshold(1e-9);
    const long rank = qr.rank();
    out.span_ranks.push_back(rank);
    out.target_dims.push_back(dim);
    if (rank == dim) {
      out.finite = true;
      out.depth = n;
      break;
    }
  }
  return out;
}

struct EntropyGrowth {
  std::vector<double> values;  // H_tr(A' cap A_{2n}), n = 0..N
  double slope = 0.0;
  int fit_points = 0;
};

inline double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = double(xs.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= n, my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
  return sxx == 0.0 ? 0.0 : sxy / sxx;
}

// Slope fitted over the last ceil(N/2) points (at least two).
inline EntropyGrowth entropy_growth(const Tower& t, int big_n) {
  if (big_n < 1) throw Error(ErrorKind::invalid_argument, "entropy growth needs N >= 1");
  if (2 * big_n > t.max_level()) throw Error(ErrorKind::dimension_cap, "entropy growth needs level " + std::to_string(2 * big_n));
  EntropyGrowth out;
  for (int n = 0; n <= big_n; ++n) out.values.push_back(algebra_entropy(t.relative_commutant(0, 2 * n)));
  out.fit_points = std::max(2, (big_n + 1) / 2);
  std::vector<double> xs, ys;
  for (int n = big_n + 1 - out.fit_points; n <= big_n; ++n) xs.push_back(n), ys.push_back(out.values[n]);
  out.slope = least_squares_slope(xs, ys);
  return out;
}

struct ShiftEntropy {
  double beta = 0.0;
  double log_beta = 0.0;
  double pf_residual = 0.0;       // |G G^t v - beta v| for the PF vector
  double trace_vector_residual = 0.0;  // |G G^t s - beta s| / |s| for the computed trace vector
  double growth_slope = 0.0;
  double implied_relative = 0.0;  // 2 log beta, derived from the theorem, not computed
  int level = 0;                  // 2k at which G is read
  InclusionMatrix g;
  bool transpose_consistent = false;  // inclusion at 2k+1 in 2k+2 equals G^t
};

// log of the PF eigenvalue of G G^t, G the inclusion of A' cap A_{2k} in A' cap A_{2k+1} past the depth.
inline ShiftEntropy shift_entropy(const Tower& t, const DepthResult& depth, int growth_n) {
  if (!depth.finite) throw Error(ErrorKind::invalid_argument, "shift entropy needs finite depth");
  TowerView v(t, 0);
  ShiftEntropy out;
  int two_k = 0;
  while (two_k + 1 < depth.depth - 1) two_k += 2;
  if (two_k + 2 > t.max_level()) throw Error(ErrorKind::dimension_cap, "shift entropy needs level " + std::to_string(two_k + 2));
  out.level = two_k;
  out.g = commutant_inclusion(v, two_k, two_k + 1);
  InclusionMatrix next = commutant_inclusion(v, two_k + 1, two_k + 2);
  out.transpose_consistent = next.g.rows() == out.g.g.cols() && next.g.cols() == out.g.g.rows() &&
                             next.g == out.g.g.transpose();
  RealMat ggt = out.g.real() * out.g.real().transpose();
  PerronPair pf = pf_eigen(ggt);
  out.beta = pf.eigenvalue;
  out.log_beta = std::log(pf.eigenvalue);
  out.pf_residual = pf.residual;
  const MultiMatrixAlgebra& p = t.relative_commutant(0, two_k);
  RealVec s(p.num_blocks());
  for (int k = 0; k < p.num_blocks(); ++k) s[k] = p.block(k).weight;
  out.trace_vector_residual = (ggt * s - out.beta * s).norm() / s.norm();
  out.growth_slope = entropy_growth(t, growth_n).slope;
  out.implied_relative = 2.0 * out.log_beta;
  return out;
}

struct Partition {
  std::vector<Mat> parts;
};

// Positivity and sum-to-one residuals of a partition of unity.
inline std::pair<double, double> partition_residuals(const Partition& g) {
  if (g.parts.empty()) return {0.0, 1.0};
  double neg = 0.0;
  Mat sum = Mat::Zero(g.parts[0].rows(), g.parts[0].cols());
  for (auto& w : g.parts) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(w), Eigen::EigenvaluesOnly);
    neg = std::max(neg, -es.eigenvalues().minCoeff());
    neg = std::max(neg, (w - w.adjoint()).norm());
    sum += w;
  }
  return {neg, (sum - identity(sum.rows())).norm()};
}

// H_gamma(M|N) = sum_j tr eta E_N(w_j) - tr eta E_M(w_j); a lower bound on H(M|N).
inline double partition_relative_entropy(const MultiMatrixAlgebra& m, const MultiMatrixAlgebra& n, const Partition& g,
                                         double tol = kDefaultTol) {
  auto [neg, sum] = partition_residuals(g);
  if (neg > tol || sum > tol * std::max<double>(1.0, double(g.parts.size())))
    throw Error(ErrorKind::invalid_argument, "not a partition of unity");
  double h = 0.0;
  for (auto& w : g.parts) h += entropy_functional(n.expect(w), n, tol) - entropy_functional(m.expect(w), m, tol);
  return h;
}

}  // namespace jwt
