#pragma once

#include "jwt/tower.hpp"

#include <functional>
#include <utility>

namespace jwt {

enum class Sign { plus, minus };

// plus: x in B' cap A_n (level n); minus: w in A' cap A_{n+1} (level n+1).
struct BoxElement {
  Sign sign = Sign::plus;
  int n = 0;
  Mat mat;
};

inline const MultiMatrixAlgebra& box_space(const TowerView& v, Sign s, int n) {
  return s == Sign::plus ? v.plus_box(n) : v.minus_box(n + 1);
}

inline double box_residual(const TowerView& v, const BoxElement& b) {
  return box_space(v, b.sign, b.n).membership_residual(b.mat);
}

// tau^{-(n+2)/2} E_{A' cap A_{n+1}}(x v_{n+1})
inline Mat fourier(const TowerView& v, int n, const Mat& x) {
  Mat y = v.lift(x, n, n + 1) * v.v_word(n + 1, 1, n + 1);
  return std::pow(v.tau(), -0.5 * (n + 2)) * v.minus_box(n + 1).expect(y);
}

// tau^{-(n+2)/2} E_{n+1}(w v_{n+1}^*)
inline Mat inv_fourier(const TowerView& v, int n, const Mat& w) {
  return std::pow(v.tau(), -0.5 * (n + 2)) * v.expect(n + 1, w * v.v_word(n + 1, 1, n + 1).adjoint());
}

inline BoxElement fourier(const TowerView& v, const BoxElement& x) {
  if (x.sign != Sign::plus) throw Error(ErrorKind::invalid_argument, "Fourier transform takes a positive box element");
  return {Sign::minus, x.n, fourier(v, x.n, x.mat)};
}

inline BoxElement inv_fourier(const TowerView& v, const BoxElement& w) {
  if (w.sign != Sign::minus) throw Error(ErrorKind::invalid_argument, "inverse Fourier transform takes a negative box element");
  return {Sign::plus, w.n, inv_fourier(v, w.n, w.mat)};
}

inline Mat rho_plus(const TowerView& v, int n, const Mat& x) {
  return inv_fourier(v, n, fourier(v, n, x).adjoint()).adjoint();
}

inline Mat rho_minus(const TowerView& v, int n, const Mat& w) {
  return fourier(v, n, inv_fourier(v, n, w).adjoint()).adjoint();
}

inline Mat rho_plus_power(const TowerView& v, int n, int k, const Mat& x) {
  Mat y = x;
  for (int i = 0; i < k; ++i) y = rho_plus(v, n, y);
  return y;
}

inline Mat rho_minus_power(const TowerView& v, int n, int k, const Mat& w) {
  Mat y = w;
  for (int i = 0; i < k; ++i) y = rho_minus(v, n, y);
  return y;
}

// tau^{-(n+1)} sum_i lambda_i v*_{n+1} E_{n+1}(w v*_{n+1} lambda_i^*)
inline Mat rho_minus_quasi_basis(const TowerView& v, int n, const Mat& w) {
  Mat vs = v.v_word(n + 1, 1, n + 1).adjoint();
  Mat acc = Mat::Zero(w.rows(), w.cols());
  for (auto& ll : v.quasi_basis(n + 1)) {
    Mat inner = v.expect(n + 1, w * vs * ll.adjoint());
    acc += ll * vs * v.lift(inner, n, n + 1);
  }
  return std::pow(v.tau(), -(n + 1.0)) * acc;
}

// rho^- as the conjugated positive rotation of the shifted inclusion.
inline Mat rho_minus_via_shift(const TowerView& v, int n, const Mat& w) {
  TowerView up(v.tower(), v.shift() + 1);
  return rho_plus(up, n, w.adjoint()).adjoint();
}

// Closed form of (rho^+_n)^k:
// c^k_n sum E^n_{n-k+1}(v_{n-k+1} l_1 v_{n-k+2} l_2 ... v_n l_k x) v_{n-k+1} l_k^* ... v_n l_1^*
inline Mat rho_plus_power_closed(const TowerView& v, int n, int k, const Mat& x, long max_terms = 1 << 16) {
  if (k < 1 || k > n) throw Error(ErrorKind::invalid_argument, "closed rotation power needs 1 <= k <= n");
  const auto& qb = v.quasi_basis(n);
  const long q = long(qb.size());
  if (std::pow(double(q), k) > double(max_terms)) throw Error(ErrorKind::dimension_cap, "closed-form sum too large");
  std::vector<Mat> lam, lam_star;
  for (auto& l : qb) lam.push_back(l), lam_star.push_back(l.adjoint());
  std::vector<Mat> words;
  for (int i = 1; i <= k; ++i) words.push_back(v.v_word(n - k + i, 1, n));
  const double c = std::pow(v.tau(), (k >= 2 ? 0.5 * k * (k - 1) : 0.0) - double(k) * n);
  Mat acc = Mat::Zero(x.rows(), x.cols());
  std::vector<long> idx(k, 0);
  // Depth-first over tuples, reusing prefix products.
  std::vector<Mat> left(k + 1), right(k + 1);
  left[0] = identity(x.rows());
  right[0] = identity(x.rows());
  std::function<void(int)> rec = [&](int depth) {
    if (depth == k) {
      Mat inner = v.expect_chain(n - k + 1, n, left[k] * x);
      acc += v.lift(inner, n - k, n) * right[k];
      return;
    }
    for (long i = 0; i < q; ++i) {
      idx[depth] = i;
      left[depth + 1] = left[depth] * words[depth] * lam[i];
      // right word: v_{n-k+1} l_{i_k}^* ... v_n l_{i_1}^*, built from the outside in
      right[depth + 1] = words[k - 1 - depth] * lam_star[i] * right[depth];
      rec(depth + 1);
    }
  };
  rec(0);
  return c * acc;
}

inline Mat reflection_plus(const TowerView& v, int n, const Mat& x) { return rho_plus_power(v, 2 * n + 1, n + 1, x); }

inline Mat reflection_minus(const TowerView& v, int n, const Mat& w) { return rho_minus_power(v, 2 * n + 1, n + 1, w); }

// r^+_{2n+1} as the first reflection of B in A_n: built from the composite quasi-basis and e_[-1,2n+1].
inline Mat reflection_plus_composite(const TowerView& v, int n, const Mat& x) {
  const Tower& t = v.tower();
  if (v.shift() != 0) throw Error(ErrorKind::invalid_argument, "composite reflection is built on the base view");
  const int top = 2 * n + 1;
  Mat e = t.multi_step_jones(n);
  Mat acc = Mat::Zero(x.rows(), x.cols());
  for (auto& l : t.composite_quasi_basis(n)) {
    Mat ll = t.lift(l, n, top);
    Mat inner = t.expectation_chain(n + 1, top, e * ll * x);
    acc += t.lift(inner, n, top) * e * ll.adjoint();
  }
  return std::pow(t.tau(), -(n + 1.0)) * acc;
}

inline Mat convolve_pos(const TowerView& v, int n, const Mat& x, const Mat& y) {
  return inv_fourier(v, n, fourier(v, n, y) * fourier(v, n, x));
}

inline Mat convolve_neg(const TowerView& v, int n, const Mat& w, const Mat& z) {
  return fourier(v, n, inv_fourier(v, n, z) * inv_fourier(v, n, w));
}

// The convolution of the shifted inclusion A in A_1, on A' cap A_{n+1}.
inline Mat convolve_shifted(const TowerView& v, int n, const Mat& w, const Mat& z) {
  TowerView up(v.tower(), v.shift() + 1);
  return convolve_pos(up, n, w, z);
}

// S^+_n = r^+_{2n+3} o r^+_{2n+1} on B' cap A_{2n+1}; result at level 2n+3.
inline Mat shift_plus_composed(const TowerView& v, int n, const Mat& x) {
  Mat y = reflection_plus(v, n, x);
  return reflection_plus(v, n + 1, v.lift(y, 2 * n + 1, 2 * n + 3));
}

// tau^{-(2n+2)} sum_i lambda_i v*_{2n+2} x v_{2n+3} lambda_i^*
inline Mat shift_plus_closed(const TowerView& v, int n, const Mat& x) {
  const int top = 2 * n + 3;
  Mat xl = v.lift(x, 2 * n + 1, top);
  Mat a = v.v_word(2 * n + 2, 1, top).adjoint() * xl * v.v_word(top, 1, top);
  Mat acc = Mat::Zero(a.rows(), a.cols());
  for (auto& ll : v.quasi_basis(top)) acc.noalias() += ll * a * ll.adjoint();
  return std::pow(v.tau(), -(2.0 * n + 2.0)) * acc;
}

// S^-_n = r^-_{2n+3} o r^-_{2n+1} on A' cap A_{2n+2}; result at level 2n+4.
inline Mat shift_minus_composed(const TowerView& v, int n, const Mat& w) {
  Mat y = reflection_minus(v, n, w);
  return reflection_minus(v, n + 1, v.lift(y, 2 * n + 2, 2 * n + 4));
}

inline Mat shift_minus_closed(const TowerView& v, int n, const Mat& w) {
  return shift_plus_closed(TowerView(v.tower(), v.shift() + 1), n, w);
}

inline Mat shift_S(const TowerView& v, Sign s, int n, const Mat& x) {
  return s == Sign::plus ? shift_plus_closed(v, n, x) : shift_minus_closed(v, n, x);
}

// Smallest n with 2n+2 >= level: Gamma on A' cap A_level is S^-_n.
inline int shift_index_for(int level) { return level <= 2 ? 0 : (level - 1) / 2; }

inline int canonical_shift_level(int level) { return 2 * shift_index_for(level) + 4; }

// Gamma(w) for w in A' cap A_level (view level); result at view level canonical_shift_level(level).
inline Mat canonical_shift(const TowerView& v, int level, const Mat& w) {
  const int n = shift_index_for(level);
  return shift_minus_closed(v, n, v.lift(w, level, 2 * n + 2));
}

// Gamma^k(w); returns the result and its level.
inline std::pair<Mat, int> canonical_shift_power(const TowerView& v, int level, int k, const Mat& w) {
  Mat y = w;
  int l = level;
  for (int i = 0; i < k; ++i) {
    y = canonical_shift(v, l, y);
    l = canonical_shift_level(l);
  }
  return {y, l};
}

// Frame of Gamma^k(A' cap A_level) inside the view level `at`.
inline MultiMatrixAlgebra shifted_algebra(const TowerView& v, int level, int k, int at) {
  int out = level;
  for (int i = 0; i < k; ++i) out = canonical_shift_level(out);
  if (at < out) throw Error(ErrorKind::invalid_argument, "target level below the shift image");
  return image_algebra(
      v.minus_box(level),
      [&](const Mat& x) {
        auto [y, l] = canonical_shift_power(v, level, k, x);
        return v.lift(y, l, at);
      },
      v.algebra(at));
}

inline MultiMatrixAlgebra lifted_algebra(const TowerView& v, const MultiMatrixAlgebra& q, int from, int at) {
  return image_algebra(q, [&](const Mat& x) { return v.lift(x, from, at); }, v.algebra(at));
}

struct CheckResult {
  double deviation = 0.0;
  int evaluations = 0;
};

// max over samples of |E_{A' cap A_j} E_{Gamma(A' cap A_j)} x - E_{Gamma(A' cap A_{j-2})} x| / |x|, x in P.
inline CheckResult commuting_square_check(const TowerView& v, int j, Rng& rng, int samples) {
  if (j < 2) throw Error(ErrorKind::invalid_argument, "commuting square needs j >= 2");
  const int at = canonical_shift_level(j);
  if (at > v.max_level()) throw Error(ErrorKind::level_missing, "commuting square needs level " + std::to_string(at));
  MultiMatrixAlgebra q1 = lifted_algebra(v, v.minus_box(j), j, at);
  MultiMatrixAlgebra q2 = shifted_algebra(v, j, 1, at);
  MultiMatrixAlgebra q3 = shifted_algebra(v, j - 2, 1, at);
  const MultiMatrixAlgebra& p = v.minus_box(at);
  CheckResult r;
  auto probe = [&](const Mat& x) {
    double dev = rel_diff(q1.expect(q2.expect(x)), q3.expect(x), x.norm());
    r.deviation = std::max(r.deviation, dev);
    ++r.evaluations;
  };
  for (int s = 0; s < samples; ++s) probe(p.random(rng));
  // Elements of the bigger shifted algebra and of A' cap A_j are the informative directions.
  for (int s = 0; s < std::min(samples, 10); ++s) {
    probe(q2.random(rng));
    probe(q1.random(rng));
  }
  return r;
}

struct TwoShiftResult {
  double containment = 0.0;
  double commutation = 0.0;
  double trace_factorization = 0.0;
  int k = 1;
};

// Finite-level 2-shift conditions with k_j = floor(j/2) + 1 and m = k_j.
inline TwoShiftResult two_shift_check(const TowerView& v, int j, int l, Rng& rng, int samples) {
  TwoShiftResult r;
  r.k = j / 2 + 1;
  const int m = r.k;
  const MultiMatrixAlgebra& qj = v.minus_box(j);
  // (a) Gamma^i(A' cap A_j) lies in A' cap A_{j+2m} for i <= m
  for (int i = 1; i <= m; ++i) {
    for (int s = 0; s < samples; ++s) {
      auto [y, lvl] = canonical_shift_power(v, j, i, qj.random(rng));
      MultiMatrixAlgebra target = lifted_algebra(v, v.minus_box(j + 2 * m), j + 2 * m, std::max(lvl, j + 2 * m));
      Mat yl = v.lift(y, lvl, std::max(lvl, j + 2 * m));
      r.containment = std::max(r.containment, target.membership_residual(yl));
      if (s >= 4) break;
    }
  }
  // (b) w1 Gamma^m(w2) = Gamma^m(w2) w1
  for (int s = 0; s < samples; ++s) {
    Mat w1 = qj.random(rng), w2 = qj.random(rng);
    auto [g, lvl] = canonical_shift_power(v, j, m, w2);
    Mat a = v.lift(w1, j, lvl);
    r.commutation = std::max(r.commutation, rel_diff(a * g, g * a, a.norm() * g.norm()));
  }
  // (c) tr(w3 Gamma^{l k}(w1)) = tr(w3) tr(w1), w3 in A' cap A_j (l = 1)
  for (int s = 0; s < samples; ++s) {
    Mat w1 = qj.random(rng), w3 = qj.random(rng);
    auto [g, lvl] = canonical_shift_power(v, j, l * r.k, w1);
    cplx lhs = v.algebra(lvl).trace(v.lift(w3, j, lvl) * g);
    cplx rhs = v.algebra(j).trace(w3) * v.algebra(j).trace(w1);
    double scale = std::max({std::abs(lhs), std::abs(rhs), p_norm(w1, v.algebra(j), 2) * p_norm(w3, v.algebra(j), 2)});
    r.trace_factorization = std::max(r.trace_factorization, std::abs(lhs - rhs) / scale);
  }
  return r;
}

// |S_{[n/2]}(F_n^{-1}(w)) - (F^{A in A_1}_n(w^*))^*| relative, for w in A' cap A_{n+1}.
inline double shift_odd_check(const TowerView& v, int n, const Mat& w) {
  const int k = n / 2;
  const int top = 2 * k + 3;
  Mat x = inv_fourier(v, n, w);
  Mat lhs = shift_plus_closed(v, k, v.lift(x, n, 2 * k + 1));
  TowerView up(v.tower(), v.shift() + 1);
  Mat rhs = fourier(up, n, w.adjoint()).adjoint();
  rhs = v.lift(rhs, n + 2, top);
  return rel_diff(lhs, rhs);
}

}  // namespace jwt
