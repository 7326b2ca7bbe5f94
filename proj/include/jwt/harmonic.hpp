#pragma once

#include "jwt/fourier.hpp"

#include <limits>

namespace jwt {

struct InequalityMargin {
  std::string name;
  int n = 0;
  double p = 0.0, q = 0.0, r = 0.0;
  std::string witness;
  double margin = std::numeric_limits<double>::infinity();  // relative slack, >= -tol passes
  int samples = 0;

  bool pass(double tol) const { return std::isfinite(margin) && margin >= -tol; }
  void absorb(double m) {
    margin = std::min(margin, m);
    ++samples;
  }
};

inline double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

// Smallest trace of a minimal projection: B' cap A_n for plus, A' cap A_{n+1} for minus.
inline double kappa(const TowerView& v, Sign s, int n) {
  const auto& q = box_space(v, s, n);
  double m = kInf;
  for (auto& b : q.blocks()) m = std::min(m, b.weight);
  return m;
}

inline double kappa(const TowerView& v, int n) { return std::sqrt(kappa(v, Sign::plus, n) * kappa(v, Sign::minus, n)); }

inline double delta(const TowerView& v) { return 1.0 / std::sqrt(v.tau()); }

inline const MultiMatrixAlgebra& algebra_of(const TowerView& v, Sign s, int n) {
  return s == Sign::plus ? v.algebra(n) : v.algebra(n + 1);
}

// Transform from the `s` box to the opposite one.
inline Mat transform(const TowerView& v, Sign s, int n, const Mat& x) {
  return s == Sign::plus ? fourier(v, n, x) : inv_fourier(v, n, x);
}

inline Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

// ||x||_q <= ||F x||_p <= (delta/kappa_{n-1})^{1-2/p} ||x||_q, both sides as relative slack.
inline double hausdorff_young_margin(const TowerView& v, Sign s, int n, const Mat& x, double p) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "Hausdorff-Young needs n >= 1");
  if (!(p >= 2.0)) throw Error(ErrorKind::invalid_argument, "Hausdorff-Young needs p >= 2");
  const double q = conjugate_exponent(p);
  const double xq = p_norm(x, algebra_of(v, s, n), q);
  const double fp = p_norm(transform(v, s, n, x), algebra_of(v, opposite(s), n), p);
  const double c = std::pow(delta(v) / kappa(v, n - 1), std::isinf(p) ? 1.0 : 1.0 - 2.0 / p);
  const double scale = std::max({xq, fp, 1e-300});
  return std::min(fp - xq, c * xq - fp) / scale;
}

// S(x) S(F x) >= kappa_{n-1}^2 / index, relative to the bound.
inline double donoho_stark_margin(const TowerView& v, Sign s, int n, const Mat& x, double tol = kDefaultTol) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "Donoho-Stark needs n >= 1");
  if (x.norm() == 0.0) throw Error(ErrorKind::invalid_argument, "Donoho-Stark needs a nonzero element");
  const double k = kappa(v, n - 1);
  const double bound = k * k * v.tau();
  const double lhs = support_size(x, algebra_of(v, s, n), tol) *
                     support_size(transform(v, s, n, x), algebra_of(v, opposite(s), n), tol);
  return (lhs - bound) / bound;
}

// (H(|Fx|^2) + H(|x|^2))/2 >= -||x||_2^2 (log(delta/kappa_{n-1}) + log ||x||_2^2).
inline double hirschman_beckner_margin(const TowerView& v, Sign s, int n, const Mat& x) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "Hirschman-Beckner needs n >= 1");
  if (x.norm() == 0.0) throw Error(ErrorKind::invalid_argument, "Hirschman-Beckner needs a nonzero element");
  const auto& qa = algebra_of(v, s, n);
  const auto& qb = algebra_of(v, opposite(s), n);
  Mat fx = transform(v, s, n, x);
  const double n2 = p_norm(x, qa, 2.0);
  const double nn = n2 * n2;
  const double lhs = 0.5 * (entropy_functional(fx.adjoint() * fx, qb) + entropy_functional(x.adjoint() * x, qa));
  const double rhs = -nn * (std::log(delta(v) / kappa(v, n - 1)) + std::log(nn));
  return (lhs - rhs) / std::max(nn, std::abs(rhs));
}

inline bool young_admissible(double p, double q, double r) {
  auto inv = [](double t) { return std::isinf(t) ? 0.0 : 1.0 / t; };
  return p >= 1 && q >= 1 && r >= 1 && std::abs(inv(p) + inv(q) - inv(r) - 1.0) < 1e-12;
}

// ||x * y||_r <= (delta/kappa^{+-}_0) ||x||_p ||y||_q on B' cap A_1 (plus) or A' cap A_2 (minus).
inline double young_constant(const TowerView& v, Sign s) { return delta(v) / kappa(v, s, 0); }

inline double young_ratio(const TowerView& v, Sign s, const Mat& x, const Mat& y, double p, double q, double r) {
  if (!young_admissible(p, q, r)) throw Error(ErrorKind::invalid_argument, "Young exponents need 1/p + 1/q = 1/r + 1");
  const auto& qa = algebra_of(v, s, 1);
  Mat c = s == Sign::plus ? convolve_pos(v, 1, x, y) : convolve_neg(v, 1, x, y);
  const double den = p_norm(x, qa, p) * p_norm(y, qa, q);
  if (den == 0.0) return 0.0;
  return p_norm(c, qa, r) / den;
}

inline double young_margin(const TowerView& v, Sign s, const Mat& x, const Mat& y, double p, double q, double r) {
  const double k = young_constant(v, s);
  return (k - young_ratio(v, s, x, y, p, q, r)) / k;
}

}  // namespace jwt
