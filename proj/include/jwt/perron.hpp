#pragma once

#include "jwt/core.hpp"

namespace jwt {

struct PerronPair {
  double eigenvalue = 0.0;
  RealVec vector;  // positive, unit 2-norm
  double residual = 0.0;  // ||Mv - beta v|| / ||v||
  int iterations = 0;
};

inline bool irreducible(const RealMat& m) {
  const long n = m.rows();
  if (n == 0) return false;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<char> seen(n, 0);
    std::vector<long> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      long i = stack.back();
      stack.pop_back();
      for (long j = 0; j < n; ++j) {
        double w = dir == 0 ? m(i, j) : m(j, i);
        if (w > 0 && !seen[j]) seen[j] = 1, stack.push_back(j);
      }
    }
    for (char s : seen)
      if (!s) return false;
  }
  return true;
}

// Power iteration on M + I (primitive whenever M is irreducible).
inline PerronPair pf_eigen(const RealMat& m, double tol = 1e-12, int max_iter = 100000) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::invalid_argument, "Perron-Frobenius needs a square matrix");
  if ((m.array() < 0).any()) throw Error(ErrorKind::invalid_argument, "matrix has negative entries");
  if (!irreducible(m)) throw Error(ErrorKind::reducible, "matrix is reducible");
  const long n = m.rows();
  RealMat shifted = m + RealMat::Identity(n, n);
  RealVec v = RealVec::Ones(n).normalized();
  PerronPair out;
  for (int it = 1; it <= max_iter; ++it) {
    RealVec w = (shifted * v).normalized();
    double change = (w - v).norm();
    v = w;
    out.iterations = it;
    if (change < tol) break;
  }
  out.eigenvalue = v.dot(m * v);
  out.vector = v;
  out.residual = (m * v - out.eigenvalue * v).norm();
  return out;
}

}  // namespace jwt
