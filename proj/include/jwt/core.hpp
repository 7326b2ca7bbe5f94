#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace jwt {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr long kDefaultDimCap = 65536;

enum class ErrorKind {
  invalid_argument,
  dimension_cap,
  not_semisimple,
  not_subalgebra,
  not_index_finite,
  level_missing,
  reducible,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// ||a-b||_F / max(||a||_F, ||b||_F, scale); scale guards identities whose sides may vanish.
inline double rel_diff(const Mat& a, const Mat& b, double scale = 0.0) {
  double den = std::max({a.norm(), b.norm(), scale, 1e-300});
  return (a - b).norm() / den;
}

inline Mat identity(long n) { return Mat::Identity(n, n); }

inline Mat hermitian_part(const Mat& x) { return (x + x.adjoint()) * 0.5; }

// Seeded source of complex standard Gaussians, E|z|^2 = 1.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}
  cplx gaussian() {
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    double re = nd(gen_);
    double im = nd(gen_);
    return {re, im};
  }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  Mat gaussian_matrix(long r, long c) {
    Mat m(r, c);
    for (long j = 0; j < c; ++j)
      for (long i = 0; i < r; ++i) m(i, j) = gaussian();
    return m;
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline double eta(double t) { return t <= 0.0 ? 0.0 : -t * std::log(t); }

}  // namespace jwt
