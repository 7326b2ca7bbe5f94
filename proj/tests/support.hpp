#pragma once

#include "jwt/jwt.hpp"

#include <gtest/gtest.h>

namespace jwt::testing {

// Towers are expensive; each model is built once per test binary.
inline const Tower& c_in_m2(int level = 7) {
  static std::unique_ptr<Tower> t = [] {
    auto p = std::make_unique<Tower>(InclusionSpec::tensor(1, 2));
    p->extend_to(7);
    return p;
  }();
  EXPECT_GE(t->max_level(), level);
  return *t;
}

inline const Tower& m2_in_m4() {
  static std::unique_ptr<Tower> t = [] {
    auto p = std::make_unique<Tower>(InclusionSpec::tensor(2, 2));
    p->extend_to(6);
    return p;
  }();
  return *t;
}

inline const Tower& degenerate() {
  static std::unique_ptr<Tower> t = [] {
    auto p = std::make_unique<Tower>(InclusionSpec::tensor(2, 1));
    p->extend_to(5);
    return p;
  }();
  return *t;
}

inline Mat matrix_unit(long n, long i, long j) {
  Mat e = Mat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

constexpr double kTight = 1e-10;
constexpr double kLoose = 1e-8;

}  // namespace jwt::testing
