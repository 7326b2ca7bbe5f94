#pragma once

#include "jwt/config.hpp"
#include "jwt/entropy.hpp"
#include "jwt/harmonic.hpp"

#include <array>
#include <functional>
#include <memory>

namespace jwt {

// identity: value <= threshold; inequality: value >= -threshold; separation: value > threshold;
// observation: informational, always passes; error: the check could not run.
enum class RecordKind { identity, inequality, separation, observation, error };

inline const char* to_string(RecordKind k) {
  switch (k) {
    case RecordKind::identity: return "identity";
    case RecordKind::inequality: return "inequality";
    case RecordKind::separation: return "separation";
    case RecordKind::observation: return "observation";
    case RecordKind::error: return "error";
  }
  return "?";
}

struct Record {
  std::string name;
  std::string anchor;
  RecordKind kind = RecordKind::identity;
  double value = 0.0;
  double threshold = 0.0;
  int samples = 1;
  bool pass = false;
  bool resource_cap = false;
  std::string message;

  void judge() {
    switch (kind) {
      case RecordKind::identity: pass = std::isfinite(value) && value <= threshold; break;
      case RecordKind::inequality: pass = std::isfinite(value) && value >= -threshold; break;
      case RecordKind::separation: pass = std::isfinite(value) && value > threshold; break;
      case RecordKind::observation: pass = true; break;
      case RecordKind::error: pass = false; break;
    }
  }
};

struct SuiteResult {
  std::string suite;
  std::vector<Record> records;
  bool pass() const {
    for (auto& r : records)
      if (!r.pass) return false;
    return true;
  }
};

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

// Per-model state shared by the suites.
class SuiteContext {
 public:
  SuiteContext(const Tower& t, const RunConfig& cfg, std::string model) : t_(t), v_(t, 0), cfg_(cfg), model_(std::move(model)) {}

  const Tower& tower() const { return t_; }
  const TowerView& view() const { return v_; }
  TowerView up() const { return TowerView(t_, 1); }
  const RunConfig& config() const { return cfg_; }
  double tau() const { return t_.tau(); }
  double tol() const { return cfg_.tol; }
  int samples() const { return cfg_.samples; }
  int inequality_samples() const { return cfg_.inequality_samples; }
  bool nontrivial() const { return t_.scalars().index > 1.0 + 1e-9; }

  // Independent stream per check, stable under suite selection.
  Rng rng(const std::string& key) const { return Rng(fnv1a(model_ + "/" + key, fnv1a(std::to_string(cfg_.seed)))); }

  Mat e(int i, int at) const { return t_.jones_at(i, at); }
  Mat one(int level) const { return identity(t_.ambient(level)); }

 private:
  const Tower& t_;
  TowerView v_;
  const RunConfig& cfg_;
  std::string model_;
};

namespace detail {

class SuiteBuilder {
 public:
  SuiteBuilder(std::string suite, const SuiteContext& ctx) : ctx_(ctx) { res_.suite = std::move(suite); }

  void add(const std::string& name, const std::string& anchor, RecordKind kind, double threshold,
           const std::function<double()>& fn, int samples = 1) {
    Record r;
    r.name = name;
    r.anchor = anchor;
    r.kind = kind;
    r.threshold = threshold;
    r.samples = samples;
    try {
      r.value = fn();
    } catch (const Error& e) {
      r.kind = RecordKind::error;
      r.value = 0.0;
      r.message = e.what();
      r.resource_cap = e.kind() == ErrorKind::dimension_cap || e.kind() == ErrorKind::level_missing;
    }
    r.judge();
    res_.records.push_back(std::move(r));
  }

  void identity(const std::string& name, const std::string& anchor, const std::function<double()>& fn, int samples = 1) {
    add(name, anchor, RecordKind::identity, ctx_.tol(), fn, samples);
  }
  void inequality(const std::string& name, const std::string& anchor, const std::function<double()>& fn, int samples = 1) {
    add(name, anchor, RecordKind::inequality, ctx_.tol(), fn, samples);
  }
  // Separation witnesses only apply to proper inclusions; for B = A they are recorded as observations.
  void separation(const std::string& name, const std::string& anchor, double threshold, const std::function<double()>& fn) {
    add(name, anchor, ctx_.nontrivial() ? RecordKind::separation : RecordKind::observation, threshold, fn);
  }
  void observation(const std::string& name, const std::string& anchor, const std::function<double()>& fn) {
    add(name, anchor, RecordKind::observation, 0.0, fn);
  }

  // Max of f over `n` samples drawn from a fresh stream named after the record.
  double sampled(const std::string& key, int n, const std::function<double(Rng&)>& f) const {
    Rng rng = ctx_.rng(res_.suite + "/" + key);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, f(rng));
    return worst;
  }
  double sampled_min(const std::string& key, int n, const std::function<double(Rng&)>& f) const {
    Rng rng = ctx_.rng(res_.suite + "/" + key);
    double worst = kInf;
    for (int i = 0; i < n; ++i) worst = std::min(worst, f(rng));
    return worst;
  }

  SuiteResult take() { return std::move(res_); }

 private:
  const SuiteContext& ctx_;
  SuiteResult res_;
};

inline std::string nstr(const std::string& base, int n) { return base + " (n=" + std::to_string(n) + ")"; }

inline double trace_gap(const MultiMatrixAlgebra& qa, const Mat& a, const MultiMatrixAlgebra& qb, const Mat& b, double scale) {
  return std::abs(qa.trace(a) - qb.trace(b)) / std::max({scale, 1e-300});
}

// Largest rel. deviation of ||.||_p under a map, p in {1, 2, 3, inf}.
inline double p_norm_gap(const Mat& x, const MultiMatrixAlgebra& qx, const Mat& y, const MultiMatrixAlgebra& qy) {
  double worst = 0.0;
  for (double p : {1.0, 2.0, 3.0, kInf}) {
    double a = p_norm(x, qx, p), b = p_norm(y, qy, p);
    worst = std::max(worst, std::abs(a - b) / std::max({a, b, 1e-300}));
  }
  return worst;
}

}  // namespace detail

inline SuiteResult suite_tl(const SuiteContext& c) {
  detail::SuiteBuilder b("tl", c);
  const Tower& t = c.tower();
  const int top = t.max_level();
  const double tau = c.tau();
  b.identity("jones projections are self-adjoint idempotents", "jones-projection", [&] {
    double w = 0.0;
    for (int n = 1; n <= top; ++n) {
      Mat e = t.jones(n);
      w = std::max({w, rel_diff(e * e, e), rel_diff(e.adjoint(), e)});
    }
    return w;
  });
  b.identity("e_n e_{n-1} e_n = tau e_n and e_{n-1} e_n e_{n-1} = tau e_{n-1}", "temperley-lieb", [&] {
    double w = 0.0;
    for (int n = 2; n <= top; ++n) {
      Mat e = t.jones(n), f = c.e(n - 1, n);
      w = std::max({w, rel_diff(e * f * e, tau * e), rel_diff(f * e * f, tau * f)});
    }
    return w;
  });
  b.identity("e_i e_n = e_n e_i for |i-n| >= 2", "temperley-lieb", [&] {
    double w = 0.0;
    for (int n = 3; n <= top; ++n)
      for (int i = 1; i <= n - 2; ++i) {
        Mat e = t.jones(n), f = c.e(i, n);
        w = std::max(w, rel_diff(e * f, f * e));
      }
    return w;
  });
  b.identity("E_n(e_n) = tau", "jones-expectation", [&] {
    double w = 0.0;
    for (int n = 1; n <= top; ++n) w = std::max(w, rel_diff(t.expect(n, t.jones(n)), tau * c.one(n - 1)));
    return w;
  });
  const int per_level = std::max(1, c.samples() / std::max(1, top));
  b.identity("tr_n(x e_n) = tau tr_{n-1}(x)", "markov-trace", [&] {
    return b.sampled("markov", per_level, [&](Rng& r) {
      double w = 0.0;
      for (int n = 1; n <= top; ++n) {
        Mat x = t.algebra(n - 1).random(r);
        cplx lhs = t.trace(n, t.lift(x, n - 1, n) * t.jones(n));
        cplx rhs = tau * t.trace(n - 1, x);
        w = std::max(w, std::abs(lhs - rhs) / std::max(tau * p_norm(x, t.algebra(n - 1), 2), 1e-300));
      }
      return w;
    });
  }, per_level * top);
  b.identity("x e_{n+1} = tau^{-1} E_{n+1}(x e_{n+1}) e_{n+1}", "pushdown", [&] {
    return b.sampled("pushdown", per_level, [&](Rng& r) {
      double w = 0.0;
      for (int n = 0; n + 1 <= top; ++n) {
        Mat x = t.lift(t.algebra(n).random(r), n, n + 1);
        Mat e = t.jones(n + 1);
        Mat x0 = t.lift(t.expect(n + 1, x * e), n, n + 1) / tau;
        w = std::max(w, rel_diff(x * e, x0 * e));
      }
      return w;
    });
  }, per_level * top);
  b.observation("levels built", "tower", [&] { return double(top); });
  return b.take();
}

inline SuiteResult suite_quasi_basis(const SuiteContext& c) {
  detail::SuiteBuilder b("quasi-basis", c);
  const Tower& t = c.tower();
  const TowerView& v = c.view();
  const double tau = c.tau();
  const auto& qb = t.quasi_basis();
  b.identity("sum_i lambda_i e_1 lambda_i^* = 1", "quasi-basis-jones", [&] {
    Mat acc = Mat::Zero(t.ambient(1), t.ambient(1));
    Mat e = t.jones(1);
    for (auto& l : qb) {
      Mat ll = t.lift(l, 0, 1);
      acc += ll * e * ll.adjoint();
    }
    return rel_diff(acc, c.one(1));
  });
  b.identity("sum_i lambda_i lambda_i^* = index", "watatani-index", [&] {
    Mat acc = Mat::Zero(t.ambient(0), t.ambient(0));
    for (auto& l : qb) acc += l * l.adjoint();
    return rel_diff(acc, t.scalars().index * c.one(0));
  });
  b.identity("sum_i lambda_i E_0(lambda_i^* x) = x", "quasi-basis", [&] {
    return b.sampled("reconstruct", c.samples(), [&](Rng& r) {
      Mat x = t.algebra(0).random(r);
      Mat acc = Mat::Zero(x.rows(), x.cols());
      for (auto& l : qb) acc += l * t.lift(t.expect(0, l.adjoint() * x), -1, 0);
      return rel_diff(acc, x);
    });
  }, c.samples());
  for (int j = 1; j <= std::min(2, t.max_level()); ++j) {
    b.identity(detail::nstr("transported quasi-basis reconstructs A_j", j), "quasi-basis", [&, j] {
      return b.sampled("transported" + std::to_string(j), std::min(c.samples(), 20), [&](Rng& r) {
        Mat x = t.algebra(j).random(r);
        Mat acc = Mat::Zero(x.rows(), x.cols());
        for (auto& l : t.quasi_basis_view(j)) acc += l * t.lift(t.expect(j, l.adjoint() * x), j - 1, j);
        return rel_diff(acc, x);
      });
    }, std::min(c.samples(), 20));
  }
  for (int n = 1; n <= std::min(2, t.max_level()); ++n) {
    b.identity(detail::nstr("composite quasi-basis reconstructs A_n over B", n), "composite-quasi-basis", [&, n] {
      auto lam = t.composite_quasi_basis(n);
      return b.sampled("composite" + std::to_string(n), std::min(c.samples(), 10), [&](Rng& r) {
        Mat x = t.algebra(n).random(r);
        Mat acc = Mat::Zero(x.rows(), x.cols());
        for (auto& l : lam) acc += l * t.lift(t.expectation_chain(0, n, l.adjoint() * x), -1, n);
        return rel_diff(acc, x);
      });
    }, std::min(c.samples(), 10));
  }
  b.identity("E_{A' cap A_1}(e_1) = tau", "jones-expectation", [&] {
    return rel_diff(v.minus_box(1).expect(t.jones(1)), tau * c.one(1));
  });
  for (int n = 1; n <= std::min(3, t.max_level()); ++n) {
    b.identity(detail::nstr("E_{A' cap A_n}(x) = tau sum_i lambda_i x lambda_i^* on B' cap A_n", n), "relative-commutant-expectation", [&, n] {
      return b.sampled("f2-" + std::to_string(n), c.samples(), [&](Rng& r) {
        Mat x = v.plus_box(n).random(r);
        Mat acc = Mat::Zero(x.rows(), x.cols());
        for (auto& l : qb) {
          Mat ll = t.lift(l, 0, n);
          acc += ll * x * ll.adjoint();
        }
        return rel_diff(v.minus_box(n).expect(x), tau * acc);
      });
    }, c.samples());
  }
  return b.take();
}

inline SuiteResult suite_fourier(const SuiteContext& c) {
  detail::SuiteBuilder b("fourier", c);
  const Tower& t = c.tower();
  const TowerView& v = c.view();
  const double tau = c.tau();
  const int top_n = std::min(3, t.max_level() - 1);
  for (int n = 0; n <= top_n; ++n) {
    const std::string k = std::to_string(n);
    b.identity(detail::nstr("F_n^{-1}(F_n(x)) = x", n), "fourier-inverse", [&, n] {
      return b.sampled("inv-" + std::to_string(n), c.samples(), [&](Rng& r) {
        Mat x = v.plus_box(n).random(r);
        return rel_diff(inv_fourier(v, n, fourier(v, n, x)), x);
      });
    }, c.samples());
    b.identity(detail::nstr("F_n(F_n^{-1}(w)) = w", n), "fourier-inverse", [&, n] {
      return b.sampled("inv2-" + std::to_string(n), c.samples(), [&](Rng& r) {
        Mat w = v.minus_box(n + 1).random(r);
        return rel_diff(fourier(v, n, inv_fourier(v, n, w)), w);
      });
    }, c.samples());
    b.identity(detail::nstr("F_n and F_n^{-1} preserve the 2-norm", n), "fourier-isometry", [&, n] {
      return b.sampled("iso-" + std::to_string(n), c.samples(), [&](Rng& r) {
        Mat x = v.plus_box(n).random(r), w = v.minus_box(n + 1).random(r);
        double a = p_norm(x, t.algebra(n), 2), fa = p_norm(fourier(v, n, x), t.algebra(n + 1), 2);
        double z = p_norm(w, t.algebra(n + 1), 2), fz = p_norm(inv_fourier(v, n, w), t.algebra(n), 2);
        return std::max(std::abs(a - fa) / a, std::abs(z - fz) / z);
      });
    }, c.samples());
    b.identity(detail::nstr("F_n(x) lies in A' cap A_{n+1}", n), "fourier-range", [&, n] {
      return b.sampled("range-" + std::to_string(n), c.samples(), [&](Rng& r) {
        Mat f = fourier(v, n, v.plus_box(n).random(r));
        return v.minus_box(n + 1).membership_residual(f) / std::max(f.norm(), 1e-300);
      });
    }, c.samples());
    b.identity(detail::nstr("F_n(x) F_n(x)^* = tau^{-1} E_{A' cap A_{n+1}}(x e_{n+1} x^*)", n), "fourier-square", [&, n] {
      return b.sampled("square-" + std::to_string(n), c.samples(), [&](Rng& r) {
        Mat x = v.plus_box(n).random(r);
        Mat f = fourier(v, n, x);
        Mat xl = t.lift(x, n, n + 1);
        return rel_diff(f * f.adjoint(), v.minus_box(n + 1).expect(xl * t.jones(n + 1) * xl.adjoint()) / tau);
      });
    }, c.samples());
  }
  b.identity("F_0(1) = 1", "fourier-unit", [&] { return rel_diff(fourier(v, 0, c.one(0)), c.one(1)); });
  b.identity("F_1(e_1) = sqrt(tau)", "fourier-jones", [&] {
    return rel_diff(fourier(v, 1, t.jones(1)), std::sqrt(tau) * c.one(2));
  });
  b.identity("F_1^{-1}(1) = tau^{-1/2} e_1", "fourier-jones", [&] {
    return rel_diff(inv_fourier(v, 1, c.one(2)), t.jones(1) / std::sqrt(tau));
  });
  b.identity("F_5(e_1) = tau^{-3/2} e_6 e_5 e_4 e_3", "fourier-jones-word", [&] {
    Mat word = c.e(6, 6) * c.e(5, 6) * c.e(4, 6) * c.e(3, 6);
    return rel_diff(fourier(v, 5, c.e(1, 5)), std::pow(tau, -1.5) * word);
  });
  return b.take();
}

inline SuiteResult suite_rotation(const SuiteContext& c) {
  detail::SuiteBuilder b("rotation", c);
  const Tower& t = c.tower();
  const TowerView& v = c.view();
  const double tau = c.tau();
  for (int n = 1; n <= 3; ++n) {
    b.identity(detail::nstr("(rho+_n)^{n+1} = id", n), "rotation-period", [&, n] {
      return b.sampled("period+" + std::to_string(n), c.samples(), [&](Rng& r) {
        Mat x = v.plus_box(n).random(r);
        return rel_diff(rho_plus_power(v, n, n + 1, x), x);
      });
    }, c.samples());
    b.identity(detail::nstr("(rho-_n)^{n+1} = id", n), "rotation-period", [&, n] {
      return b.sampled("period-" + std::to_string(n), c.samples(), [&](Rng& r) {
        Mat w = v.minus_box(n + 1).random(r);
        return rel_diff(rho_minus_power(v, n, n + 1, w), w);
      });
    }, c.samples());
    b.identity(detail::nstr("rho-_n agrees with its quasi-basis formula", n), "rotation-minus-quasi-basis", [&, n] {
      return b.sampled("qb-" + std::to_string(n), c.samples(), [&](Rng& r) {
        Mat w = v.minus_box(n + 1).random(r);
        return rel_diff(rho_minus(v, n, w), rho_minus_quasi_basis(v, n, w));
      });
    }, c.samples());
    b.identity(detail::nstr("rho-_n = i o rho+_n(A in A_1) o i", n), "rotation-minus-shifted", [&, n] {
      return b.sampled("view-" + std::to_string(n), c.samples(), [&](Rng& r) {
        Mat w = v.minus_box(n + 1).random(r);
        return rel_diff(rho_minus(v, n, w), rho_minus_via_shift(v, n, w));
      });
    }, c.samples());
  }
  for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 3}}) {
    b.identity("closed form of (rho+_n)^k matches iteration (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")",
               "rotation-power-closed-form", [&, n, k] {
      const int reps = std::max(1, std::min(c.samples(), 10));
      return b.sampled("closed-" + std::to_string(n) + "-" + std::to_string(k), reps, [&](Rng& r) {
        Mat x = v.plus_box(n).random(r);
        return rel_diff(rho_plus_power_closed(v, n, k, x), rho_plus_power(v, n, k, x));
      });
    }, std::max(1, std::min(c.samples(), 10)));
  }
  auto e21 = [&] { return Mat(c.e(2, 2) * c.e(1, 2)); };
  b.identity("rho+_2(e_2 e_1) = tau", "rotation-witness", [&] { return rel_diff(rho_plus(v, 2, e21()), tau * c.one(2)); });
  b.identity("(rho+_2)^2(e_2 e_1) = e_1 e_2", "rotation-witness", [&] {
    return rel_diff(rho_plus_power(v, 2, 2, e21()), c.e(1, 2) * c.e(2, 2));
  });
  b.separation("rho+_2 is not *-preserving: |rho(x^*) - rho(x)^*|_2 at x = e_2 e_1", "rotation-witness", 1e-3, [&] {
    Mat x = e21();
    return p_norm(rho_plus(v, 2, x.adjoint()) - rho_plus(v, 2, x).adjoint(), t.algebra(2), 2);
  });
  b.separation("rho+_2 is not anti-multiplicative: |rho(e_2 e_1) - rho(e_1) rho(e_2)|_2", "rotation-witness", 1e-3, [&] {
    Mat p = rho_plus(v, 2, c.e(1, 2)) * rho_plus(v, 2, c.e(2, 2));
    return p_norm(rho_plus(v, 2, e21()) - p, t.algebra(2), 2);
  });
  return b.take();
}

inline SuiteResult suite_reflection(const SuiteContext& c) {
  detail::SuiteBuilder b("reflection", c);
  const Tower& t = c.tower();
  const TowerView& v = c.view();
  TowerView up = c.up();
  for (int n = 0; n <= 1; ++n) {
    for (Sign s : {Sign::plus, Sign::minus}) {
      const bool plus = s == Sign::plus;
      const int lvl = plus ? 2 * n + 1 : 2 * n + 2;
      const std::string op = std::string(plus ? "r+_" : "r-_") + std::to_string(2 * n + 1);
      const std::string key = op;
      auto refl = [&, n, plus](const Mat& x) { return plus ? reflection_plus(v, n, x) : reflection_minus(v, n, x); };
      auto space = [&, n, plus]() -> const MultiMatrixAlgebra& { return plus ? v.plus_box(2 * n + 1) : v.minus_box(2 * n + 2); };
      const int reps = c.samples();
      b.identity(op + " is unital", "reflection-unital", [&, lvl, refl] { return rel_diff(refl(c.one(lvl)), c.one(lvl)); });
      b.identity(op + " is involutive", "reflection-involutive", [&, refl, space, key] {
        return b.sampled(key + "inv", reps, [&](Rng& r) {
          Mat x = space().random(r);
          return rel_diff(refl(refl(x)), x);
        });
      }, reps);
      b.identity(op + " is *-preserving", "reflection-star", [&, refl, space, key] {
        return b.sampled(key + "star", reps, [&](Rng& r) {
          Mat x = space().random(r);
          return rel_diff(refl(x.adjoint()), refl(x).adjoint());
        });
      }, reps);
      b.identity(op + " is anti-multiplicative", "reflection-anti-homomorphism", [&, refl, space, key] {
        return b.sampled(key + "anti", reps, [&](Rng& r) {
          Mat x = space().random(r), y = space().random(r);
          return rel_diff(refl(x * y), refl(y) * refl(x));
        });
      }, reps);
      b.identity(op + " is trace-preserving", "reflection-trace", [&, refl, space, key, lvl] {
        return b.sampled(key + "trace", reps, [&](Rng& r) {
          Mat x = space().random(r);
          const auto& q = t.algebra(lvl);
          return detail::trace_gap(q, refl(x), q, x, p_norm(x, q, 2));
        });
      }, reps);
      b.identity(op + " preserves p-norms, p in {1,2,3,inf}", "reflection-p-norm", [&, refl, space, key, lvl] {
        return b.sampled(key + "pnorm", std::min(reps, 20), [&](Rng& r) {
          Mat x = space().random(r);
          return detail::p_norm_gap(x, t.algebra(lvl), refl(x), t.algebra(lvl));
        });
      }, std::min(reps, 20));
      b.identity(op + " maps its box space into itself", "reflection-range", [&, refl, space, key] {
        return b.sampled(key + "range", std::min(reps, 20), [&](Rng& r) {
          Mat y = refl(space().random(r));
          return space().membership_residual(y) / std::max(y.norm(), 1e-300);
        });
      }, std::min(reps, 20));
    }
    const std::string k = std::to_string(2 * n + 1);
    b.identity("r-_" + k + " = F o r+_" + k + " o F^{-1}", "reflection-fourier", [&, n] {
      return b.sampled("fourier" + std::to_string(n), c.samples(), [&](Rng& r) {
        Mat w = v.minus_box(2 * n + 2).random(r);
        const int m = 2 * n + 1;
        return rel_diff(reflection_minus(v, n, w), fourier(v, m, reflection_plus(v, n, inv_fourier(v, m, w))));
      });
    }, c.samples());
    b.identity("r-_" + k + " = r+_" + k + "(A in A_1)", "reflection-shifted", [&, n] {
      return b.sampled("shifted" + std::to_string(n), c.samples(), [&](Rng& r) {
        Mat w = v.minus_box(2 * n + 2).random(r);
        return rel_diff(reflection_minus(v, n, w), reflection_plus(up, n, w));
      });
    }, c.samples());
    b.identity("r+_" + k + " = r+_1(B in A_" + std::to_string(n) + ") via the composite quasi-basis", "reflection-composite", [&, n] {
      return b.sampled("composite" + std::to_string(n), std::min(c.samples(), 20), [&](Rng& r) {
        Mat x = v.plus_box(2 * n + 1).random(r);
        return rel_diff(reflection_plus(v, n, x), reflection_plus_composite(v, n, x));
      });
    }, std::min(c.samples(), 20));
  }
  return b.take();
}

inline SuiteResult suite_convolution(const SuiteContext& c) {
  detail::SuiteBuilder b("convolution", c);
  const Tower& t = c.tower();
  const TowerView& v = c.view();
  const double tau = c.tau();
  const int reps = std::min(c.samples(), 50);
  for (int n = 1; n <= 2; ++n) {
    b.identity(detail::nstr("(x*y)*z = x*(y*z) on B' cap A_n", n), "convolution-associative", [&, n] {
      return b.sampled("assoc+" + std::to_string(n), reps, [&](Rng& r) {
        const auto& q = v.plus_box(n);
        Mat x = q.random(r), y = q.random(r), z = q.random(r);
        return rel_diff(convolve_pos(v, n, convolve_pos(v, n, x, y), z), convolve_pos(v, n, x, convolve_pos(v, n, y, z)));
      });
    }, reps);
    b.identity(detail::nstr("(w*z)*u = w*(z*u) on A' cap A_{n+1}", n), "convolution-associative", [&, n] {
      return b.sampled("assoc-" + std::to_string(n), reps, [&](Rng& r) {
        const auto& q = v.minus_box(n + 1);
        Mat x = q.random(r), y = q.random(r), z = q.random(r);
        return rel_diff(convolve_neg(v, n, convolve_neg(v, n, x, y), z), convolve_neg(v, n, x, convolve_neg(v, n, y, z)));
      });
    }, reps);
    b.identity(detail::nstr("F_n^{-1}(1) is a two-sided unit for *", n), "convolution-unit", [&, n] {
      Mat u = inv_fourier(v, n, c.one(n + 1));
      return b.sampled("unit" + std::to_string(n), reps, [&](Rng& r) {
        Mat x = v.plus_box(n).random(r);
        return std::max(rel_diff(convolve_pos(v, n, u, x), x), rel_diff(convolve_pos(v, n, x, u), x));
      });
    }, reps);
    b.identity(detail::nstr("w *_1 z = (z^* * w^*)^*", n), "shifted-convolution", [&, n] {
      return b.sampled("shifted" + std::to_string(n), reps, [&](Rng& r) {
        const auto& q = v.minus_box(n + 1);
        Mat w = q.random(r), z = q.random(r);
        return rel_diff(convolve_shifted(v, n, w, z), convolve_neg(v, n, z.adjoint(), w.adjoint()).adjoint());
      });
    }, reps);
  }
  for (int n = 0; n <= 1; ++n) {
    const int m = 2 * n + 1;
    b.identity("r+_" + std::to_string(m) + "(x*y) = r+(y)*r+(x)", "reflection-convolution", [&, n, m] {
      return b.sampled("refl" + std::to_string(n), reps, [&](Rng& r) {
        const auto& q = v.plus_box(m);
        Mat x = q.random(r), y = q.random(r);
        return rel_diff(reflection_plus(v, n, convolve_pos(v, m, x, y)),
                        convolve_pos(v, m, reflection_plus(v, n, y), reflection_plus(v, n, x)));
      });
    }, reps);
  }
  b.identity("e_1 * e_1 = tau^{-1/2} e_4 e_1 e_3 in B' cap A_5", "convolution-jones", [&] {
    Mat e1 = c.e(1, 5);
    return rel_diff(convolve_pos(v, 5, e1, e1), std::pow(tau, -0.5) * c.e(4, 5) * e1 * c.e(3, 5));
  });
  b.separation("|(e_1*e_1)^* - e_1^* * e_1^*|_2 in B' cap A_5", "convolution-star-witness", 1e-3, [&] {
    Mat e1 = c.e(1, 5);
    Mat cc = convolve_pos(v, 5, e1, e1);
    return p_norm(cc.adjoint() - convolve_pos(v, 5, e1.adjoint(), e1.adjoint()), t.algebra(5), 2);
  });
  return b.take();
}

inline SuiteResult suite_shift(const SuiteContext& c) {
  detail::SuiteBuilder b("shift", c);
  const Tower& t = c.tower();
  const TowerView& v = c.view();
  const int reps = std::min(c.samples(), 50);
  for (int n = 0; n <= 1; ++n) {
    b.identity(detail::nstr("S+_n closed form = r+_{2n+3} o r+_{2n+1}", n), "shift-closed-form", [&, n] {
      return b.sampled("plus" + std::to_string(n), reps, [&](Rng& r) {
        Mat x = v.plus_box(2 * n + 1).random(r);
        return rel_diff(shift_plus_closed(v, n, x), shift_plus_composed(v, n, x));
      });
    }, reps);
    b.identity(detail::nstr("S-_n closed form = r-_{2n+3} o r-_{2n+1}", n), "shift-closed-form", [&, n] {
      return b.sampled("minus" + std::to_string(n), reps, [&](Rng& r) {
        Mat w = v.minus_box(2 * n + 2).random(r);
        return rel_diff(shift_minus_closed(v, n, w), shift_minus_composed(v, n, w));
      });
    }, reps);
  }
  b.identity("S+_0(1) = 1", "shift-unital", [&] { return rel_diff(shift_plus_closed(v, 0, c.one(1)), c.one(3)); });
  b.identity("S+_0 is a trace-preserving *-homomorphism", "shift-isomorphism", [&] {
    return b.sampled("hom", c.samples(), [&](Rng& r) {
      const auto& q = v.plus_box(1);
      Mat x = q.random(r), y = q.random(r);
      Mat sx = shift_plus_closed(v, 0, x), sy = shift_plus_closed(v, 0, y);
      return std::max({rel_diff(shift_plus_closed(v, 0, x * y), sx * sy), rel_diff(shift_plus_closed(v, 0, x.adjoint()), sx.adjoint()),
                       detail::trace_gap(t.algebra(3), sx, t.algebra(1), x, p_norm(x, t.algebra(1), 2))});
    });
  }, c.samples());
  b.identity("S+_0 is a 2-norm isometry", "shift-isomorphism", [&] {
    return b.sampled("iso", c.samples(), [&](Rng& r) {
      Mat x = v.plus_box(1).random(r);
      double a = p_norm(x, t.algebra(1), 2), s = p_norm(shift_plus_closed(v, 0, x), t.algebra(3), 2);
      return std::abs(a - s) / a;
    });
  }, c.samples());
  b.identity("S+_0 maps B' cap A_1 into A_1' cap A_3", "shift-range", [&] {
    return b.sampled("range", c.samples(), [&](Rng& r) {
      Mat y = shift_plus_closed(v, 0, v.plus_box(1).random(r));
      return t.relative_commutant(1, 3).membership_residual(y) / y.norm();
    });
  }, c.samples());
  b.identity("S+_0 maps onto A_1' cap A_3 (dimension gap)", "shift-range", [&] {
    MultiMatrixAlgebra img = image_algebra(v.plus_box(1), [&](const Mat& x) { return shift_plus_closed(v, 0, x); }, t.algebra(3));
    return std::abs(double(img.dimension() - t.relative_commutant(1, 3).dimension()));
  });
  b.identity("S+_0(A' cap A_1) lies in A_2' cap A_3", "shift-range", [&] {
    return b.sampled("range2", reps, [&](Rng& r) {
      Mat y = shift_plus_closed(v, 0, v.minus_box(1).random(r));
      return t.relative_commutant(2, 3).membership_residual(y) / y.norm();
    });
  }, reps);
  b.identity("S+_1 restricted to B' cap A_1 equals S+_0", "shift-coherence", [&] {
    return b.sampled("coherence", reps, [&](Rng& r) {
      Mat x = v.plus_box(1).random(r);
      return rel_diff(shift_plus_closed(v, 1, t.lift(x, 1, 3)), t.lift(shift_plus_closed(v, 0, x), 3, 5));
    });
  }, reps);
  for (int n = 1; n <= 2; ++n) {
    b.identity(detail::nstr("S_[n/2](F_n^{-1}(w)) = (F_n(A in A_1)(w^*))^*", n), "shift-fourier", [&, n] {
      return b.sampled("odd" + std::to_string(n), reps, [&](Rng& r) { return shift_odd_check(v, n, v.minus_box(n + 1).random(r)); });
    }, reps);
  }
  return b.take();
}

inline SuiteResult suite_canonical_shift(const SuiteContext& c) {
  detail::SuiteBuilder b("canonical-shift", c);
  const Tower& t = c.tower();
  const TowerView& v = c.view();
  const int reps = std::min(c.samples(), 50);
  b.identity("Gamma(1) = 1", "canonical-shift", [&] { return rel_diff(canonical_shift(v, 2, c.one(2)), c.one(4)); });
  const int hom_reps = std::min(c.samples(), 25);
  for (int n = 0; n <= 1; ++n) {
    const int src = 2 * n + 2, dst = 2 * n + 4;
    // Samples x with Gamma(x), shared by the records below; filled on first use so level errors land in a record.
    std::vector<std::pair<Mat, Mat>> pool;
    auto pairs = [&, src]() -> const std::vector<std::pair<Mat, Mat>>& {
      if (pool.empty()) {
        Rng r = c.rng("canonical-shift/pool" + std::to_string(n));
        for (int i = 0; i < c.samples(); ++i) {
          Mat x = v.minus_box(src).random(r);
          Mat gx = canonical_shift(v, src, x);
          pool.emplace_back(std::move(x), std::move(gx));
        }
      }
      return pool;
    };
    b.identity(detail::nstr("Gamma on A' cap A_{2n+2} is a trace-preserving *-homomorphism", n), "canonical-shift", [&, src, dst, n] {
      const auto& ps = pairs();
      std::size_t i = 0;
      return b.sampled("hom" + std::to_string(n), hom_reps, [&](Rng& r) {
        const auto& [x, gx] = ps[i++ % ps.size()];
        Mat y = v.minus_box(src).random(r);
        Mat gy = canonical_shift(v, src, y);
        return std::max({rel_diff(canonical_shift(v, src, x * y), gx * gy), rel_diff(canonical_shift(v, src, x.adjoint()), gx.adjoint()),
                         detail::trace_gap(t.algebra(dst), gx, t.algebra(src), x, p_norm(x, t.algebra(src), 2))});
      });
    }, hom_reps);
    b.identity(detail::nstr("Gamma on A' cap A_{2n+2} is a 2-norm isometry", n), "canonical-shift", [&, src, dst] {
      double worst = 0.0;
      for (auto& [x, gx] : pairs()) {
        double a = p_norm(x, t.algebra(src), 2);
        worst = std::max(worst, std::abs(a - p_norm(gx, t.algebra(dst), 2)) / a);
      }
      return worst;
    }, c.samples());
    b.identity(detail::nstr("Gamma(A' cap A_{2n+2}) lies in A_2' cap A_{2n+4}", n), "canonical-shift-range", [&, dst] {
      double worst = 0.0;
      for (auto& [x, gx] : pairs()) worst = std::max(worst, t.relative_commutant(2, dst).membership_residual(gx) / gx.norm());
      return worst;
    }, c.samples());
  }
  b.identity("S-_1 restricted to A' cap A_2 equals S-_0", "canonical-shift-coherence", [&] {
    return b.sampled("coherence", reps, [&](Rng& r) {
      Mat w = v.minus_box(2).random(r);
      return rel_diff(shift_minus_closed(v, 1, t.lift(w, 2, 4)), t.lift(shift_minus_closed(v, 0, w), 4, 6));
    });
  }, reps);
  for (auto [j, k] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
    const std::string tag = "(j=" + std::to_string(j) + ", k=" + std::to_string(k) + ")";
    b.identity("Gamma^k(A' cap A_j) = A_{2k}' cap A_{j+2k} " + tag, "canonical-shift-range", [&, j, k] {
      const int target = j + 2 * k;
      int out = j;
      for (int i = 0; i < k; ++i) out = canonical_shift_level(out);
      MultiMatrixAlgebra img = shifted_algebra(v, j, k, out);
      MultiMatrixAlgebra tgt = lifted_algebra(v, t.relative_commutant(2 * k, target), target, out);
      double worst = std::abs(double(img.dimension() - tgt.dimension()));
      for (auto& x : img.basis()) worst = std::max(worst, tgt.membership_residual(x) / x.norm());
      return worst;
    });
  }
  b.identity("Gamma(A' cap A_2) = r-_3(A' cap A_2) as sets", "canonical-shift-reflection", [&] {
    MultiMatrixAlgebra img = shifted_algebra(v, 2, 1, 4);
    double worst = 0.0;
    long count = 0;
    detail::SpanBuilder span(t.ambient(4));
    for (auto& x : v.minus_box(2).basis()) {
      Mat y = reflection_minus(v, 1, t.lift(x, 2, 4));
      worst = std::max(worst, img.membership_residual(y) / y.norm());
      if (span.add(y)) ++count;
    }
    return std::max(worst, std::abs(double(count - img.dimension())));
  });
  for (int j = 2; j <= 3; ++j) {
    b.identity("E_{A' cap A_j} E_{Gamma(A' cap A_j)} = E_{Gamma(A' cap A_{j-2})} (j=" + std::to_string(j) + ")", "commuting-square", [&, j] {
      Rng r = c.rng("canonical-shift/square" + std::to_string(j));
      return commuting_square_check(v, j, r, std::min(c.samples(), 20)).deviation;
    }, std::min(c.samples(), 20));
  }
  return b.take();
}

inline SuiteResult suite_two_shift(const SuiteContext& c) {
  detail::SuiteBuilder b("two-shift", c);
  const TowerView& v = c.view();
  for (int j = 1; j <= 2; ++j) {
    auto res = std::make_shared<std::optional<TwoShiftResult>>();
    auto get = [&, j, res]() -> const TwoShiftResult& {
      if (!*res) {
        Rng r = c.rng("two-shift/" + std::to_string(j));
        *res = two_shift_check(v, j, 1, r, std::min(c.samples(), 20));
      }
      return **res;
    };
    const std::string tag = " (j=" + std::to_string(j) + ", l=1)";
    b.identity("shifted copies lie in A' cap A_{j+2m}" + tag, "two-shift-containment", [get] { return get().containment; });
    b.identity("w_1 Gamma^m(w_2) = Gamma^m(w_2) w_1, m = floor(j/2)+1" + tag, "two-shift-commutation", [get] { return get().commutation; });
    b.identity("tr(w_3 Gamma^{l k_j}(w_1)) = tr(w_3) tr(w_1)" + tag, "two-shift-trace", [get] { return get().trace_factorization; });
  }
  return b.take();
}

namespace detail {

inline std::string sign_tag(Sign s) { return s == Sign::plus ? "+" : "-"; }

inline std::string p_tag(double p) { return std::isinf(p) ? "inf" : std::to_string(int(p)); }

// Random elements plus the deterministic witnesses 1 and (n = 1, plus side) e_1.
inline std::vector<Mat> witnesses(const SuiteContext& c, Sign s, int n) {
  std::vector<Mat> out{c.one(s == Sign::plus ? n : n + 1)};
  if (s == Sign::plus) out.push_back(c.e(1, n));
  else out.push_back(c.e(n + 1, n + 1));
  return out;
}

}  // namespace detail

inline SuiteResult suite_hy(const SuiteContext& c) {
  detail::SuiteBuilder b("hy", c);
  const TowerView& v = c.view();
  const int reps = c.inequality_samples();
  for (int n = 1; n <= 2; ++n)
    for (Sign s : {Sign::plus, Sign::minus}) {
      const std::string tag = " (n=" + std::to_string(n) + ", " + detail::sign_tag(s) + ")";
      for (double p : {2.0, 4.0, kInf}) {
        b.inequality("Hausdorff-Young margin, p=" + detail::p_tag(p) + tag, "hausdorff-young", [&, n, s, p] {
          double m = kInf;
          for (auto& x : detail::witnesses(c, s, n)) m = std::min(m, hausdorff_young_margin(v, s, n, x, p));
          return std::min(m, b.sampled_min("hy" + tag + detail::p_tag(p), reps, [&](Rng& r) {
            return hausdorff_young_margin(v, s, n, box_space(v, s, n).random(r), p);
          }));
        }, reps + 2);
      }
      b.add("2-norm isometry of the transform" + tag, "hausdorff-young", RecordKind::identity, std::min(c.tol(), 1e-10), [&, n, s] {
        return b.sampled("iso" + tag, std::min(reps, 200), [&](Rng& r) {
          Mat x = box_space(v, s, n).random(r);
          double a = p_norm(x, algebra_of(v, s, n), 2), f = p_norm(transform(v, s, n, x), algebra_of(v, opposite(s), n), 2);
          return std::abs(a - f) / a;
        });
      }, std::min(reps, 200));
    }
  return b.take();
}

inline SuiteResult suite_ds(const SuiteContext& c) {
  detail::SuiteBuilder b("ds", c);
  const TowerView& v = c.view();
  const int reps = c.inequality_samples();
  for (int n = 1; n <= 2; ++n)
    for (Sign s : {Sign::plus, Sign::minus}) {
      const std::string tag = " (n=" + std::to_string(n) + ", " + detail::sign_tag(s) + ")";
      b.inequality("Donoho-Stark margin" + tag, "donoho-stark", [&, n, s] {
        double m = kInf;
        for (auto& x : detail::witnesses(c, s, n)) m = std::min(m, donoho_stark_margin(v, s, n, x, c.tol()));
        // Low-rank random elements: minimal projections of the box space conjugated by random unitaries.
        const auto& q = box_space(v, s, n);
        m = std::min(m, b.sampled_min("lowrank" + tag, std::min(reps, 100), [&](Rng& r) {
          Mat h = q.random_hermitian(r);
          Eigen::SelfAdjointEigenSolver<Mat> es(h);
          Mat u = es.eigenvectors();
          Mat p = u.col(0) * u.col(0).adjoint();
          return donoho_stark_margin(v, s, n, q.expect(p), c.tol());
        }));
        return std::min(m, b.sampled_min("ds" + tag, reps, [&](Rng& r) {
          return donoho_stark_margin(v, s, n, q.random(r), c.tol());
        }));
      }, reps + std::min(reps, 100) + 2);
    }
  return b.take();
}

inline SuiteResult suite_hb(const SuiteContext& c) {
  detail::SuiteBuilder b("hb", c);
  const TowerView& v = c.view();
  const int reps = c.inequality_samples();
  for (int n = 1; n <= 2; ++n)
    for (Sign s : {Sign::plus, Sign::minus}) {
      const std::string tag = " (n=" + std::to_string(n) + ", " + detail::sign_tag(s) + ")";
      b.inequality("Hirschman-Beckner margin" + tag, "hirschman-beckner", [&, n, s] {
        double m = kInf;
        for (auto& x : detail::witnesses(c, s, n)) {
          m = std::min(m, hirschman_beckner_margin(v, s, n, x));
          m = std::min(m, hirschman_beckner_margin(v, s, n, x / p_norm(x, algebra_of(v, s, n), 2)));
        }
        return std::min(m, b.sampled_min("hb" + tag, reps, [&](Rng& r) {
          return hirschman_beckner_margin(v, s, n, box_space(v, s, n).random(r));
        }));
      }, reps + 4);
    }
  return b.take();
}

inline SuiteResult suite_young(const SuiteContext& c) {
  detail::SuiteBuilder b("young", c);
  const TowerView& v = c.view();
  const int reps = c.inequality_samples();
  const std::vector<std::array<double, 3>> triples = {{1, 1, 1}, {2, 2, kInf}, {2, 1, 2}, {kInf, 1, kInf}};
  for (Sign s : {Sign::plus, Sign::minus}) {
    const std::string side = s == Sign::plus ? "B' cap A_1" : "A' cap A_2";
    auto worst = std::make_shared<double>(0.0);
    for (auto& tr : triples) {
      const std::string tag = " on " + side + ", (p,q,r)=(" + detail::p_tag(tr[0]) + "," + detail::p_tag(tr[1]) + "," + detail::p_tag(tr[2]) + ")";
      b.inequality("Young margin" + tag, "young", [&, s, tr, worst, tag] {
        const auto& q = box_space(v, s, 1);
        auto w = detail::witnesses(c, s, 1);
        double m = kInf;
        for (auto& x : w)
          for (auto& y : w) {
            m = std::min(m, young_margin(v, s, x, y, tr[0], tr[1], tr[2]));
            *worst = std::max(*worst, young_ratio(v, s, x, y, tr[0], tr[1], tr[2]) / young_constant(v, s));
          }
        return std::min(m, b.sampled_min("young" + tag, reps, [&](Rng& r) {
          Mat x = q.random(r), y = q.random(r);
          double ratio = young_ratio(v, s, x, y, tr[0], tr[1], tr[2]) / young_constant(v, s);
          *worst = std::max(*worst, ratio);
          return 1.0 - ratio;
        }));
      }, reps + 4);
    }
    b.observation("largest observed ||x*y||_r / (C ||x||_p ||y||_q) on " + side, "young-sharpness", [worst] { return *worst; });
  }
  return b.take();
}

struct EntropySummary {
  std::vector<double> growth;
  double slope = 0.0;
  double log_index = 0.0;
  double shift_entropy = 0.0;
  double implied_relative = 0.0;
  bool finite_depth = false;
  int depth = -1;
};

inline SuiteResult suite_entropy(const SuiteContext& c, EntropySummary* summary = nullptr) {
  detail::SuiteBuilder b("entropy", c);
  const Tower& t = c.tower();
  const TowerView& v = c.view();
  const int growth_n = std::min(3, t.max_level() / 2);
  auto depth = std::make_shared<DepthResult>();
  b.identity("finite depth detected within the built levels (0 = yes)", "finite-depth", [&, depth] {
    Rng r = c.rng("entropy/depth");
    *depth = depth_detect(t, std::min(4, t.max_level()), r);
    return depth->finite ? 0.0 : 1.0;
  });
  b.observation("depth", "finite-depth", [depth] { return double(depth->depth); });
  auto se = std::make_shared<std::optional<ShiftEntropy>>();
  b.identity("PF eigenvalue of G G^t equals the index (relative)", "perron-frobenius-index", [&, depth, se] {
    *se = shift_entropy(t, *depth, growth_n);
    return std::abs((*se)->beta - t.scalars().index) / t.scalars().index;
  });
  b.identity("PF eigen-residual", "perron-frobenius-index", [se] {
    if (!*se) throw Error(ErrorKind::invalid_argument, "shift entropy unavailable");
    return (*se)->pf_residual;
  });
  b.identity("G G^t s = beta s on the trace vector (relative)", "perron-frobenius-index", [se] {
    if (!*se) throw Error(ErrorKind::invalid_argument, "shift entropy unavailable");
    return (*se)->trace_vector_residual;
  });
  b.identity("next inclusion matrix is G^t (0 = yes)", "inclusion-matrix", [se] {
    if (!*se) throw Error(ErrorKind::invalid_argument, "shift entropy unavailable");
    return (*se)->transpose_consistent ? 0.0 : 1.0;
  });
  b.add("entropy growth slope equals log beta", "entropy-growth", RecordKind::identity, 1e-6, [se] {
    if (!*se) throw Error(ErrorKind::invalid_argument, "shift entropy unavailable");
    return std::abs((*se)->growth_slope - (*se)->log_beta);
  });
  b.observation("H_tr(Gamma) = log beta", "shift-entropy", [se] {
    if (!*se) throw Error(ErrorKind::invalid_argument, "shift entropy unavailable");
    return (*se)->log_beta;
  });
  b.observation("implied H_tr(P | Gamma(P)) = 2 log beta (theorem-derived)", "shift-entropy", [se] {
    if (!*se) throw Error(ErrorKind::invalid_argument, "shift entropy unavailable");
    return (*se)->implied_relative;
  });
  b.identity("inclusion matrices reproduce dimensions and trace weights", "inclusion-matrix", [&] {
    double w = 0.0;
    for (int j = 0; j + 1 <= std::min(4, t.max_level()); ++j) {
      InclusionMatrix g = commutant_inclusion(v, j, j + 1);
      w = std::max({w, g.dimension_residual, g.trace_residual});
    }
    return w;
  });
  b.identity("G(P_0 in P_1) G(P_1 in P_2) = G(P_0 in P_2)", "inclusion-matrix", [&] {
    InclusionMatrix a = commutant_inclusion(v, 0, 1), bb = commutant_inclusion(v, 1, 2), ab = commutant_inclusion(v, 0, 2);
    return (a.g * bb.g - ab.g).cast<double>().cwiseAbs().maxCoeff();
  });
  b.inequality("log dim(Q) - H_tr(Q) over relative commutants", "algebra-entropy", [&] {
    double m = kInf;
    for (int j = 0; j <= t.max_level(); ++j)
      for (const MultiMatrixAlgebra* q : {&v.minus_box(j), &v.plus_box(j)})
        m = std::min(m, std::log(double(q->dimension())) - algebra_entropy(*q));
    return m;
  });
  b.identity("H_gamma(M_2 | C) = log 2 for gamma = {e_11, e_22}", "partition-entropy", [&] {
    auto m2 = MultiMatrixAlgebra::full(2);
    auto cc = MultiMatrixAlgebra(identity(2), {1}, {2}, m2.density());
    Partition g;
    g.parts = {m2.matrix_unit(0, 0, 0), m2.matrix_unit(0, 1, 1)};
    return std::abs(partition_relative_entropy(m2, cc, g) - std::log(2.0));
  });
  b.identity("H_gamma(M | M) = 0", "partition-entropy", [&] {
    const auto& m = v.minus_box(2);
    Rng r = c.rng("entropy/partition");
    Eigen::SelfAdjointEigenSolver<Mat> es(m.random_hermitian(r));
    Partition g;
    Mat u = es.eigenvectors();
    for (long i = 0; i < u.cols(); ++i) g.parts.push_back(u.col(i) * u.col(i).adjoint());
    return std::abs(partition_relative_entropy(m, m, g));
  });
  b.identity("H_{1}(A' cap A_2 | A' cap A_1) = 0", "partition-entropy", [&] {
    Partition g;
    g.parts = {c.one(2)};
    MultiMatrixAlgebra n = lifted_algebra(v, v.minus_box(1), 1, 2);
    return std::abs(partition_relative_entropy(v.minus_box(2), n, g));
  });
  b.inequality("H_gamma(A' cap A_2 | A' cap A_1) >= 0, gamma = diagonal matrix units", "partition-entropy", [&] {
    const auto& m = v.minus_box(2);
    Partition g;
    for (int k = 0; k < m.num_blocks(); ++k)
      for (int a = 0; a < m.block(k).dim; ++a) g.parts.push_back(m.matrix_unit(k, a, a));
    MultiMatrixAlgebra n = lifted_algebra(v, v.minus_box(1), 1, 2);
    return partition_relative_entropy(m, n, g);
  });
  if (summary) {
    summary->finite_depth = depth->finite;
    summary->depth = depth->depth;
    summary->log_index = std::log(t.scalars().index);
    if (growth_n >= 1) {
      try {
        EntropyGrowth g = entropy_growth(t, growth_n);
        summary->growth = g.values;
        summary->slope = g.slope;
      } catch (const Error&) {
      }
    }
    if (*se) {
      summary->shift_entropy = (*se)->log_beta;
      summary->implied_relative = (*se)->implied_relative;
    }
  }
  return b.take();
}

inline SuiteResult run_suite(const std::string& name, const SuiteContext& c, EntropySummary* summary = nullptr) {
  if (name == "tl") return suite_tl(c);
  if (name == "quasi-basis") return suite_quasi_basis(c);
  if (name == "fourier") return suite_fourier(c);
  if (name == "rotation") return suite_rotation(c);
  if (name == "reflection") return suite_reflection(c);
  if (name == "convolution") return suite_convolution(c);
  if (name == "shift") return suite_shift(c);
  if (name == "canonical-shift") return suite_canonical_shift(c);
  if (name == "two-shift") return suite_two_shift(c);
  if (name == "hy") return suite_hy(c);
  if (name == "ds") return suite_ds(c);
  if (name == "hb") return suite_hb(c);
  if (name == "young") return suite_young(c);
  if (name == "entropy") return suite_entropy(c, summary);
  throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace jwt
