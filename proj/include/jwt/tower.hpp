#pragma once

#include "jwt/mmalg.hpp"
#include "jwt/perron.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace jwt {

struct InclusionSpec {
  enum class Kind { tensor, explicit_matrices };
  Kind kind = Kind::tensor;
  int k = 1;
  int d = 2;
  // explicit: both generator lists live in the same M_N; B's generators must lie in A.
  std::vector<Mat> a_generators;
  std::vector<Mat> b_generators;

  static InclusionSpec tensor(int k, int d) {
    InclusionSpec s;
    s.k = k;
    s.d = d;
    return s;
  }
};

struct TowerScalars {
  double index = 1.0;
  double tau = 1.0;
  double delta = 1.0;
  // c^k_n = tau^(C(k,2) - k n)
  double c(int k, int n) const {
    double binom = k >= 2 ? 0.5 * k * (k - 1) : 0.0;
    return std::pow(tau, binom - double(k) * n);
  }
};

struct Level {
  int n = 0;
  MultiMatrixAlgebra algebra;  // block diagonal, identity frame, density = tr_n
  MultiMatrixAlgebra prev;     // level n-1 inside this level; its expectation is E_n
  Mat jones;                   // e_n, n >= 1
  std::map<std::string, double> checks;
};

class Tower;

// Level m of the view is A_{shift+m}; the view's base inclusion is A_{shift-1} in A_shift.
class TowerView {
 public:
  TowerView(const Tower& t, int shift) : t_(&t), shift_(shift) {}
  const Tower& tower() const { return *t_; }
  int shift() const { return shift_; }
  inline double tau() const;
  inline int max_level() const;
  inline const MultiMatrixAlgebra& algebra(int m) const;
  inline Mat jones(int i, int at) const;
  inline Mat lift(const Mat& x, int from, int to) const;
  inline Mat expect(int m, const Mat& x) const;  // E_m of the view: level m -> m-1
  inline Mat expect_chain(int k, int n, const Mat& x) const;  // E_k o ... o E_n: level n -> k-1
  inline Mat v_word(int n, int k, int at) const;  // e_n ... e_k at level `at`
  Mat v_word(int n) const { return v_word(n, 1, n); }
  inline const std::vector<Mat>& quasi_basis() const;  // at view level 0
  inline const std::vector<Mat>& quasi_basis(int at) const;  // lifted to view level `at`
  inline const MultiMatrixAlgebra& plus_box(int n) const;   // A_{shift-1}' cap A_{shift+n}
  inline const MultiMatrixAlgebra& minus_box(int n) const;  // A_shift' cap A_{shift+n}
  inline const MultiMatrixAlgebra& relative_commutant(int k, int m) const;

 private:
  const Tower* t_;
  int shift_;
};

class Tower {
 public:
  explicit Tower(InclusionSpec spec, long dim_cap = kDefaultDimCap) : spec_(std::move(spec)), cap_(dim_cap) {
    build_base();
  }
  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  const InclusionSpec& spec() const { return spec_; }
  const TowerScalars& scalars() const { return scalars_; }
  double tau() const { return scalars_.tau; }
  int max_level() const { return int(levels_.size()) - 2; }
  long dim_cap() const { return cap_; }
  bool outside_hypotheses() const { return outside_; }
  const RealMat& base_inclusion_matrix() const { return base_g_; }

  const Level& level(int n) const {
    if (n < -1 || n > max_level()) {
      throw Error(ErrorKind::level_missing, "level " + std::to_string(n) + " not built (max " + std::to_string(max_level()) + ")");
    }
    return levels_[n + 1];
  }
  const MultiMatrixAlgebra& algebra(int n) const { return level(n).algebra; }
  long ambient(int n) const { return algebra(n).ambient_dim(); }

  // Largest level whose compressed dimension respects the cap.
  int extend_to(int n) {
    while (max_level() < n) extend_once();
    return max_level();
  }

  // Embeds a level-`from` matrix into level `to`.
  Mat lift(const Mat& x, int from, int to) const {
    if (from > to) throw Error(ErrorKind::invalid_argument, "cannot lift downwards");
    Mat y = x;
    for (int m = from + 1; m <= to; ++m) y = level(m).prev.from_blocks(diagonal_blocks(level(m - 1).algebra, y));
    return y;
  }

  // E_m: level m -> level m-1.
  Mat expect(int m, const Mat& x) const {
    if (m < 0) throw Error(ErrorKind::invalid_argument, "no expectation below B");
    return block_diag(level(m).prev.to_blocks(x));
  }

  // E_k o E_{k+1} o ... o E_n: level n -> level k-1.
  Mat expectation_chain(int k, int n, const Mat& x) const {
    if (k > n + 1 || k < 0) throw Error(ErrorKind::invalid_argument, "bad expectation chain range");
    Mat y = x;
    for (int m = n; m >= k; --m) y = expect(m, y);
    return y;
  }

  cplx trace(int n, const Mat& x) const { return algebra(n).trace(x); }

  Mat jones(int i) const {
    if (i < 1) throw Error(ErrorKind::invalid_argument, "Jones projections start at 1");
    return level(i).jones;
  }
  Mat jones_at(int i, int at) const { return lift(jones(i), i, at); }

  // e_n e_{n-1} ... e_k, evaluated at level `at` (>= n).
  Mat v_word(int n, int k, int at) const {
    if (k < 1 || k > n) throw Error(ErrorKind::invalid_argument, "v-word needs 1 <= k <= n");
    level(at);
    auto key = std::make_tuple(n, k, at);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = words_.find(key);
      if (it != words_.end()) return it->second;
    }
    Mat y = jones(n);
    for (int i = n - 1; i >= k; --i) y = y * jones_at(i, n);
    y = lift(y, n, at);
    std::lock_guard<std::mutex> lock(mu_);
    words_.emplace(key, y);
    return y;
  }

  // e_[-1,2n+1] = tau^{-n(n+1)/2} (e_{n+1}...e_1)(e_{n+2}...e_2)...(e_{2n+1}...e_{n+1}) at level 2n+1.
  Mat multi_step_jones(int n) const {
    const int top = 2 * n + 1;
    Mat y = identity(ambient(top));
    for (int i = 0; i <= n; ++i) y = y * v_word(n + 1 + i, i + 1, top);
    return std::pow(tau(), -0.5 * n * (n + 1)) * y;
  }

  // Quasi-basis of E_0 at level 0.
  const std::vector<Mat>& quasi_basis() const { return qb_; }

  // quasi_basis_view(shift) lifted from level `shift` to level `at`.
  const std::vector<Mat>& quasi_basis_lifted(int shift, int at) const {
    const std::vector<Mat>& base = shift == 0 ? qb_ : quasi_basis_view(shift);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = qb_lifted_.find({shift, at});
      if (it != qb_lifted_.end()) return it->second;
    }
    std::vector<Mat> out;
    for (auto& l : base) out.push_back(lift(l, shift, at));
    std::lock_guard<std::mutex> lock(mu_);
    return qb_lifted_.emplace(std::make_pair(shift, at), std::move(out)).first->second;
  }

  // Transported quasi-basis of E_j: tau^{-j/2} lambda_i e_1 ... e_j at level j.
  const std::vector<Mat>& quasi_basis_view(int j) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = qb_views_.find(j);
    if (it != qb_views_.end()) return it->second;
    std::vector<Mat> out;
    Mat word = identity(ambient(j));
    for (int i = 1; i <= j; ++i) word = word * jones_at(i, j);
    for (auto& l : qb_) out.push_back(std::pow(tau(), -0.5 * j) * lift(l, 0, j) * word);
    return qb_views_.emplace(j, std::move(out)).first->second;
  }

  // tau^{-n(n+1)/4} lambda_{i_{n+1}} v_n* lambda_{i_n} v_{n-1}* ... v_1* lambda_{i_1}, a quasi-basis of E^n_0.
  std::vector<Mat> composite_quasi_basis(int n, long max_terms = 1 << 16) const {
    double count = std::pow(double(qb_.size()), n + 1);
    if (count > double(max_terms)) throw Error(ErrorKind::dimension_cap, "composite quasi-basis too large");
    std::vector<Mat> cur = qb_;
    for (int k = 1; k <= n; ++k) {
      Mat vs = v_word(k, 1, k).adjoint();
      double scale = std::pow(tau(), -0.5 * k);
      std::vector<Mat> next;
      for (auto& l : qb_) {
        Mat left = scale * lift(l, 0, k) * vs;
        for (auto& q : cur) next.push_back(left * lift(q, k - 1, k));
      }
      cur = std::move(next);
    }
    return cur;
  }

  // A_k' cap A_m with the trace of A_m (k = -1 is B).
  const MultiMatrixAlgebra& relative_commutant(int k, int m) const {
    if (k < -1 || k > m) throw Error(ErrorKind::invalid_argument, "relative commutant needs -1 <= k <= m");
    level(m);
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(k, m);
    auto it = commutants_.find(key);
    if (it != commutants_.end()) return *it->second;
    auto frame = subalgebra_frame_locked(k, m);
    auto rc = std::make_shared<MultiMatrixAlgebra>(relative_commutant_in(*frame, algebra(m)));
    return *commutants_.emplace(key, rc).first->second;
  }

  // A_k as a subalgebra of A_m.
  const MultiMatrixAlgebra& subalgebra_frame(int k, int m) const {
    level(m);
    std::lock_guard<std::mutex> lock(mu_);
    return *subalgebra_frame_locked(k, m);
  }

  TowerView view(int shift) const {
    if (shift < 0 || shift > max_level()) throw Error(ErrorKind::level_missing, "insufficient levels for view");
    return TowerView(*this, shift);
  }

  static std::vector<Mat> diagonal_blocks(const MultiMatrixAlgebra& q, const Mat& x) {
    std::vector<Mat> out;
    for (int k = 0; k < q.num_blocks(); ++k) {
      long o = q.offset(k), w = q.block(k).dim;
      out.push_back(x.block(o, o, w, w));
    }
    return out;
  }

  static Mat block_diag(const std::vector<Mat>& xs) {
    long n = 0;
    for (auto& x : xs) n += x.rows();
    Mat y = Mat::Zero(n, n);
    long o = 0;
    for (auto& x : xs) {
      y.block(o, o, x.rows(), x.cols()) = x;
      o += x.rows();
    }
    return y;
  }

 private:
  std::shared_ptr<const MultiMatrixAlgebra> subalgebra_frame_locked(int k, int m) const {
    auto key = std::make_pair(k, m);
    auto it = frames_.find(key);
    if (it != frames_.end()) return it->second;
    std::shared_ptr<const MultiMatrixAlgebra> f;
    if (k == m) {
      f = std::make_shared<MultiMatrixAlgebra>(algebra(m));
    } else if (k == m - 1) {
      f = std::make_shared<MultiMatrixAlgebra>(level(m).prev);
    } else {
      f = std::make_shared<MultiMatrixAlgebra>(
          image_algebra(algebra(k), [&](const Mat& x) { return lift(x, k, m); }, algebra(m)));
    }
    frames_.emplace(key, f);
    return f;
  }

  void build_base() {
    if (spec_.kind == InclusionSpec::Kind::tensor) {
      const int k = spec_.k, d = spec_.d;
      if (k < 1 || d < 1) throw Error(ErrorKind::invalid_argument, "tensor model needs k >= 1 and d >= 1");
      const double s_b = 1.0 / k, s_a = 1.0 / (double(k) * d);
      Level lb, la;
      lb.n = -1;
      lb.algebra = MultiMatrixAlgebra::block_diagonal({k}, {s_b});
      la.n = 0;
      la.algebra = MultiMatrixAlgebra::block_diagonal({k * d}, {s_a});
      la.prev = MultiMatrixAlgebra(identity(long(k) * d), {k}, {d}, la.algebra.density());
      levels_.push_back(std::move(lb));
      levels_.push_back(std::move(la));
      base_g_ = RealMat::Constant(1, 1, d);
      scalars_.index = double(d) * d;
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
          Mat e = Mat::Zero(d, d);
          e(p, q) = 1.0;
          qb_.push_back(std::sqrt(double(d)) * kron(identity(k), e));
        }
    } else {
      build_explicit_base();
    }
    scalars_.tau = 1.0 / scalars_.index;
    scalars_.delta = std::sqrt(scalars_.index);
  }

  void build_explicit_base() {
    if (spec_.a_generators.empty() || spec_.b_generators.empty())
      throw Error(ErrorKind::invalid_argument, "explicit model needs generators for A and B");
    const long n = spec_.a_generators.front().rows();
    for (auto* list : {&spec_.a_generators, &spec_.b_generators})
      for (auto& g : *list)
        if (g.rows() != n || g.cols() != n) throw Error(ErrorKind::invalid_argument, "generator size mismatch");
    if (!contains_unit(spec_.b_generators))
      throw Error(ErrorKind::invalid_argument, "embedding of B is not unital");
    MultiMatrixAlgebra a = generate_algebra(spec_.a_generators);
    for (auto& b : spec_.b_generators)
      if (a.membership_residual(b) > 1e-8) throw Error(ErrorKind::not_subalgebra, "B generator does not lie in A");
    // Compress A to its minimal faithful form using one copy of each block.
    std::vector<int> adims;
    Mat w(n, 0);
    for (int k = 0; k < a.num_blocks(); ++k) {
      const int nk = a.block(k).dim, mk = a.block(k).mult;
      adims.push_back(nk);
      Mat cols(n, nk);
      for (int r = 0; r < nk; ++r) cols.col(r) = a.frame().col(a.offset(k) + long(r) * mk);
      Mat grown(n, w.cols() + nk);
      grown << w, cols;
      w = grown;
    }
    MultiMatrixAlgebra ac = MultiMatrixAlgebra::block_diagonal(adims, std::vector<double>(adims.size(), 1.0));
    std::vector<Mat> bc;
    for (auto& b : spec_.b_generators) bc.push_back(w.adjoint() * b * w);
    MultiMatrixAlgebra bf = generate_algebra(bc, &ac);
    // Inclusion matrix rows = B blocks, cols = A blocks.
    RealMat g = RealMat::Zero(bf.num_blocks(), ac.num_blocks());
    for (int i = 0; i < bf.num_blocks(); ++i)
      for (int b = 0; b < bf.block(i).mult; ++b) {
        Vec col = bf.frame().col(bf.offset(i) + b);
        for (int j = 0; j < ac.num_blocks(); ++j)
          if (col.segment(ac.offset(j), ac.block(j).dim).norm() > 0.5) g(i, j) += 1.0;
      }
    base_g_ = g;
    outside_ = bf.num_blocks() > 1 || ac.num_blocks() > 1;
    PerronPair pf = pf_eigen(g.transpose() * g);
    RealVec s = pf.vector;
    double norm = 0.0;
    for (int k = 0; k < ac.num_blocks(); ++k) norm += adims[k] * s[k];
    s /= norm;
    RealVec sb = g * s;
    std::vector<double> wa(s.data(), s.data() + s.size()), wb(sb.data(), sb.data() + sb.size());
    std::vector<int> bdims = bf.block_dims(), bmults;
    for (auto& bl : bf.blocks()) bmults.push_back(bl.mult);
    Level lb, la;
    lb.n = -1;
    lb.algebra = MultiMatrixAlgebra::block_diagonal(bdims, wb);
    la.n = 0;
    la.algebra = MultiMatrixAlgebra::block_diagonal(adims, wa);
    la.prev = MultiMatrixAlgebra(bf.frame(), bdims, bmults, la.algebra.density());
    levels_.push_back(std::move(lb));
    levels_.push_back(std::move(la));
    scalars_.index = pf.eigenvalue;
    qb_ = orthogonalized_quasi_basis();
  }

  static bool contains_unit(const std::vector<Mat>& gens) {
    const long n = gens.front().rows();
    detail::SpanBuilder span(n);
    std::vector<Mat> members;
    for (auto& g : gens)
      for (const Mat& x : {g, Mat(g.adjoint())})
        if (span.add(x)) members.push_back(x);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (auto& g : gens)
        for (const Mat& x : {g, Mat(g.adjoint())}) {
          Mat w = members[i] * x;
          if (span.add(w)) members.push_back(w);
        }
    return !span.add(identity(n));
  }

  // Gram-Schmidt for the B-valued pairing <x, y> = E_0(x* y) with pseudo-inverse square roots.
  std::vector<Mat> orthogonalized_quasi_basis(double tol = kDefaultTol) const {
    const MultiMatrixAlgebra& a = algebra(0);
    const MultiMatrixAlgebra& e0 = level(0).prev;
    std::vector<Mat> lambdas;
    auto project = [&](const Mat& x) {
      Mat y = Mat::Zero(x.rows(), x.cols());
      for (auto& l : lambdas) y += l * e0.expect(l.adjoint() * x);
      return y;
    };
    std::vector<Mat> spanning;
    for (int k = 0; k < a.num_blocks(); ++k)
      for (int p = 0; p < a.block(k).dim; ++p)
        for (int q = 0; q < a.block(k).dim; ++q) spanning.push_back(a.matrix_unit(k, p, q));
    for (auto& x : spanning) {
      Mat r = x - project(x);
      if (r.norm() <= 1e-10 * x.norm()) continue;
      Mat h = hermitian_part(e0.expect(r.adjoint() * r));
      Eigen::SelfAdjointEigenSolver<Mat> es(h);
      const RealVec& ev = es.eigenvalues();
      double top = ev.cwiseAbs().maxCoeff();
      RealVec inv(ev.size());
      for (long i = 0; i < ev.size(); ++i) inv[i] = ev[i] > tol * top ? 1.0 / std::sqrt(ev[i]) : 0.0;
      Mat hinv = es.eigenvectors() * inv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
      lambdas.push_back(r * hinv);
    }
    for (auto& x : spanning)
      if (rel_diff(project(x), x, 1.0) > 1e-8)
        throw Error(ErrorKind::not_index_finite, "expectation not of index-finite type at tolerance");
    return lambdas;
  }

  void extend_once() {
    const int m = max_level();
    const Level& cur = level(m);
    const MultiMatrixAlgebra& am = cur.algebra;
    const MultiMatrixAlgebra& f = cur.prev;
    const double tau = scalars_.tau;
    auto owner_of = [&](const Vec& col) {
      long row;
      col.cwiseAbs().maxCoeff(&row);
      for (int k = am.num_blocks() - 1; k >= 0; --k)
        if (row >= am.offset(k)) return k;
      return 0;
    };
    // bs[j][k] = multiplicity columns of block j of A_{m-1} lying in block k of A_m
    const int nj = f.num_blocks(), nk = am.num_blocks();
    std::vector<std::vector<std::vector<int>>> bs(nj, std::vector<std::vector<int>>(nk));
    for (int j = 0; j < nj; ++j)
      for (int b = 0; b < f.block(j).mult; ++b) bs[j][owner_of(f.frame().col(f.offset(j) + b))].push_back(b);
    std::vector<int> new_dims(nj, 0);
    std::vector<std::vector<long>> local_off(nj, std::vector<long>(nk, 0));
    long dim_sum = 0;
    for (int j = 0; j < nj; ++j) {
      for (int k = 0; k < nk; ++k) {
        local_off[j][k] = new_dims[j];
        new_dims[j] += am.block(k).dim * int(bs[j][k].size());
      }
      dim_sum += long(new_dims[j]) * new_dims[j];
    }
    if (dim_sum > cap_) {
      throw Error(ErrorKind::dimension_cap, "level " + std::to_string(m + 1) + " has dimension " + std::to_string(dim_sum) +
                                                " above cap " + std::to_string(cap_));
    }
    std::vector<long> new_off(nj, 0);
    long total = 0;
    for (int j = 0; j < nj; ++j) new_off[j] = total, total += new_dims[j];
    std::vector<double> new_w;
    for (int j = 0; j < nj; ++j) new_w.push_back(tau * f.block(j).weight);

    Level next;
    next.n = m + 1;
    next.algebra = MultiMatrixAlgebra::block_diagonal(new_dims, new_w);

    // A_m inside A_{m+1}: block k, row r, multiplicity (j, c).
    std::vector<int> mults(nk, 0);
    for (int k = 0; k < nk; ++k)
      for (int j = 0; j < nj; ++j) mults[k] += int(bs[j][k].size());
    Mat u = Mat::Zero(total, total);
    long col = 0;
    for (int k = 0; k < nk; ++k)
      for (int r = 0; r < am.block(k).dim; ++r)
        for (int j = 0; j < nj; ++j) {
          const long g = long(bs[j][k].size());
          for (long c = 0; c < g; ++c) u(new_off[j] + local_off[j][k] + r * g + c, col++) = 1.0;
        }
    next.prev = MultiMatrixAlgebra(u, am.block_dims(), mults, next.algebra.density());

    // e_{m+1} = sum_{j,a} |w_{j,a}><w_{j,a}| with w_{j,a} the normalized image of the matrix unit E^{(j)}_{a0} f_j.
    Mat e = Mat::Zero(total, total);
    for (int j = 0; j < nj; ++j) {
      const int pj = f.block(j).dim, mj = f.block(j).mult;
      const double sj = f.block(j).weight;
      Mat ws = Mat::Zero(new_dims[j], pj);
      for (int a = 0; a < pj; ++a)
        for (int k = 0; k < nk; ++k) {
          const long g = long(bs[j][k].size());
          const double sk = am.block(k).weight;
          for (long c = 0; c < g; ++c) {
            const Vec fc = f.frame().col(f.offset(j) + long(a) * mj + bs[j][k][c]);
            for (int r = 0; r < am.block(k).dim; ++r)
              ws(local_off[j][k] + r * g + c, a) = std::sqrt(sk / sj) * fc[am.offset(k) + r];
          }
        }
      e.block(new_off[j], new_off[j], new_dims[j], new_dims[j]) = ws * ws.adjoint();
    }
    next.jones = e;
    levels_.push_back(std::move(next));
    self_check(m + 1);
  }

  // Cheap structural checks recorded per level.
  void self_check(int n) {
    Level& lv = levels_[n + 1];
    const Mat& e = lv.jones;
    const double tau = scalars_.tau;
    lv.checks["projection"] = std::max(rel_diff(e * e, e), rel_diff(e.adjoint(), e));
    lv.checks["expectation_of_jones"] = rel_diff(expect(n, e), tau * identity(ambient(n - 1)));
    Rng rng(0xC0FFEE + n);
    Mat x = algebra(n - 1).random(rng);
    cplx lhs = trace(n, lift(x, n - 1, n) * e);
    cplx rhs = tau * trace(n - 1, x);
    lv.checks["markov"] = std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs) + std::abs(lhs));
    if (n >= 2) {
      Mat ep = jones_at(n - 1, n);
      lv.checks["temperley_lieb"] = std::max(rel_diff(e * ep * e, tau * e), rel_diff(ep * e * ep, tau * ep));
    }
    double worst = 0.0;
    for (auto& [k, v] : lv.checks) worst = std::max(worst, v);
    if (worst > 1e-6) throw Error(ErrorKind::invalid_argument, "basic construction self-check failed at level " + std::to_string(n));
  }

  InclusionSpec spec_;
  long cap_;
  TowerScalars scalars_;
  std::vector<Level> levels_;  // levels_[n+1] holds A_n
  std::vector<Mat> qb_;
  RealMat base_g_;
  bool outside_ = false;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const MultiMatrixAlgebra>> commutants_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const MultiMatrixAlgebra>> frames_;
  mutable std::map<int, std::vector<Mat>> qb_views_;
  mutable std::map<std::pair<int, int>, std::vector<Mat>> qb_lifted_;
  mutable std::map<std::tuple<int, int, int>, Mat> words_;
};

inline double TowerView::tau() const { return t_->tau(); }
inline int TowerView::max_level() const { return t_->max_level() - shift_; }
inline const MultiMatrixAlgebra& TowerView::algebra(int m) const { return t_->algebra(shift_ + m); }
inline Mat TowerView::jones(int i, int at) const { return t_->jones_at(shift_ + i, shift_ + at); }
inline Mat TowerView::lift(const Mat& x, int from, int to) const { return t_->lift(x, shift_ + from, shift_ + to); }
inline Mat TowerView::expect(int m, const Mat& x) const { return t_->expect(shift_ + m, x); }
inline Mat TowerView::expect_chain(int k, int n, const Mat& x) const {
  return t_->expectation_chain(shift_ + k, shift_ + n, x);
}
inline Mat TowerView::v_word(int n, int k, int at) const {
  return t_->v_word(shift_ + n, shift_ + k, shift_ + at);
}
inline const std::vector<Mat>& TowerView::quasi_basis() const {
  return shift_ == 0 ? t_->quasi_basis() : t_->quasi_basis_view(shift_);
}
inline const std::vector<Mat>& TowerView::quasi_basis(int at) const { return t_->quasi_basis_lifted(shift_, shift_ + at); }
inline const MultiMatrixAlgebra& TowerView::plus_box(int n) const { return t_->relative_commutant(shift_ - 1, shift_ + n); }
inline const MultiMatrixAlgebra& TowerView::minus_box(int n) const { return t_->relative_commutant(shift_, shift_ + n); }
inline const MultiMatrixAlgebra& TowerView::relative_commutant(int k, int m) const {
  return t_->relative_commutant(shift_ + k, shift_ + m);
}

}  // namespace jwt
