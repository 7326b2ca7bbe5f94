#pragma once

#include "jwt/core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>

namespace jwt {

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

struct BlockInfo {
  int dim = 1;
  int mult = 1;
  double weight = 1.0;  // trace of a minimal projection
};

struct TraceState {
  std::vector<double> weights;
};

// A unital *-subalgebra Q of M_N held as Q = U (sum_k M_{n_k} (x) 1_{m_k}) U*, with U unitary.
// Frame columns of block k are ordered (a, b): row index a < n_k, multiplicity index b < m_k.
// The density D (positive, commuting with Q, Tr D = 1) defines tr(x) = Tr(D x) and the
// trace-preserving expectation onto Q.
class MultiMatrixAlgebra {
 public:
  MultiMatrixAlgebra() = default;

  MultiMatrixAlgebra(Mat frame, const std::vector<int>& dims, const std::vector<int>& mults, Mat density)
      : n_(frame.rows()), u_(std::move(frame)), d_(std::move(density)) {
    if (dims.size() != mults.size()) throw Error(ErrorKind::invalid_argument, "block dims/mults size mismatch");
    long cols = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (dims[k] <= 0 || mults[k] <= 0) throw Error(ErrorKind::invalid_argument, "block sizes must be positive");
      offset_.push_back(cols);
      cols += long(dims[k]) * mults[k];
      blocks_.push_back({dims[k], mults[k], 0.0});
    }
    if (cols != n_ || u_.cols() != n_) throw Error(ErrorKind::invalid_argument, "frame is not square of the stated size");
    if (d_.rows() != n_ || d_.cols() != n_) throw Error(ErrorKind::invalid_argument, "density size mismatch");
    detect_permutation();
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      Mat c = first_columns(int(k));
      Mat dk = c.adjoint() * d_ * c;
      block_density_.push_back(dk);
      blocks_[k].weight = dk.trace().real();
      diag_density_.push_back(dk.isDiagonal(1e-14));
    }
  }

  // sum_k M_{n_k} on C^{sum n_k}, identity frame, trace weights s_k.
  static MultiMatrixAlgebra block_diagonal(const std::vector<int>& dims, const std::vector<double>& weights) {
    long n = std::accumulate(dims.begin(), dims.end(), 0L);
    Mat d = Mat::Zero(n, n);
    long off = 0;
    for (std::size_t k = 0; k < dims.size(); ++k)
      for (int a = 0; a < dims[k]; ++a, ++off) d(off, off) = weights[k];
    return MultiMatrixAlgebra(identity(n), dims, std::vector<int>(dims.size(), 1), d);
  }

  // Full M_N with normalized trace.
  static MultiMatrixAlgebra full(int n) { return block_diagonal({n}, {1.0 / n}); }

  long ambient_dim() const { return n_; }
  int num_blocks() const { return int(blocks_.size()); }
  const std::vector<BlockInfo>& blocks() const { return blocks_; }
  const BlockInfo& block(int k) const { return blocks_[k]; }
  long offset(int k) const { return offset_[k]; }
  const Mat& frame() const { return u_; }
  const Mat& density() const { return d_; }
  const std::optional<std::vector<long>>& permutation() const { return perm_; }
  bool identity_frame() const {
    if (!perm_) return false;
    for (long i = 0; i < n_; ++i)
      if ((*perm_)[i] != i) return false;
    return true;
  }
  bool multiplicity_free() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const BlockInfo& b) { return b.mult == 1; });
  }

  long dimension() const {
    long s = 0;
    for (auto& b : blocks_) s += long(b.dim) * b.dim;
    return s;
  }
  std::vector<int> block_dims() const {
    std::vector<int> v;
    for (auto& b : blocks_) v.push_back(b.dim);
    return v;
  }
  TraceState trace_state() const {
    TraceState t;
    for (auto& b : blocks_) t.weights.push_back(b.weight);
    return t;
  }

  // Frame columns of block k (N x n_k m_k).
  Mat block_columns(int k) const { return u_.middleCols(offset_[k], long(blocks_[k].dim) * blocks_[k].mult); }

  // Block components of E_Q(x), i.e. the trace-preserving compression of x.
  std::vector<Mat> to_blocks(const Mat& x) const {
    std::vector<Mat> out;
    out.reserve(blocks_.size());
    for (int k = 0; k < num_blocks(); ++k) {
      const int n = blocks_[k].dim, m = blocks_[k].mult;
      Mat xk = compress(x, k);
      const Mat& dk = block_density_[k];
      const double tr_dk = blocks_[k].weight;
      Mat e(n, n);
      for (int a = 0; a < n; ++a)
        for (int a2 = 0; a2 < n; ++a2) {
          cplx s = 0;
          if (diag_density_[k]) {
            for (int b = 0; b < m; ++b) s += dk(b, b) * xk(long(a) * m + b, long(a2) * m + b);
          } else {
            for (int b = 0; b < m; ++b)
              for (int b2 = 0; b2 < m; ++b2) s += dk(b, b2) * xk(long(a) * m + b2, long(a2) * m + b);
          }
          e(a, a2) = s / tr_dk;
        }
      out.push_back(std::move(e));
    }
    return out;
  }

  Mat from_blocks(const std::vector<Mat>& xs) const {
    if (int(xs.size()) != num_blocks()) throw Error(ErrorKind::invalid_argument, "wrong number of blocks");
    Mat y = Mat::Zero(n_, n_);
    for (int k = 0; k < num_blocks(); ++k) {
      const int n = blocks_[k].dim, m = blocks_[k].mult;
      const long off = offset_[k];
      if (perm_) {
        const auto& p = *perm_;
        for (int a = 0; a < n; ++a)
          for (int a2 = 0; a2 < n; ++a2) {
            cplx v = xs[k](a, a2);
            if (v == cplx(0)) continue;
            for (int b = 0; b < m; ++b) y(p[off + long(a) * m + b], p[off + long(a2) * m + b]) = v;
          }
      } else {
        Mat c = block_columns(k);
        Mat inner = kron(xs[k], Mat::Identity(m, m));
        y += c * inner * c.adjoint();
      }
    }
    return y;
  }

  Mat expect(const Mat& x) const { return from_blocks(to_blocks(x)); }

  cplx trace(const Mat& x) const { return d_.cwiseProduct(x.transpose()).sum(); }

  double membership_residual(const Mat& x) const {
    double nx = x.norm();
    if (nx == 0.0) return 0.0;
    return (x - expect(x)).norm() / nx;
  }

  Mat unit() const {
    std::vector<Mat> xs;
    for (auto& b : blocks_) xs.push_back(Mat::Identity(b.dim, b.dim));
    return from_blocks(xs);
  }

  Mat matrix_unit(int k, int a, int b) const {
    std::vector<Mat> xs;
    for (auto& bl : blocks_) xs.push_back(Mat::Zero(bl.dim, bl.dim));
    xs[k](a, b) = 1.0;
    return from_blocks(xs);
  }

  Mat central_projection(int k) const {
    std::vector<Mat> xs;
    for (int j = 0; j < num_blocks(); ++j)
      xs.push_back(j == k ? Mat(Mat::Identity(blocks_[j].dim, blocks_[j].dim)) : Mat(Mat::Zero(blocks_[j].dim, blocks_[j].dim)));
    return from_blocks(xs);
  }

  Mat minimal_projection(int k) const { return matrix_unit(k, 0, 0); }

  // tr-orthonormal basis s_k^{-1/2} E^{(k)}_{ab}; only sensible for small algebras.
  std::vector<Mat> basis() const {
    std::vector<Mat> out;
    for (int k = 0; k < num_blocks(); ++k)
      for (int a = 0; a < blocks_[k].dim; ++a)
        for (int b = 0; b < blocks_[k].dim; ++b) out.push_back(matrix_unit(k, a, b) / std::sqrt(blocks_[k].weight));
    return out;
  }

  // Coordinates in the tr-orthonormal basis are i.i.d. standard complex Gaussians.
  Mat random(Rng& rng) const {
    std::vector<Mat> xs;
    for (auto& b : blocks_) xs.push_back(rng.gaussian_matrix(b.dim, b.dim) / std::sqrt(b.weight));
    return from_blocks(xs);
  }

  Mat random_hermitian(Rng& rng) const { return hermitian_part(random(rng)); }

  // Same algebra, blocks sorted by (dim asc, weight desc, fingerprint).
  MultiMatrixAlgebra canonical() const {
    const int nb = num_blocks();
    std::vector<RealVec> fp(nb);
    for (int k = 0; k < nb; ++k) fp[k] = block_columns(k).cwiseAbs2().rowwise().sum();
    std::vector<int> order(nb);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
      if (blocks_[i].dim != blocks_[j].dim) return blocks_[i].dim < blocks_[j].dim;
      double wi = blocks_[i].weight, wj = blocks_[j].weight;
      if (std::abs(wi - wj) > 1e-9 * std::max(wi, wj)) return wi > wj;
      for (long r = 0; r < n_; ++r)
        if (std::abs(fp[i][r] - fp[j][r]) > 1e-9) return fp[i][r] > fp[j][r];
      return false;
    });
    Mat u(n_, n_);
    std::vector<int> dims, mults;
    long c = 0;
    for (int k : order) {
      long w = long(blocks_[k].dim) * blocks_[k].mult;
      u.middleCols(c, w) = block_columns(k);
      c += w;
      dims.push_back(blocks_[k].dim);
      mults.push_back(blocks_[k].mult);
    }
    return MultiMatrixAlgebra(u, dims, mults, d_);
  }

  // Same algebra with another density (for restricting a bigger algebra's trace).
  MultiMatrixAlgebra with_density(const Mat& d) const {
    std::vector<int> dims, mults;
    for (auto& b : blocks_) dims.push_back(b.dim), mults.push_back(b.mult);
    return MultiMatrixAlgebra(u_, dims, mults, d);
  }

 private:
  Mat first_columns(int k) const { return u_.middleCols(offset_[k], blocks_[k].mult); }

  Mat compress(const Mat& x, int k) const {
    const long w = long(blocks_[k].dim) * blocks_[k].mult;
    const long off = offset_[k];
    if (perm_) {
      const auto& p = *perm_;
      Mat out(w, w);
      for (long j = 0; j < w; ++j)
        for (long i = 0; i < w; ++i) out(i, j) = x(p[off + i], p[off + j]);
      return out;
    }
    Mat c = block_columns(k);
    return c.adjoint() * x * c;
  }

  void detect_permutation() {
    std::vector<long> p(n_);
    for (long j = 0; j < n_; ++j) {
      long hit = -1;
      for (long i = 0; i < n_; ++i) {
        cplx v = u_(i, j);
        if (v == cplx(1.0)) {
          if (hit >= 0) return;
          hit = i;
        } else if (v != cplx(0.0)) {
          return;
        }
      }
      if (hit < 0) return;
      p[j] = hit;
    }
    perm_ = std::move(p);
  }

  long n_ = 0;
  Mat u_;
  Mat d_;
  std::vector<BlockInfo> blocks_;
  std::vector<long> offset_;
  std::vector<Mat> block_density_;
  std::vector<bool> diag_density_;
  std::optional<std::vector<long>> perm_;
};

struct Element {
  std::shared_ptr<const MultiMatrixAlgebra> algebra;
  Mat mat;
  double residual() const { return algebra->membership_residual(mat); }
};

inline Mat conditional_expectation(const Mat& x, const MultiMatrixAlgebra& sub) { return sub.expect(x); }

// Singular values of every block of x (blocks taken in q).
inline std::vector<RealVec> block_singular_values(const Mat& x, const MultiMatrixAlgebra& q) {
  std::vector<RealVec> out;
  for (auto& b : q.to_blocks(x)) {
    Eigen::JacobiSVD<Mat> svd(b);
    out.push_back(svd.singularValues());
  }
  return out;
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// tr(|x|^p)^{1/p}; p = inf gives the operator norm.
inline double p_norm(const Mat& x, const MultiMatrixAlgebra& q, double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::invalid_argument, "p must be >= 1");
  if (p == 2.0) {
    double acc = 0.0;
    auto bs = q.to_blocks(x);
    for (int k = 0; k < q.num_blocks(); ++k) acc += q.block(k).weight * bs[k].squaredNorm();
    return std::sqrt(acc);
  }
  auto sv = block_singular_values(x, q);
  if (std::isinf(p)) {
    double m = 0.0;
    for (auto& s : sv)
      if (s.size()) m = std::max(m, s.maxCoeff());
    return m;
  }
  double acc = 0.0;
  for (int k = 0; k < q.num_blocks(); ++k)
    for (long i = 0; i < sv[k].size(); ++i) acc += q.block(k).weight * std::pow(sv[k][i], p);
  return std::pow(acc, 1.0 / p);
}

// Trace of the range projection; rank cut at tol * sigma_max.
inline double support_size(const Mat& x, const MultiMatrixAlgebra& q, double tol = kDefaultTol) {
  auto sv = block_singular_values(x, q);
  double smax = 0.0;
  for (auto& s : sv)
    if (s.size()) smax = std::max(smax, s.maxCoeff());
  if (smax == 0.0) return 0.0;
  double acc = 0.0;
  for (int k = 0; k < q.num_blocks(); ++k)
    for (long i = 0; i < sv[k].size(); ++i)
      if (sv[k][i] > tol * smax) acc += q.block(k).weight;
  return acc;
}

// tr(eta(y)), eta(t) = -t log t.
inline double entropy_functional(const Mat& y, const MultiMatrixAlgebra& q, double tol = kDefaultTol) {
  auto blocks = q.to_blocks(y);
  double scale = 1.0;
  std::vector<RealVec> evs;
  for (auto& b : blocks) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(b), Eigen::EigenvaluesOnly);
    evs.push_back(es.eigenvalues());
    if (es.eigenvalues().size()) scale = std::max(scale, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  double acc = 0.0;
  for (int k = 0; k < q.num_blocks(); ++k)
    for (long i = 0; i < evs[k].size(); ++i) {
      double t = evs[k][i];
      if (t < -tol * scale) throw Error(ErrorKind::invalid_argument, "entropy functional of a non-positive element");
      acc += q.block(k).weight * eta(t);
    }
  return acc;
}

namespace detail {

inline Vec vec(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }
inline Mat unvec(const Vec& v, long n) { return Eigen::Map<const Mat>(v.data(), n, n); }

// Orthonormal (Frobenius) basis of a growing span, stored as columns.
class SpanBuilder {
 public:
  explicit SpanBuilder(long n) : n_(n), q_(n * n, 0) {}
  bool add(const Mat& m, double rel = 1e-8) {
    Vec v = vec(m);
    double nv = v.norm();
    if (nv == 0.0) return false;
    Vec r = v;
    for (int pass = 0; pass < 2; ++pass)
      if (q_.cols()) r -= q_ * (q_.adjoint() * r);
    double nr = r.norm();
    if (nr <= rel * nv) return false;
    q_.conservativeResize(Eigen::NoChange, q_.cols() + 1);
    q_.col(q_.cols() - 1) = r / nr;
    return true;
  }
  long size() const { return q_.cols(); }
  Mat element(long i) const { return unvec(q_.col(i), n_); }
  Mat combination(const Vec& c) const { return unvec(q_ * c, n_); }
  const Mat& columns() const { return q_; }

 private:
  long n_;
  Mat q_;
};

// Nullspace of a (rows >= 1); throws when the rank decision is ambiguous.
inline Mat nullspace(const Mat& a, double tol, const char* what) {
  const long cols = a.cols();
  Mat m = a;
  if (m.rows() < cols) {
    Mat pad = Mat::Zero(cols, cols);
    pad.topRows(m.rows()) = m;
    m = pad;
  }
  // JacobiSVD: the divide-and-conquer SVD of Eigen 3.4.0 misreports clustered singular values.
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const RealVec& s = svd.singularValues();
  double smax = s.size() ? s[0] : 0.0;
  if (smax == 0.0) return Mat::Identity(cols, cols);
  long rank = 0;
  for (long i = 0; i < s.size(); ++i) {
    if (s[i] > tol * smax) {
      ++rank;
      if (s[i] <= 1e3 * tol * smax) {
        std::ostringstream os;
        os << what << ": rank ambiguous at tolerance (sigma=" << s[i] << ", sigma_max=" << smax << ", tol=" << tol << ")";
        throw Error(ErrorKind::not_semisimple, os.str());
      }
    }
  }
  return svd.matrixV().rightCols(cols - rank);
}

// Groups sorted eigenvalues into clusters; returns cluster start indices plus end.
inline std::vector<long> cluster(const RealVec& ev, double gap) {
  std::vector<long> starts{0};
  for (long i = 1; i < ev.size(); ++i)
    if (ev[i] - ev[i - 1] > gap) starts.push_back(i);
  starts.push_back(ev.size());
  return starts;
}

// Orthonormal basis of range(z y) for an isometry y and a projection z commuting with yy*.
inline Mat range_part(const Mat& zy) {
  if (zy.cols() == 0) return zy;
  Eigen::JacobiSVD<Mat> svd(zy, Eigen::ComputeThinU);
  long r = 0;
  for (long i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 0.5) ++r;
  return svd.matrixU().leftCols(r);
}

// Splits the columns of an isometry y into pieces lying in single blocks of the ambient.
inline Mat adapt_to(const Mat& y, const MultiMatrixAlgebra* ambient) {
  if (!ambient || ambient->num_blocks() == 1) return y;
  Mat out(y.rows(), 0);
  for (int j = 0; j < ambient->num_blocks(); ++j) {
    Mat part = range_part(ambient->central_projection(j) * y);
    Mat grown(y.rows(), out.cols() + part.cols());
    grown << out, part;
    out = grown;
  }
  return out;
}

}  // namespace detail

// The *-algebra spanned by elems (assumed closed under products and adjoints), decomposed as
// a frame. Frame columns are adapted to the blocks of `ambient` when given.
inline MultiMatrixAlgebra block_decompose(const std::vector<Mat>& elems, const MultiMatrixAlgebra* ambient = nullptr,
                                          Mat density = Mat(), double tol = kDefaultTol) {
  if (elems.empty()) throw Error(ErrorKind::invalid_argument, "empty spanning set");
  const long n = elems.front().rows();
  if (density.size() == 0) density = ambient ? ambient->density() : Mat(identity(n) / double(n));
  detail::SpanBuilder span(n);
  span.add(identity(n));
  for (auto& e : elems) {
    span.add(e);
    span.add(e.adjoint());
  }
  const long d = span.size();
  Rng rng(0x5eed);
  auto random_in_span = [&]() {
    Vec c(d);
    for (long i = 0; i < d; ++i) c[i] = rng.gaussian();
    return span.combination(c);
  };

  // Center = elements of the span commuting with a few generic elements.
  std::vector<Mat> probes;
  for (int i = 0; i < 3; ++i) probes.push_back(random_in_span());
  Mat c(3 * n * n, d);
  for (long i = 0; i < d; ++i) {
    Mat b = span.element(i);
    for (int t = 0; t < 3; ++t) c.block(t * n * n, i, n * n, 1) = detail::vec(b * probes[t] - probes[t] * b);
  }
  Mat cn = detail::nullspace(c, tol, "center extraction");
  const long nc = cn.cols();
  Mat h = Mat::Zero(n, n);
  for (long l = 0; l < nc; ++l) h += rng.normal() * hermitian_part(span.combination(cn.col(l)));
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(h));
  RealVec ev = es.eigenvalues();
  double spread = std::max(1.0, ev.cwiseAbs().maxCoeff());
  auto starts = detail::cluster(ev, 1e-6 * spread);
  if (long(starts.size()) - 1 != nc) {
    std::ostringstream os;
    os << "center dimension " << nc << " but " << starts.size() - 1 << " spectral clusters";
    throw Error(ErrorKind::not_semisimple, os.str());
  }

  std::vector<Mat> cols;
  std::vector<int> dims, mults;
  for (long k = 0; k + 1 < long(starts.size()); ++k) {
    Mat vk = es.eigenvectors().middleCols(starts[k], starts[k + 1] - starts[k]);
    Mat hk = vk.adjoint() * hermitian_part(random_in_span()) * vk;
    Eigen::SelfAdjointEigenSolver<Mat> ek(hermitian_part(hk));
    auto sub = detail::cluster(ek.eigenvalues(), 1e-6 * std::max(1.0, ek.eigenvalues().cwiseAbs().maxCoeff()));
    const int nk = int(sub.size()) - 1;
    const long mk = sub[1] - sub[0];
    for (int a = 0; a < nk; ++a)
      if (sub[a + 1] - sub[a] != mk) throw Error(ErrorKind::not_semisimple, "unequal multiplicities inside a block");
    std::vector<Mat> proj;
    for (int a = 0; a < nk; ++a) {
      Mat w = vk * ek.eigenvectors().middleCols(sub[a], mk);
      proj.push_back(w * w.adjoint());
    }
    Mat psi = detail::adapt_to(vk * ek.eigenvectors().middleCols(0, mk), ambient);
    if (psi.cols() != mk) throw Error(ErrorKind::not_subalgebra, "algebra is not adapted to the ambient blocks");
    Mat frame(n, long(nk) * mk);
    for (int a = 0; a < nk; ++a) {
      Mat unit_a0;
      if (a == 0) {
        unit_a0 = proj[0];
      } else {
        for (int attempt = 0;; ++attempt) {
          Mat y = proj[a] * random_in_span() * proj[0];
          double cc = y.squaredNorm() / double(mk);
          if (cc > 1e-8) {
            unit_a0 = y / std::sqrt(cc);
            break;
          }
          if (attempt > 8) throw Error(ErrorKind::not_semisimple, "failed to build matrix units");
        }
      }
      Mat img = unit_a0 * psi;
      for (long b = 0; b < mk; ++b) frame.col(long(a) * mk + b) = img.col(b);
    }
    cols.push_back(frame);
    dims.push_back(nk);
    mults.push_back(int(mk));
  }
  Mat u(n, n);
  long off = 0;
  for (auto& f : cols) {
    u.middleCols(off, f.cols()) = f;
    off += f.cols();
  }
  return MultiMatrixAlgebra(u, dims, mults, density).canonical();
}

// The algebra generated by gens (plus unit), via closure under words.
inline MultiMatrixAlgebra generate_algebra(const std::vector<Mat>& gens, const MultiMatrixAlgebra* ambient = nullptr,
                                           Mat density = Mat(), double tol = kDefaultTol) {
  if (gens.empty()) throw Error(ErrorKind::invalid_argument, "no generators");
  const long n = gens.front().rows();
  std::vector<Mat> g;
  for (auto& x : gens) g.push_back(x), g.push_back(x.adjoint());
  detail::SpanBuilder span(n);
  std::vector<Mat> members{identity(n)};
  span.add(identity(n));
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (auto& x : g) {
      Mat w = members[i] * x;
      if (span.add(w)) members.push_back(w);
    }
  }
  return block_decompose(members, ambient, std::move(density), tol);
}

// {x in ambient : xg = gx for all g}, by nullspace over the ambient matrix units.
inline MultiMatrixAlgebra commutant(const std::vector<Mat>& generators, const MultiMatrixAlgebra& ambient,
                                    double tol = kDefaultTol, long max_ambient_dim = 64) {
  const long n = ambient.ambient_dim();
  if (n > max_ambient_dim) {
    std::ostringstream os;
    os << "commutant nullspace over ambient dimension " << n << " exceeds cap " << max_ambient_dim;
    throw Error(ErrorKind::dimension_cap, os.str());
  }
  std::vector<Mat> units;
  for (int k = 0; k < ambient.num_blocks(); ++k)
    for (int a = 0; a < ambient.block(k).dim; ++a)
      for (int b = 0; b < ambient.block(k).dim; ++b) units.push_back(ambient.matrix_unit(k, a, b));
  const long d = long(units.size());
  std::vector<Mat> gens;
  for (auto& g : generators)
    if (rel_diff(g, g.trace() / double(n) * identity(n), 1.0) > 0) gens.push_back(g);
  if (gens.empty()) return ambient;
  Mat c(long(gens.size()) * n * n, d);
  for (long i = 0; i < d; ++i)
    for (std::size_t t = 0; t < gens.size(); ++t)
      c.block(long(t) * n * n, i, n * n, 1) = detail::vec(units[i] * gens[t] - gens[t] * units[i]);
  Mat ns = detail::nullspace(c, tol, "commutant");
  std::vector<Mat> elems;
  for (long l = 0; l < ns.cols(); ++l) {
    Mat z = Mat::Zero(n, n);
    for (long i = 0; i < d; ++i) z += ns(i, l) * units[i];
    elems.push_back(z);
  }
  return block_decompose(elems, &ambient, ambient.density(), tol);
}

// Image of src under a unital injective *-homomorphism phi into the ambient `target`
// (frame columns adapted to target's blocks). Source block order is kept.
inline MultiMatrixAlgebra image_algebra(const MultiMatrixAlgebra& src, const std::function<Mat(const Mat&)>& phi,
                                        const MultiMatrixAlgebra& target) {
  const long n = target.ambient_dim();
  const bool diag_target = target.identity_frame();
  Mat u(n, n);
  long off = 0;
  std::vector<int> dims, mults;
  for (int k = 0; k < src.num_blocks(); ++k) {
    const int nk = src.block(k).dim;
    Mat p = phi(src.matrix_unit(k, 0, 0));
    Mat psi(n, 0);
    for (int j = 0; j < target.num_blocks(); ++j) {
      Mat part;
      if (diag_target) {
        const long o = target.offset(j), w = target.block(j).dim;
        Mat pj = hermitian_part(p.block(o, o, w, w));
        Mat local;
        if (pj.isDiagonal(1e-12)) {
          std::vector<long> idx;
          for (long i = 0; i < w; ++i)
            if (pj(i, i).real() > 0.5) idx.push_back(i);
          local = Mat::Zero(w, long(idx.size()));
          for (std::size_t c = 0; c < idx.size(); ++c) local(idx[c], long(c)) = 1.0;
        } else {
          Eigen::SelfAdjointEigenSolver<Mat> es(pj);
          long r = 0;
          for (long i = 0; i < w; ++i)
            if (es.eigenvalues()[i] > 0.5) ++r;
          local = es.eigenvectors().rightCols(r);
        }
        part = Mat::Zero(n, local.cols());
        part.middleRows(o, w) = local;
      } else {
        Mat z = target.central_projection(j);
        Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(z * p * z));
        long r = 0;
        for (long i = 0; i < n; ++i)
          if (es.eigenvalues()[i] > 0.5) ++r;
        part = es.eigenvectors().rightCols(r);
      }
      Mat grown(n, psi.cols() + part.cols());
      grown << psi, part;
      psi = grown;
    }
    const long mk = psi.cols();
    if (mk == 0) continue;
    if (off + long(nk) * mk > n) throw Error(ErrorKind::not_subalgebra, "image frame overflows the ambient space");
    for (int a = 0; a < nk; ++a) {
      Mat img = (a == 0 ? p : phi(src.matrix_unit(k, a, 0))) * psi;
      u.middleCols(off + long(a) * mk, mk) = img;
    }
    off += long(nk) * mk;
    dims.push_back(nk);
    mults.push_back(int(mk));
  }
  if (off != n) throw Error(ErrorKind::not_subalgebra, "image of the map is not unital");
  return MultiMatrixAlgebra(u, dims, mults, target.density());
}

// Q' within a multiplicity-free, identity-frame ambient R, read off from Q's frame.
inline MultiMatrixAlgebra relative_commutant_in(const MultiMatrixAlgebra& q, const MultiMatrixAlgebra& r) {
  if (!r.identity_frame() || !r.multiplicity_free())
    throw Error(ErrorKind::invalid_argument, "structured relative commutant needs a block-diagonal ambient");
  const long n = r.ambient_dim();
  auto block_of_row = [&](long row) {
    for (int j = r.num_blocks() - 1; j >= 0; --j)
      if (row >= r.offset(j)) return j;
    return 0;
  };
  // owner[i][b] = R-block holding multiplicity column b of Q-block i
  std::vector<std::vector<int>> owner(q.num_blocks());
  for (int i = 0; i < q.num_blocks(); ++i) {
    const int m = q.block(i).mult;
    for (int b = 0; b < m; ++b) {
      Vec col = q.frame().col(q.offset(i) + b);
      long row;
      col.cwiseAbs().maxCoeff(&row);
      int j = block_of_row(row);
      const long o = r.offset(j), w = r.block(j).dim;
      if (col.segment(o, w).norm() < 1.0 - 1e-8)
        throw Error(ErrorKind::not_subalgebra, "subalgebra frame is not adapted to the ambient blocks");
      owner[i].push_back(j);
    }
  }
  Mat u(n, n);
  long off = 0;
  std::vector<int> dims, mults;
  for (int j = 0; j < r.num_blocks(); ++j)
    for (int i = 0; i < q.num_blocks(); ++i) {
      std::vector<int> bs;
      for (int b = 0; b < q.block(i).mult; ++b)
        if (owner[i][b] == j) bs.push_back(b);
      if (bs.empty()) continue;
      const int ni = q.block(i).dim, mi = q.block(i).mult;
      for (std::size_t c = 0; c < bs.size(); ++c)
        for (int a = 0; a < ni; ++a) u.col(off + long(c) * ni + a) = q.frame().col(q.offset(i) + long(a) * mi + bs[c]);
      off += long(bs.size()) * ni;
      dims.push_back(int(bs.size()));
      mults.push_back(ni);
    }
  return MultiMatrixAlgebra(u, dims, mults, r.density()).canonical();
}

}  // namespace jwt
