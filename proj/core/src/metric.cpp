#include "meshgeo/metric.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "meshgeo/admissibility.hpp"
#include "meshgeo/dual.hpp"
#include "meshgeo/errors.hpp"

namespace meshgeo {

namespace {

template <class T>
struct V2 {
  T x, y;
};

template <class T> V2<T> operator+(const V2<T>& a, const V2<T>& b) { return {a.x + b.x, a.y + b.y}; }
template <class T> V2<T> operator-(const V2<T>& a, const V2<T>& b) { return {a.x - b.x, a.y - b.y}; }
template <class T> V2<T> operator-(const V2<T>& a) { return {-a.x, -a.y}; }
template <class T> V2<T> operator*(const T& s, const V2<T>& a) { return {s * a.x, s * a.y}; }
template <class T> T dot(const V2<T>& a, const V2<T>& b) { return a.x * b.x + a.y * b.y; }
template <class T> T cross(const V2<T>& a, const V2<T>& b) { return a.x * b.y - a.y * b.x; }
template <class T> V2<T> rot(const V2<T>& a) { return {a.y, -a.x}; }

template <class T>
T norm(const V2<T>& a) {
  using std::sqrt;
  return sqrt(a.x * a.x + a.y * a.y);
}

template <class T>
T pairwise_sum(std::span<const T> xs) {
  if (xs.empty()) return T(0.0);
  if (xs.size() <= 8) {
    T s = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) s += xs[i];
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

struct Context {
  const ConnectivityComplex& complex;
  const std::vector<BoundaryPair>& pairs;
  const MetricParams& params;
};

template <class T>
class Evaluator {
 public:
  Evaluator(const Context& ctx, std::span<const T> q, std::vector<T>* grad) : ctx_(ctx), q_(q), grad_(grad) {
    if (grad_) grad_->assign(q.size(), T(0.0));
  }

  T run() {
    const MetricParams& p = ctx_.params;
    if (p.beta1 != 0.0) {
      for (const Triangle& t : ctx_.complex.triangles()) add_heights(t);
    }
    if (p.beta2 != 0.0) {
      for (const BoundaryPair& bp : ctx_.pairs) add_pair(bp);
    }
    if (p.beta3 != 0.0) add_reference();
    return pairwise_sum(std::span<const T>(terms_));
  }

 private:
  V2<T> point(int j) const { return {q_[2 * j], q_[2 * j + 1]}; }

  void add_grad(int j, const V2<T>& g) {
    (*grad_)[2 * j] += g.x;
    (*grad_)[2 * j + 1] += g.y;
  }

  void add_heights(const Triangle& t) {
    const double beta1 = ctx_.params.beta1;
    const V2<T> P[3] = {point(t[0]), point(t[1]), point(t[2])};
    const T two_a = cross(P[1] - P[0], P[2] - P[0]);
    for (int l = 0; l < 3; ++l) {
      const int l1 = (l + 1) % 3, l2 = (l + 2) % 3;
      const V2<T> E = P[l1] - P[l2];
      const T L = norm(E);
      const T s = beta1 * L / two_a;
      terms_.push_back(reg::chi(s, ctx_.params.height_cutoff));
      if (!grad_) continue;
      const T scale = reg::chi_d1(s, ctx_.params.height_cutoff) * beta1 / (two_a * two_a);
      const V2<T> dL = (T(1.0) / L) * E;
      for (int m = 0; m < 3; ++m) {
        const V2<T> d_area = rot(P[(m + 1) % 3] - P[(m + 2) % 3]);
        V2<T> ds = -(L * d_area);
        if (m == l1) ds = ds + two_a * dL;
        if (m == l2) ds = ds - two_a * dL;
        add_grad(t[m], scale * ds);
      }
    }
  }

  void add_pair(const BoundaryPair& bp) {
    const double mu = ctx_.params.mu;
    const double beta2 = ctx_.params.beta2;
    const V2<T> p = point(bp.vertex), a = point(bp.j0), b = point(bp.j1);
    const V2<T> d = b - a;
    const T L = norm(d);
    const V2<T> e = (T(1.0) / L) * d;
    const V2<T> n{-e.y, e.x};
    const T s1 = dot(p - a, e);
    const T t = dot(p - a, n);
    const T u = -s1;       // gap before the first endpoint
    const T w = s1 - L;    // gap past the second endpoint
    const T dist = reg::g_mu_gaps(u, w, mu) + reg::h_mu(t, mu);
    const T s = beta2 / dist;
    terms_.push_back(reg::chi(s, ctx_.params.distance_cutoff));
    if (!grad_) return;

    const V2<T> ds1_dp = e;
    const V2<T> ds1_db = (t / L) * n;
    const V2<T> ds1_da = -e - ds1_db;
    const V2<T> dt_dp = n;
    const V2<T> dt_db = -(s1 / L) * n;
    const V2<T> dt_da = -n - dt_db;

    // dist = G(s1, L) + H(t)
    T dG_ds1(0.0), dG_dL(0.0);
    if (value_of(u) > 0.0) {
      dG_ds1 = -reg::interval_profile_d1(u, mu);
    } else if (value_of(w) > 0.0) {
      dG_ds1 = reg::interval_profile_d1(w, mu);
      dG_dL = -dG_ds1;
    }
    const T dH = reg::h_mu_d1(t, mu);
    const T scale = -reg::chi_d1(s, ctx_.params.distance_cutoff) * beta2 / (dist * dist);

    add_grad(bp.vertex, scale * (dG_ds1 * ds1_dp + dH * dt_dp));
    add_grad(bp.j0, scale * (dG_ds1 * ds1_da - dG_dL * e + dH * dt_da));
    add_grad(bp.j1, scale * (dG_ds1 * ds1_db + dG_dL * e + dH * dt_db));
  }

  void add_reference() {
    const double beta3 = ctx_.params.beta3;
    const double* ref = ctx_.params.qref.data();
    for (std::size_t i = 0; i < q_.size(); ++i) {
      const T r = q_[i] - ref[i];
      terms_.push_back(0.5 * beta3 * r * r);
      if (grad_) (*grad_)[i] += beta3 * r;
    }
  }

  const Context& ctx_;
  std::span<const T> q_;
  std::vector<T>* grad_;
  std::vector<T> terms_;
};

double value_impl(const Context& ctx, const Eigen::VectorXd& q) {
  Evaluator<double> ev(ctx, std::span<const double>(q.data(), q.size()), nullptr);
  return ev.run();
}

Eigen::VectorXd gradient_impl(const Context& ctx, const Eigen::VectorXd& q) {
  std::vector<double> grad;
  Evaluator<double> ev(ctx, std::span<const double>(q.data(), q.size()), &grad);
  ev.run();
  return Eigen::Map<Eigen::VectorXd>(grad.data(), static_cast<Eigen::Index>(grad.size()));
}

Eigen::VectorXd hessian_vec_impl(const Context& ctx, const Eigen::VectorXd& q, const Eigen::VectorXd& w) {
  std::vector<Dual> x(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) x[i] = Dual(q[i], w[i]);
  std::vector<Dual> grad;
  Evaluator<Dual> ev(ctx, std::span<const Dual>(x), &grad);
  ev.run();
  Eigen::VectorXd hw(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) hw[i] = grad[i].d;
  return hw;
}

Eigen::VectorXd hessian_vec_fd_impl(const Context& ctx, const Eigen::VectorXd& q, const Eigen::VectorXd& w) {
  const double h = 1e-6 * (1.0 + q.norm()) / (1.0 + w.norm());
  return (gradient_impl(ctx, q + h * w) - gradient_impl(ctx, q - h * w)) / (2.0 * h);
}

void check_domain(const ConnectivityComplex& complex, const std::vector<BoundaryPair>& pairs,
                  const VertexConfiguration& Q, const MetricParams& params) {
  params.validate(complex.num_vertices());
  if (Q.cols() != complex.num_vertices()) throw std::invalid_argument("configuration size mismatch");
  if (!Q.allFinite()) throw DomainError("configuration has non-finite coordinates");
  if (params.beta1 != 0.0) {
    for (const Triangle& t : complex.triangles()) {
      if (!(signed_area(Q, t) > 0.0)) throw DomainError("triangle with non-positive area");
    }
  }
  if (params.beta2 != 0.0) {
    for (const BoundaryPair& bp : pairs) {
      if (Q.col(bp.j0) == Q.col(bp.j1)) throw DomainError("boundary edge with coincident endpoints");
      if (dist_vertex_edge_1norm(Q, bp.vertex, bp.j0, bp.j1) == 0.0) {
        throw DomainError("boundary vertex touches a boundary edge");
      }
    }
  }
}

}  // namespace

void MetricParams::validate(int num_vertices) const {
  if (beta1 < 0.0 || beta2 < 0.0 || beta3 < 0.0) throw std::invalid_argument("betas must be non-negative");
  if (!(mu >= 1.0)) throw std::invalid_argument("mu must be at least 1");
  for (const Cutoff* c : {&height_cutoff, &distance_cutoff}) {
    if (c->lo == 0.0 && c->hi == 0.0) continue;
    if (!(0.0 < c->lo && c->lo < c->hi)) throw std::invalid_argument("cut-off window needs 0 < lower < upper");
  }
  if (beta3 != 0.0 && qref.cols() != num_vertices) {
    throw std::invalid_argument("reference configuration size mismatch");
  }
}

BoundParams MetricParams::bound_params() const {
  return {beta1, beta3, qref.size() ? qref.norm() : 0.0};
}

std::vector<BoundaryPair> boundary_pairs(const ConnectivityComplex& complex) {
  FaceClassification c = classify_faces(complex);
  std::vector<BoundaryPair> pairs;
  for (VertexId v : c.boundary_vertices) {
    for (const Edge& e : c.boundary_edges) {
      if (v == e.a || v == e.b) continue;
      pairs.push_back({v, e.a, e.b});
    }
  }
  return pairs;
}

Eigen::VectorXd vec(const VertexConfiguration& Q) {
  return Eigen::Map<const Eigen::VectorXd>(Q.data(), Q.size());
}

VertexConfiguration unvec(const Eigen::VectorXd& q) {
  if (q.size() % 2 != 0) throw std::invalid_argument("vector length must be even");
  return Eigen::Map<const Eigen::Matrix2Xd>(q.data(), 2, q.size() / 2);
}

double f_exact(const ConnectivityComplex& complex, const VertexConfiguration& Q, const MetricParams& params) {
  std::vector<BoundaryPair> pairs = boundary_pairs(complex);
  check_domain(complex, pairs, Q, params);
  std::vector<double> terms;
  if (params.beta1 != 0.0) {
    for (const Triangle& t : complex.triangles()) {
      TriangleQuantities tq = triangle_quantities(Q, t);
      for (double h : tq.heights) {
        if (!(h > 0.0)) throw DomainError("non-positive height");
        terms.push_back(params.beta1 / h);
      }
    }
  }
  if (params.beta2 != 0.0) {
    for (const BoundaryPair& bp : pairs) {
      terms.push_back(params.beta2 / dist_vertex_edge_1norm(Q, bp.vertex, bp.j0, bp.j1));
    }
  }
  if (params.beta3 != 0.0) {
    const Eigen::Matrix2Xd r = Q - params.qref;
    for (Eigen::Index i = 0; i < r.size(); ++i) terms.push_back(0.5 * params.beta3 * r.data()[i] * r.data()[i]);
  }
  return pairwise_sum(std::span<const double>(terms));
}

double f_mu(const ConnectivityComplex& complex, const VertexConfiguration& Q, const MetricParams& params) {
  std::vector<BoundaryPair> pairs = boundary_pairs(complex);
  check_domain(complex, pairs, Q, params);
  return value_impl({complex, pairs, params}, vec(Q));
}

Eigen::VectorXd grad_f_mu(const ConnectivityComplex& complex, const VertexConfiguration& Q,
                          const MetricParams& params) {
  std::vector<BoundaryPair> pairs = boundary_pairs(complex);
  check_domain(complex, pairs, Q, params);
  return gradient_impl({complex, pairs, params}, vec(Q));
}

Eigen::VectorXd hessian_vec_f_mu(const ConnectivityComplex& complex, const VertexConfiguration& Q,
                                 const MetricParams& params, const Eigen::VectorXd& w) {
  std::vector<BoundaryPair> pairs = boundary_pairs(complex);
  check_domain(complex, pairs, Q, params);
  if (w.size() != Q.size()) throw std::invalid_argument("direction size mismatch");
  return hessian_vec_impl({complex, pairs, params}, vec(Q), w);
}

Eigen::VectorXd hessian_vec_f_mu_fd(const ConnectivityComplex& complex, const VertexConfiguration& Q,
                                    const MetricParams& params, const Eigen::VectorXd& w) {
  std::vector<BoundaryPair> pairs = boundary_pairs(complex);
  check_domain(complex, pairs, Q, params);
  if (w.size() != Q.size()) throw std::invalid_argument("direction size mismatch");
  return hessian_vec_fd_impl({complex, pairs, params}, vec(Q), w);
}

MeshAugmentation::MeshAugmentation(ConnectivityComplex complex, MetricParams params, HessianMode mode)
    : complex_(std::move(complex)), params_(std::move(params)), mode_(mode), pairs_(boundary_pairs(complex_)) {
  params_.validate(complex_.num_vertices());
}

double MeshAugmentation::value(const Eigen::VectorXd& q) const {
  return value_impl({complex_, pairs_, params_}, q);
}

Eigen::VectorXd MeshAugmentation::gradient(const Eigen::VectorXd& q) const {
  return gradient_impl({complex_, pairs_, params_}, q);
}

Eigen::VectorXd MeshAugmentation::hessian_vec(const Eigen::VectorXd& q, const Eigen::VectorXd& w) const {
  if (mode_ == HessianMode::finite_difference) return hessian_vec_fd_impl({complex_, pairs_, params_}, q, w);
  return hessian_vec_impl({complex_, pairs_, params_}, q, w);
}

bool MeshAugmentation::admissible(const Eigen::VectorXd& q) const {
  if (!q.allFinite()) return false;
  return is_in_Mplus(complex_, unvec(q)).is_admissible_oriented();
}

bool MeshAugmentation::segment_admissible(const Eigen::VectorXd& from, const Eigen::VectorXd& to) const {
  if (!admissible(to)) return false;
  const VertexConfiguration A = unvec(from);
  const VertexConfiguration D = unvec(to) - A;
  auto cross = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); };
  for (const Triangle& t : complex_.triangles()) {
    const Eigen::Vector2d e1 = A.col(t[1]) - A.col(t[0]), e2 = A.col(t[2]) - A.col(t[0]);
    const Eigen::Vector2d d1 = D.col(t[1]) - D.col(t[0]), d2 = D.col(t[2]) - D.col(t[0]);
    // twice the signed area along the segment: c0 + c1 s + c2 s^2
    const double c0 = cross(e1, e2);
    const double c1 = cross(e1, d2) + cross(d1, e2);
    const double c2 = cross(d1, d2);
    if (c2 <= 0.0) continue;
    const double s = -c1 / (2.0 * c2);
    if (s > 0.0 && s < 1.0 && c0 + s * (c1 + s * c2) <= 0.0) return false;
  }
  return true;
}

MetricAt metric_at(const MeshAugmentation& f, const VertexConfiguration& Q) { return MetricAt(f, vec(Q)); }

}  // namespace meshgeo
