#include "meshgeo/oned.hpp"

#include <stdexcept>

#include "meshgeo/errors.hpp"

namespace meshgeo {

bool is_ordered(const Eigen::VectorXd& q) {
  if (!q.allFinite()) return false;
  for (Eigen::Index i = 0; i + 1 < q.size(); ++i) {
    if (!(q[i] < q[i + 1])) return false;
  }
  return true;
}

LineAugmentation::LineAugmentation(Eigen::VectorXd qref, double beta) : qref_(std::move(qref)), beta_(beta) {
  if (qref_.size() < 1) throw std::invalid_argument("need at least one point");
  if (beta_ < 0.0) throw std::invalid_argument("beta must be non-negative");
}

double LineAugmentation::value(const Eigen::VectorXd& q) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i + 1 < q.size(); ++i) s += 1.0 / (q[i + 1] - q[i]);
  if (beta_ != 0.0) s += 0.5 * beta_ * (q - qref_).squaredNorm();
  return s;
}

Eigen::VectorXd LineAugmentation::gradient(const Eigen::VectorXd& q) const {
  Eigen::VectorXd g = beta_ * (q - qref_);
  for (Eigen::Index i = 0; i + 1 < q.size(); ++i) {
    const double gap = q[i + 1] - q[i];
    const double d = 1.0 / (gap * gap);
    g[i] += d;
    g[i + 1] -= d;
  }
  return g;
}

Eigen::VectorXd LineAugmentation::hessian_vec(const Eigen::VectorXd& q, const Eigen::VectorXd& w) const {
  Eigen::VectorXd hw = beta_ * w;
  for (Eigen::Index i = 0; i + 1 < q.size(); ++i) {
    const double gap = q[i + 1] - q[i];
    const double c = 2.0 / (gap * gap * gap) * (w[i] - w[i + 1]);
    hw[i] += c;
    hw[i + 1] -= c;
  }
  return hw;
}

double f_1d(const LineConfiguration& config) {
  if (!is_ordered(config.q)) throw DomainError("points are not strictly increasing");
  return LineAugmentation(config.qref, config.beta).value(config.q);
}

MetricAt metric_1d(const LineAugmentation& f, const Eigen::VectorXd& q) { return MetricAt(f, q); }

std::array<double, 2> christoffel_1d_n2(const std::array<double, 2>& q, const std::array<double, 2>& dq) {
  const double eps = q[1] - q[0];
  if (!(eps > 0.0)) throw DomainError("points are not strictly increasing");
  const double deps = dq[1] - dq[0];
  const double eps2 = eps * eps;
  const double c = 2.0 / (eps2 * eps2 * eps + 2.0 * eps);
  const double a = c * deps * deps;
  return {-a, a};
}

GeodesicTrajectory geodesic_1d(const LineConfiguration& config, const Eigen::VectorXd& v0, double T, int N,
                               const IntegratorOptions& opts) {
  if (!is_ordered(config.q)) throw DomainError("points are not strictly increasing");
  LineAugmentation f(config.qref.size() ? config.qref : config.q, config.beta);
  return stormer_verlet(f, config.q, v0, T, N, opts);
}

}  // namespace meshgeo
