#include "meshgeo/rank_one_metric.hpp"

#include <stdexcept>

namespace meshgeo {

MetricAt::MetricAt(const AugmentationFunction& f, Eigen::VectorXd q) : f_(&f), q_(std::move(q)) {
  if (q_.size() != f.dimension()) throw std::invalid_argument("position has wrong dimension");
  u_ = f.gradient(q_);
  uu_ = u_.squaredNorm();
}

Eigen::VectorXd MetricAt::apply(const Eigen::VectorXd& w) const { return w + u_ * u_.dot(w); }

Eigen::VectorXd MetricAt::inv_apply(const Eigen::VectorXd& w) const {
  return w - u_ * (u_.dot(w) / (1.0 + uu_));
}

double MetricAt::inner(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const {
  return v.dot(w) + u_.dot(v) * u_.dot(w);
}

Eigen::VectorXd MetricAt::hessian_vec(const Eigen::VectorXd& w) const { return f_->hessian_vec(q_, w); }

Eigen::VectorXd MetricAt::dg_contraction(const Eigen::VectorXd& p) const {
  const Eigen::VectorXd v = inv_apply(p);
  const double uv = u_.dot(v);
  if (uv == 0.0) return Eigen::VectorXd::Zero(p.size());
  return f_->hessian_vec(q_, v) * uv;
}

Eigen::MatrixXd MetricAt::dense() const {
  Eigen::MatrixXd g = u_ * u_.transpose();
  g.diagonal().array() += 1.0;
  return g;
}

double hamiltonian(const MetricAt& g, const Eigen::VectorXd& p) { return 0.5 * p.dot(g.inv_apply(p)); }

}  // namespace meshgeo
