#pragma once

#include <Eigen/Core>

namespace meshgeo {

// A smooth function f on an open subset of R^n defining the metric
// g = I + grad f grad f^T.
class AugmentationFunction {
 public:
  virtual ~AugmentationFunction() = default;

  virtual int dimension() const = 0;
  virtual double value(const Eigen::VectorXd& q) const = 0;
  virtual Eigen::VectorXd gradient(const Eigen::VectorXd& q) const = 0;
  virtual Eigen::VectorXd hessian_vec(const Eigen::VectorXd& q, const Eigen::VectorXd& w) const = 0;
  // Whether q lies in the domain where trajectories are allowed.
  virtual bool admissible(const Eigen::VectorXd& q) const = 0;
  // Whether the straight segment from an admissible point to q stays
  // admissible. Defaults to checking the endpoint.
  virtual bool segment_admissible(const Eigen::VectorXd& from, const Eigen::VectorXd& to) const {
    (void)from;
    return admissible(to);
  }
};

// Metric data at one point. Holds a reference to the function, which must
// outlive this object.
class MetricAt {
 public:
  MetricAt(const AugmentationFunction& f, Eigen::VectorXd q);

  const Eigen::VectorXd& position() const { return q_; }
  const Eigen::VectorXd& gradient() const { return u_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& w) const;
  Eigen::VectorXd inv_apply(const Eigen::VectorXd& w) const;
  double inner(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const;
  Eigen::VectorXd hessian_vec(const Eigen::VectorXd& w) const;
  // (1/2) d_a g_bd v^b v^d with v = g^{-1} p.
  Eigen::VectorXd dg_contraction(const Eigen::VectorXd& p) const;
  Eigen::MatrixXd dense() const;

 private:
  const AugmentationFunction* f_;
  Eigen::VectorXd q_;
  Eigen::VectorXd u_;
  double uu_ = 0.0;
};

// (1/2) p^T g^{-1} p.
double hamiltonian(const MetricAt& g, const Eigen::VectorXd& p);

}  // namespace meshgeo
