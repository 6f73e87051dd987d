#pragma once

#include <array>

#include <Eigen/Core>

#include "meshgeo/integrator.hpp"
#include "meshgeo/rank_one_metric.hpp"

namespace meshgeo {

// Points q^1 < ... < q^n on the line.
struct LineConfiguration {
  Eigen::VectorXd q;
  Eigen::VectorXd qref;
  double beta = 0.0;
};

bool is_ordered(const Eigen::VectorXd& q);

// sum 1/(q^{i+1} - q^i) + (beta/2) |q - qref|^2
class LineAugmentation : public AugmentationFunction {
 public:
  LineAugmentation(Eigen::VectorXd qref, double beta);

  int dimension() const override { return static_cast<int>(qref_.size()); }
  double value(const Eigen::VectorXd& q) const override;
  Eigen::VectorXd gradient(const Eigen::VectorXd& q) const override;
  Eigen::VectorXd hessian_vec(const Eigen::VectorXd& q, const Eigen::VectorXd& w) const override;
  bool admissible(const Eigen::VectorXd& q) const override { return is_ordered(q); }

 private:
  Eigen::VectorXd qref_;
  double beta_;
};

// Throws DomainError when the points are not strictly increasing.
double f_1d(const LineConfiguration& config);

MetricAt metric_1d(const LineAugmentation& f, const Eigen::VectorXd& q);

// Accelerations of the geodesic equation for two points with beta = 0.
std::array<double, 2> christoffel_1d_n2(const std::array<double, 2>& q, const std::array<double, 2>& dq);

GeodesicTrajectory geodesic_1d(const LineConfiguration& config, const Eigen::VectorXd& v0, double T, int N,
                               const IntegratorOptions& opts = {});

}  // namespace meshgeo
