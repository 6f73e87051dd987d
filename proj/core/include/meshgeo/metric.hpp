#pragma once

#include <vector>

#include <Eigen/Core>

#include "meshgeo/geometry.hpp"
#include "meshgeo/rank_one_metric.hpp"
#include "meshgeo/regularization.hpp"
#include "meshgeo/simplicial.hpp"

namespace meshgeo {

using Cutoff = reg::CutoffWindow;

struct MetricParams {
  double beta1 = 1.0;
  double beta2 = 0.0;
  double beta3 = 1.0;
  double mu = 100.0;
  Cutoff height_cutoff;    // chi_1, applied to beta1 / h
  Cutoff distance_cutoff;  // chi_2, applied to beta2 / d
  VertexConfiguration qref;

  // Throws std::invalid_argument on negative betas, mu < 1, a malformed
  // cut-off window or a reference with the wrong vertex count.
  void validate(int num_vertices) const;
  BoundParams bound_params() const;
};

// Boundary vertex i0 and boundary edge [j0, j1] with i0 not in the edge.
struct BoundaryPair {
  VertexId vertex = 0;
  VertexId j0 = 0;
  VertexId j1 = 0;
};

std::vector<BoundaryPair> boundary_pairs(const ConnectivityComplex& complex);

Eigen::VectorXd vec(const VertexConfiguration& Q);
VertexConfiguration unvec(const Eigen::VectorXd& q);

// Throw DomainError outside the domain (non-positive height or zero distance).
double f_exact(const ConnectivityComplex& complex, const VertexConfiguration& Q, const MetricParams& params);
double f_mu(const ConnectivityComplex& complex, const VertexConfiguration& Q, const MetricParams& params);
Eigen::VectorXd grad_f_mu(const ConnectivityComplex& complex, const VertexConfiguration& Q,
                          const MetricParams& params);
// Exact directional derivative of the gradient.
Eigen::VectorXd hessian_vec_f_mu(const ConnectivityComplex& complex, const VertexConfiguration& Q,
                                 const MetricParams& params, const Eigen::VectorXd& w);
// Central difference of the gradient with step 1e-6 (1 + |Q|_F) / (1 + |w|).
Eigen::VectorXd hessian_vec_f_mu_fd(const ConnectivityComplex& complex, const VertexConfiguration& Q,
                                    const MetricParams& params, const Eigen::VectorXd& w);

enum class HessianMode { exact, finite_difference };

// f^mu as a function of vec(Q). Boundary pairs are enumerated once.
class MeshAugmentation : public AugmentationFunction {
 public:
  MeshAugmentation(ConnectivityComplex complex, MetricParams params,
                   HessianMode mode = HessianMode::exact);

  int dimension() const override { return 2 * complex_.num_vertices(); }
  double value(const Eigen::VectorXd& q) const override;
  Eigen::VectorXd gradient(const Eigen::VectorXd& q) const override;
  Eigen::VectorXd hessian_vec(const Eigen::VectorXd& q, const Eigen::VectorXd& w) const override;
  bool admissible(const Eigen::VectorXd& q) const override;
  // Also rejects segments along which some signed area touches zero.
  bool segment_admissible(const Eigen::VectorXd& from, const Eigen::VectorXd& to) const override;

  const ConnectivityComplex& complex() const { return complex_; }
  const MetricParams& params() const { return params_; }
  const std::vector<BoundaryPair>& pairs() const { return pairs_; }

 private:
  ConnectivityComplex complex_;
  MetricParams params_;
  HessianMode mode_;
  std::vector<BoundaryPair> pairs_;
};

MetricAt metric_at(const MeshAugmentation& f, const VertexConfiguration& Q);

}  // namespace meshgeo
