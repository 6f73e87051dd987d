#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "meshgeo/errors.hpp"
#include "meshgeo/rank_one_metric.hpp"

namespace meshgeo {

struct FixedPointOptions {
  double tol = 1e-12;
  int max_iter = 100;
};

struct FixedPointResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Iterates x <- map(x) until |x_{k+1} - x_k| <= tol (1 + |x_k|). Never
// throws; a non-finite iterate stops the iteration unconverged.
FixedPointResult fixed_point_iterate(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& map,
                                     Eigen::VectorXd x0, const FixedPointOptions& opts = {});

// As above, but throws FixedPointDiverged (step -1, position stage) when
// the iteration does not converge.
FixedPointResult fixed_point_solve(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& map,
                                   Eigen::VectorXd x0, const FixedPointOptions& opts = {});

struct PhaseState {
  Eigen::VectorXd q;
  Eigen::VectorXd p;
  double t = 0.0;
};

struct StepView {
  int step = 0;
  double time = 0.0;
  const Eigen::VectorXd& q;
  const Eigen::VectorXd& v;
  const Eigen::VectorXd& p;
  double hamiltonian = 0.0;
  int iterations_p = 0;
  int iterations_q = 0;
};

struct IntegratorOptions {
  FixedPointOptions fixed_point;
  int check_every = 1;           // admissibility check period in steps; 0 disables
  int record_every = 1;          // snapshot period; 0 keeps only the first and last
  double energy_tolerance = 1e-5;
  std::function<void(const StepView&)> observer;  // called for step 0 and every step after it
};

struct GeodesicTrajectory {
  std::vector<int> steps;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> velocities;
  std::vector<Eigen::VectorXd> momenta;
  std::vector<double> hamiltonian_log;  // every step, including step 0
  std::vector<int> iterations_p;        // per step n = 1..N
  std::vector<int> iterations_q;
  double max_relative_drift = 0.0;
  bool energy_flagged = false;

  const Eigen::VectorXd& final_state() const { return states.back(); }
};

// Stormer-Verlet for q' = g^{-1} p, p' = (1/2) d_q g (v, v) with g = I + grad f grad f^T.
// Throws FixedPointDiverged or InadmissibleState.
GeodesicTrajectory stormer_verlet(const AugmentationFunction& f, const Eigen::VectorXd& q0,
                                  const Eigen::VectorXd& v0, double T, int N,
                                  const IntegratorOptions& opts = {});

// Geodesic at time 1.
Eigen::VectorXd exponential_map(const AugmentationFunction& f, const Eigen::VectorXd& q,
                                const Eigen::VectorXd& v, int N, const IntegratorOptions& opts = {});

}  // namespace meshgeo
