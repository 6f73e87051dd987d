#include "meshgeo/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace meshgeo {

namespace {

std::string diverged_message(int step, FixedPointDiverged::Stage stage, double residual, int iterations) {
  std::ostringstream os;
  os << "fixed-point iteration for the " << (stage == FixedPointDiverged::Stage::momentum ? "momentum" : "position")
     << " update did not converge at step " << step << " after " << iterations << " iterations (residual "
     << residual << ")";
  return os.str();
}

std::string inadmissible_message(int step, double time, const std::string& reason) {
  std::ostringstream os;
  os << "configuration left the admissible set at step " << step << " (t=" << time << ")";
  if (!reason.empty()) os << ": " << reason;
  return os.str();
}

}  // namespace

FixedPointDiverged::FixedPointDiverged(int step, Stage stage, double residual, int iterations)
    : std::runtime_error(diverged_message(step, stage, residual, iterations)),
      step_(step), stage_(stage), residual_(residual), iterations_(iterations) {}

InadmissibleState::InadmissibleState(int step, double time, const std::string& reason)
    : std::runtime_error(inadmissible_message(step, time, reason)), step_(step), time_(time) {}

FixedPointResult fixed_point_iterate(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& map,
                                     Eigen::VectorXd x0, const FixedPointOptions& opts) {
  FixedPointResult r;
  r.x = std::move(x0);
  while (r.iterations < opts.max_iter) {
    Eigen::VectorXd next = map(r.x);
    ++r.iterations;
    r.residual = (next - r.x).norm();
    if (!std::isfinite(r.residual)) {
      r.x = std::move(next);
      return r;
    }
    const bool done = r.residual <= opts.tol * (1.0 + r.x.norm());
    r.x = std::move(next);
    if (done) {
      r.converged = true;
      return r;
    }
  }
  return r;
}

FixedPointResult fixed_point_solve(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& map,
                                   Eigen::VectorXd x0, const FixedPointOptions& opts) {
  FixedPointResult r = fixed_point_iterate(map, std::move(x0), opts);
  if (!r.converged) throw FixedPointDiverged(-1, FixedPointDiverged::Stage::position, r.residual, r.iterations);
  return r;
}

GeodesicTrajectory stormer_verlet(const AugmentationFunction& f, const Eigen::VectorXd& q0,
                                  const Eigen::VectorXd& v0, double T, int N, const IntegratorOptions& opts) {
  if (N < 1) throw std::invalid_argument("number of steps must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("final time must be positive");
  if (q0.size() != f.dimension() || v0.size() != f.dimension()) {
    throw std::invalid_argument("initial state has wrong dimension");
  }
  if (!f.admissible(q0)) throw InadmissibleState(0, 0.0, "initial configuration");

  const double dt = T / N;
  GeodesicTrajectory traj;
  traj.hamiltonian_log.reserve(N + 1);
  traj.iterations_p.reserve(N);
  traj.iterations_q.reserve(N);

  Eigen::VectorXd q = q0;
  auto g = std::make_unique<MetricAt>(f, q);
  Eigen::VectorXd p = g->apply(v0);
  Eigen::VectorXd v = g->inv_apply(p);
  double H = 0.5 * p.dot(v);
  const double H0 = H;
  traj.hamiltonian_log.push_back(H);

  auto record = [&](int step, double t) {
    traj.steps.push_back(step);
    traj.times.push_back(t);
    traj.states.push_back(q);
    traj.velocities.push_back(v);
    traj.momenta.push_back(p);
  };
  record(0, 0.0);
  Eigen::VectorXd last_checked = q;
  if (opts.observer) opts.observer(StepView{0, 0.0, q, v, p, H, 0, 0});

  for (int n = 0; n < N; ++n) {
    const int step = n + 1;
    const double t = step == N ? T : step * dt;

    const MetricAt& gn = *g;
    FixedPointResult half = fixed_point_iterate(
        [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return p + (0.5 * dt) * gn.dg_contraction(x); }, p,
        opts.fixed_point);
    if (!half.converged) {
      throw FixedPointDiverged(step, FixedPointDiverged::Stage::momentum, half.residual, half.iterations);
    }
    const Eigen::VectorXd& p_half = half.x;
    const Eigen::VectorXd vn = gn.inv_apply(p_half);

    FixedPointResult pos = fixed_point_iterate(
        [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
          if (!x.allFinite()) return x;
          try {
            MetricAt gx(f, x);
            return q + (0.5 * dt) * (vn + gx.inv_apply(p_half));
          } catch (const DomainError&) {
            return Eigen::VectorXd::Constant(x.size(), std::numeric_limits<double>::quiet_NaN());
          }
        },
        q + dt * vn, opts.fixed_point);
    if (!pos.converged) {
      if (!pos.x.allFinite() || !f.admissible(pos.x)) {
        throw InadmissibleState(step, t, "position update left the domain");
      }
      throw FixedPointDiverged(step, FixedPointDiverged::Stage::position, pos.residual, pos.iterations);
    }

    q = std::move(pos.x);
    try {
      g = std::make_unique<MetricAt>(f, q);
    } catch (const DomainError& e) {
      throw InadmissibleState(step, t, e.what());
    }
    p = p_half + (0.5 * dt) * g->dg_contraction(p_half);
    v = g->inv_apply(p);
    H = 0.5 * p.dot(v);

    const bool last = step == N;
    if (!q.allFinite() || !p.allFinite()) throw InadmissibleState(step, t, "non-finite state");
    if ((opts.check_every > 0 && step % opts.check_every == 0) || last) {
      if (!f.segment_admissible(last_checked, q)) throw InadmissibleState(step, t, "");
      last_checked = q;
    }

    traj.hamiltonian_log.push_back(H);
    traj.iterations_p.push_back(half.iterations);
    traj.iterations_q.push_back(pos.iterations);
    const double drift = H0 != 0.0 ? std::abs(H - H0) / std::abs(H0) : std::abs(H - H0);
    traj.max_relative_drift = std::max(traj.max_relative_drift, drift);

    if (last || (opts.record_every > 0 && step % opts.record_every == 0)) record(step, t);
    if (opts.observer) opts.observer(StepView{step, t, q, v, p, H, half.iterations, pos.iterations});
  }
  traj.energy_flagged = traj.max_relative_drift > opts.energy_tolerance;
  return traj;
}

Eigen::VectorXd exponential_map(const AugmentationFunction& f, const Eigen::VectorXd& q, const Eigen::VectorXd& v,
                                int N, const IntegratorOptions& opts) {
  IntegratorOptions o = opts;
  o.record_every = 0;
  return stormer_verlet(f, q, v, 1.0, N, o).final_state();
}

}  // namespace meshgeo
