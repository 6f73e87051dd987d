#include "meshgeo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "meshgeo/errors.hpp"
#include "meshgeo/regularization.hpp"

namespace meshgeo {

namespace {

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

void require_distinct(const VertexConfiguration& Q, int j0, int j1) {
  if (Q.col(j0) == Q.col(j1)) throw DomainError("edge endpoints coincide");
}

// Equality cases (equilateral triangles) are decided up to rounding.
constexpr double kBoundSlack = 1e-12;

BoundCheck lower(double value, double bound) { return {value, bound, value >= bound * (1.0 - kBoundSlack)}; }
BoundCheck upper(double value, double bound) { return {value, bound, value <= bound * (1.0 + kBoundSlack)}; }

}  // namespace

double signed_area(const VertexConfiguration& Q, const Triangle& t) {
  return 0.5 * cross(Q.col(t[1]) - Q.col(t[0]), Q.col(t[2]) - Q.col(t[1]));
}

bool is_degenerate(const VertexConfiguration& Q, const Triangle& t) {
  double max_len = 0.0;
  for (int l = 0; l < 3; ++l) {
    max_len = std::max(max_len, (Q.col(t[(l + 1) % 3]) - Q.col(t[(l + 2) % 3])).norm());
  }
  return std::abs(signed_area(Q, t)) <= 1e-14 * max_len * max_len;
}

TriangleQuantities triangle_quantities(const VertexConfiguration& Q, const Triangle& t) {
  TriangleQuantities tq;
  tq.signed_area = signed_area(Q, t);
  for (int l = 0; l < 3; ++l) {
    tq.edge_lengths[l] = (Q.col(t[(l + 1) % 3]) - Q.col(t[(l + 2) % 3])).norm();
  }
  const auto& L = tq.edge_lengths;
  tq.semi_perimeter = 0.5 * (L[0] + L[1] + L[2]);
  tq.degenerate = is_degenerate(Q, t);
  if (tq.degenerate) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    tq.heights = {nan, nan, nan};
    tq.cos_angles = {nan, nan, nan};
    tq.inradius = tq.circumradius = nan;
    return tq;
  }
  const double area = std::abs(tq.signed_area);
  for (int l = 0; l < 3; ++l) {
    tq.heights[l] = 2.0 * area / L[l];
    const double b = L[(l + 1) % 3], c = L[(l + 2) % 3];
    tq.cos_angles[l] = (b * b + c * c - L[l] * L[l]) / (2.0 * b * c);
  }
  tq.inradius = area / tq.semi_perimeter;
  tq.circumradius = L[0] * L[1] * L[2] / (4.0 * area);
  return tq;
}

double triangle_aspect_ratio(const VertexConfiguration& Q, const Triangle& t) {
  TriangleQuantities tq = triangle_quantities(Q, t);
  if (tq.degenerate) return 0.0;
  return 2.0 * tq.inradius / tq.circumradius;
}

EdgeFrame edge_frame(const VertexConfiguration& Q, int i0, int j0, int j1) {
  require_distinct(Q, j0, j1);
  const Eigen::Vector2d d = Q.col(j1) - Q.col(j0);
  EdgeFrame frame;
  frame.length = d.norm();
  const Eigen::Vector2d e = d / frame.length;
  const Eigen::Vector2d n(-e.y(), e.x());
  frame.along = e.dot(Q.col(i0) - Q.col(j0));
  frame.offset_from_j0 = n.dot(Q.col(i0) - Q.col(j0));
  frame.offset_from_j1 = n.dot(Q.col(i0) - Q.col(j1));
  return frame;
}

double dist_vertex_edge_euclid(const VertexConfiguration& Q, int i0, int j0, int j1) {
  const Eigen::Vector2d d = Q.col(j1) - Q.col(j0);
  const double len2 = d.squaredNorm();
  double t = len2 > 0.0 ? d.dot(Q.col(i0) - Q.col(j0)) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (Q.col(i0) - (Q.col(j0) + t * d)).norm();
}

double dist_vertex_edge_1norm(const VertexConfiguration& Q, int i0, int j0, int j1) {
  EdgeFrame f = edge_frame(Q, i0, j0, j1);
  const double along_gap = f.along < 0.0 ? -f.along : (f.along > f.length ? f.along - f.length : 0.0);
  return along_gap + std::abs(f.offset_from_j0);
}

double dist_vertex_edge_regularized(const VertexConfiguration& Q, int i0, int j0, int j1, double mu) {
  if (mu < 1.0) throw std::invalid_argument("mu must be at least 1");
  EdgeFrame f = edge_frame(Q, i0, j0, j1);
  return g_mu(f.along, 0.0, f.length, mu) + h_mu(f.offset_from_j1, mu);
}

double g_mu(double x, double y, double z, double mu) {
  if (!(y < z)) throw std::invalid_argument("interval requires y < z");
  if (mu < 1.0) throw std::invalid_argument("mu must be at least 1");
  return reg::g_mu_gaps(y - x, x - z, mu);
}

double h_mu(double x, double mu) {
  if (mu < 1.0) throw std::invalid_argument("mu must be at least 1");
  return reg::h_mu(x, mu);
}

bool BoundReport::all_hold() const {
  bool ok = inradius.holds && area.holds && radius_ratio.holds;
  for (int l = 0; l < 3; ++l) {
    ok = ok && heights[l].holds && edge_lower[l].holds && edge_upper[l].holds && cosines[l].holds;
  }
  return ok;
}

namespace {

double edge_upper_bound(double f_value, const BoundParams& params) {
  if (params.beta3 <= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::sqrt(f_value / params.beta3) + std::numbers::sqrt2 * params.qref_norm;
}

}  // namespace

double radius_ratio_bound(double f_value, const BoundParams& params) {
  if (f_value <= 0.0) throw std::invalid_argument("f must be positive");
  const double edge_max = edge_upper_bound(f_value, params);
  if (!std::isfinite(edge_max)) return 0.0;
  const double b1 = params.beta1;
  const double psi = 4.0 * std::numbers::pi * b1 * b1 * b1 / (edge_max * edge_max * edge_max) /
                     (f_value * f_value * f_value);
  return std::min(psi, 0.5);
}

double cosine_bound(double f_value, const BoundParams& params) {
  const double x = radius_ratio_bound(f_value, params);
  return x + std::sqrt(1.0 - 2.0 * x);
}

BoundReport lemma_bounds(const VertexConfiguration& Q, const Triangle& t, double f_value,
                         const BoundParams& params) {
  if (!(f_value > 0.0)) throw std::invalid_argument("f must be positive");
  TriangleQuantities tq = triangle_quantities(Q, t);
  const double b1 = params.beta1;
  const double edge_max = edge_upper_bound(f_value, params);
  const double cos_max = cosine_bound(f_value, params);
  BoundReport r;
  for (int l = 0; l < 3; ++l) {
    r.heights[l] = lower(tq.heights[l], b1 / f_value);
    r.edge_lower[l] = lower(tq.edge_lengths[l], 2.0 * b1 / f_value);
    r.edge_upper[l] = upper(tq.edge_lengths[l], edge_max);
    r.cosines[l] = upper(std::abs(tq.cos_angles[l]), cos_max);
  }
  r.inradius = lower(tq.inradius, b1 / f_value);
  r.area = lower(tq.signed_area, std::numbers::pi * b1 * b1 / (f_value * f_value));
  r.radius_ratio = lower(tq.inradius / tq.circumradius, radius_ratio_bound(f_value, params));
  return r;
}

}  // namespace meshgeo
