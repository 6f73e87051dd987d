#pragma once

#include <array>
#include <limits>

#include <Eigen/Core>

#include "meshgeo/simplicial.hpp"

namespace meshgeo {

// Column j holds the position of vertex j. vec(Q) stacks the columns.
using VertexConfiguration = Eigen::Matrix2Xd;

double signed_area(const VertexConfiguration& Q, const Triangle& t);

// |A| <= 1e-14 * (max edge length)^2.
bool is_degenerate(const VertexConfiguration& Q, const Triangle& t);

struct TriangleQuantities {
  double signed_area = 0.0;
  std::array<double, 3> edge_lengths{};  // edge_lengths[l] is opposite vertex l
  std::array<double, 3> heights{};       // heights[l] passes through vertex l
  double semi_perimeter = 0.0;
  double inradius = 0.0;
  double circumradius = 0.0;
  std::array<double, 3> cos_angles{};    // angle at vertex l
  bool degenerate = false;               // heights, radii and angles are NaN
};

// Heights and radii use |A|, so they are positive for either orientation.
TriangleQuantities triangle_quantities(const VertexConfiguration& Q, const Triangle& t);

// 2r/R for one triangle; 0 when degenerate.
double triangle_aspect_ratio(const VertexConfiguration& Q, const Triangle& t);

// Coordinates of vertex i0 in the frame with origin Q_{j0} and first axis
// along Q_{j1} - Q_{j0}.
struct EdgeFrame {
  double length = 0.0;
  double along = 0.0;          // first coordinate of Q_{i0}
  double offset_from_j0 = 0.0; // second coordinate of Q_{i0} minus that of Q_{j0}
  double offset_from_j1 = 0.0; // second coordinate of Q_{i0} minus that of Q_{j1}
};

EdgeFrame edge_frame(const VertexConfiguration& Q, int i0, int j0, int j1);

double dist_vertex_edge_euclid(const VertexConfiguration& Q, int i0, int j0, int j1);
double dist_vertex_edge_1norm(const VertexConfiguration& Q, int i0, int j0, int j1);
double dist_vertex_edge_regularized(const VertexConfiguration& Q, int i0, int j0, int j1, double mu);

double g_mu(double x, double y, double z, double mu);
double h_mu(double x, double mu);

struct BoundParams {
  double beta1 = 1.0;
  double beta3 = 1.0;
  double qref_norm = 0.0;  // Frobenius norm of the reference configuration
};

struct BoundCheck {
  double value = 0.0;
  double bound = 0.0;
  bool holds = false;
};

struct BoundReport {
  std::array<BoundCheck, 3> heights;     // h >= beta1 / f
  BoundCheck inradius;                   // r >= beta1 / f
  std::array<BoundCheck, 3> edge_lower;  // L >= 2 beta1 / f
  std::array<BoundCheck, 3> edge_upper;  // L <= 2 sqrt(f / beta3) + sqrt(2) |Qref|
  BoundCheck area;                       // A >= pi beta1^2 / f^2
  BoundCheck radius_ratio;               // r / R >= psi(f)
  std::array<BoundCheck, 3> cosines;     // |cos theta| <= Psi(f)

  bool all_hold() const;
};

// Lower bound on r/R, capped at 1/2.
double radius_ratio_bound(double f_value, const BoundParams& params);
// Upper bound on |cos theta|.
double cosine_bound(double f_value, const BoundParams& params);

BoundReport lemma_bounds(const VertexConfiguration& Q, const Triangle& t, double f_value,
                         const BoundParams& params);

}  // namespace meshgeo
