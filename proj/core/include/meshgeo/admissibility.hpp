#pragma once

#include <string>

#include "meshgeo/geometry.hpp"
#include "meshgeo/simplicial.hpp"

namespace meshgeo {

struct AdmissibilityReport {
  bool is_geometric_complex = false;
  // False when distinct faces of the complex are realized by the same
  // simplex (e.g. two vertices placed at the same point).
  bool abstract_complex_matches = false;
  bool all_areas_positive = false;
  std::string first_violation;  // empty when admissible
  double min_signed_area = 0.0;
  double aspect_ratio = 0.0;

  bool in_M0() const { return is_geometric_complex && abstract_complex_matches; }
  bool is_admissible_oriented() const { return in_M0() && all_areas_positive; }
  std::string to_string() const;
};

// Throws std::invalid_argument when Q has the wrong number of columns.
AdmissibilityReport is_in_M0(const ConnectivityComplex& complex, const VertexConfiguration& Q);
AdmissibilityReport is_in_Mplus(const ConnectivityComplex& complex, const VertexConfiguration& Q);

// Minimum over triangles of 2r/R.
double aspect_ratio(const ConnectivityComplex& complex, const VertexConfiguration& Q);

}  // namespace meshgeo
