#pragma once

#include <string>
#include <vector>

#include "meshgeo/geometry.hpp"
#include "meshgeo/simplicial.hpp"

namespace meshgeo {

struct BoundingBox {
  double xmin = 0.0, ymin = 0.0, xmax = 1.0, ymax = 1.0;
};

BoundingBox bounding_box(const std::vector<VertexConfiguration>& frames, double margin_fraction = 0.05);

struct SvgLayer {
  const VertexConfiguration* vertices = nullptr;
  std::string color = "black";
};

// Edge outlines, one path per layer, drawn in order; y points up.
std::string render_svg(const ConnectivityComplex& complex, const std::vector<SvgLayer>& layers,
                       const BoundingBox& box, int pixel_width = 800);

}  // namespace meshgeo
