#include "meshgeo/svg.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "meshgeo/mesh_io.hpp"

namespace meshgeo {

BoundingBox bounding_box(const std::vector<VertexConfiguration>& frames, double margin_fraction) {
  const double inf = std::numeric_limits<double>::infinity();
  BoundingBox b{inf, inf, -inf, -inf};
  for (const auto& Q : frames) {
    if (Q.cols() == 0) continue;
    b.xmin = std::min(b.xmin, Q.row(0).minCoeff());
    b.xmax = std::max(b.xmax, Q.row(0).maxCoeff());
    b.ymin = std::min(b.ymin, Q.row(1).minCoeff());
    b.ymax = std::max(b.ymax, Q.row(1).maxCoeff());
  }
  if (b.xmin > b.xmax) return {};
  const double pad = margin_fraction * std::max({b.xmax - b.xmin, b.ymax - b.ymin, 1e-12});
  return {b.xmin - pad, b.ymin - pad, b.xmax + pad, b.ymax + pad};
}

std::string render_svg(const ConnectivityComplex& complex, const std::vector<SvgLayer>& layers,
                       const BoundingBox& box, int pixel_width) {
  const double w = box.xmax - box.xmin;
  const double h = box.ymax - box.ymin;
  const int pixel_height = std::max(1, static_cast<int>(pixel_width * h / w + 0.5));
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixel_width << "\" height=\"" << pixel_height
     << "\" viewBox=\"" << format_double(box.xmin) << ' ' << format_double(-box.ymax) << ' ' << format_double(w)
     << ' ' << format_double(h) << "\">\n";
  os << "<rect x=\"" << format_double(box.xmin) << "\" y=\"" << format_double(-box.ymax) << "\" width=\""
     << format_double(w) << "\" height=\"" << format_double(h) << "\" fill=\"white\"/>\n";
  for (const SvgLayer& layer : layers) {
    const VertexConfiguration& Q = *layer.vertices;
    os << "<path fill=\"none\" stroke=\"" << layer.color
       << "\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\" stroke-linejoin=\"round\" d=\"";
    for (const Edge& e : complex.edges()) {
      os << 'M' << format_double(Q(0, e.a)) << ' ' << format_double(-Q(1, e.a)) << 'L' << format_double(Q(0, e.b))
         << ' ' << format_double(-Q(1, e.b));
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace meshgeo
