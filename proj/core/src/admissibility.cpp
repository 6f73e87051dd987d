#include "meshgeo/admissibility.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace meshgeo {

namespace {

using Point = Eigen::Vector2d;

int orientation(const Point& a, const Point& b, const Point& c) {
  const double v = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
  return (v > 0.0) - (v < 0.0);
}

// p lies on the closed segment [a, b], given that a, b, p are collinear.
bool on_segment(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

bool segments_intersect(const Point& p1, const Point& p2, const Point& p3, const Point& p4) {
  const int d1 = orientation(p3, p4, p1);
  const int d2 = orientation(p3, p4, p2);
  const int d3 = orientation(p1, p2, p3);
  const int d4 = orientation(p1, p2, p4);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(p3, p4, p1)) return true;
  if (d2 == 0 && on_segment(p3, p4, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, p3)) return true;
  if (d4 == 0 && on_segment(p1, p2, p4)) return true;
  return false;
}

// Closed triangle containment, either orientation; the triangle is non-degenerate.
bool in_closed_triangle(const Point& a, const Point& b, const Point& c, const Point& p) {
  const int s0 = orientation(a, b, p);
  const int s1 = orientation(b, c, p);
  const int s2 = orientation(c, a, p);
  return (s0 >= 0 && s1 >= 0 && s2 >= 0) || (s0 <= 0 && s1 <= 0 && s2 <= 0);
}

std::string label(VertexId v) { return std::to_string(v + 1); }
std::string label(const Edge& e) { return "[" + label(e.a) + "," + label(e.b) + "]"; }
std::string label(const Triangle& t) {
  return "[" + label(t[0]) + "," + label(t[1]) + "," + label(t[2]) + "]";
}

}  // namespace

std::string AdmissibilityReport::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << std::boolalpha;
  os << "is_geometric_complex=" << is_geometric_complex << '\n'
     << "abstract_complex_matches=" << abstract_complex_matches << '\n'
     << "all_areas_positive=" << all_areas_positive << '\n'
     << "in_M0=" << in_M0() << '\n'
     << "in_Mplus=" << is_admissible_oriented() << '\n'
     << "min_signed_area=" << min_signed_area << '\n'
     << "aspect_ratio=" << aspect_ratio << '\n'
     << "first_violation=" << (first_violation.empty() ? "none" : first_violation) << '\n';
  return os.str();
}

double aspect_ratio(const ConnectivityComplex& complex, const VertexConfiguration& Q) {
  double ar = std::numeric_limits<double>::infinity();
  for (const Triangle& t : complex.triangles()) ar = std::min(ar, triangle_aspect_ratio(Q, t));
  return complex.num_triangles() > 0 ? ar : 0.0;
}

AdmissibilityReport is_in_M0(const ConnectivityComplex& complex, const VertexConfiguration& Q) {
  if (Q.cols() != complex.num_vertices()) {
    throw std::invalid_argument("configuration has " + std::to_string(Q.cols()) + " vertices, complex has " +
                                std::to_string(complex.num_vertices()));
  }
  AdmissibilityReport report;
  auto violate = [&report](const std::string& what) {
    if (report.first_violation.empty()) report.first_violation = what;
  };

  report.min_signed_area = std::numeric_limits<double>::infinity();
  bool nondegenerate = true;
  for (const Triangle& t : complex.triangles()) {
    const double a = signed_area(Q, t);
    report.min_signed_area = std::min(report.min_signed_area, a);
    if (a == 0.0) {
      nondegenerate = false;
      violate("degenerate triangle " + label(t));
    }
  }
  report.all_areas_positive = report.min_signed_area > 0.0;
  report.aspect_ratio = aspect_ratio(complex, Q);

  // Vertices realized at the same point make distinct faces share a simplex.
  // Identifying them by position, the remaining checks test whether the
  // realized simplices form a geometric complex.
  const int nv = complex.num_vertices();
  std::vector<VertexId> rep(nv);
  report.abstract_complex_matches = true;
  for (VertexId v = 0; v < nv; ++v) {
    rep[v] = v;
    for (VertexId u = 0; u < v; ++u) {
      if (rep[u] == u && Q.col(u) == Q.col(v)) {
        rep[v] = u;
        report.abstract_complex_matches = false;
        violate("vertices " + label(u) + " and " + label(v) + " coincide");
        break;
      }
    }
  }
  if (!nondegenerate) {
    report.is_geometric_complex = false;
    return report;
  }

  bool geometric = true;
  std::vector<VertexId> used;
  for (VertexId v = 0; v < nv; ++v) {
    if (rep[v] == v && !complex.vertex_triangles(v).empty()) used.push_back(v);
  }

  for (const Triangle& t : complex.triangles()) {
    const Triangle r{rep[t[0]], rep[t[1]], rep[t[2]]};
    for (VertexId v : used) {
      if (v == r[0] || v == r[1] || v == r[2]) continue;
      if (in_closed_triangle(Q.col(t[0]), Q.col(t[1]), Q.col(t[2]), Q.col(v))) {
        geometric = false;
        violate("vertex " + label(v) + " in triangle " + label(t));
      }
    }
  }

  std::vector<Edge> edges;
  for (const Edge& e : complex.edges()) {
    Edge r = make_edge(rep[e.a], rep[e.b]);
    if (r.a != r.b) edges.push_back(r);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& e = edges[i];
      const Edge& f = edges[j];
      VertexId shared = -1, e_other = -1, f_other = -1;
      if (e.a == f.a) { shared = e.a; e_other = e.b; f_other = f.b; }
      else if (e.a == f.b) { shared = e.a; e_other = e.b; f_other = f.a; }
      else if (e.b == f.a) { shared = e.b; e_other = e.a; f_other = f.b; }
      else if (e.b == f.b) { shared = e.b; e_other = e.a; f_other = f.a; }
      bool bad = false;
      if (shared < 0) {
        bad = segments_intersect(Q.col(e.a), Q.col(e.b), Q.col(f.a), Q.col(f.b));
      } else {
        const Point s = Q.col(shared);
        const Point de = Q.col(e_other) - s;
        const Point df = Q.col(f_other) - s;
        bad = orientation(s, Q.col(e_other), Q.col(f_other)) == 0 && de.dot(df) > 0.0;
      }
      if (bad) {
        geometric = false;
        violate("edges " + label(e) + " and " + label(f) + " intersect");
      }
    }
  }
  report.is_geometric_complex = geometric;
  return report;
}

AdmissibilityReport is_in_Mplus(const ConnectivityComplex& complex, const VertexConfiguration& Q) {
  AdmissibilityReport report = is_in_M0(complex, Q);
  if (report.in_M0() && !report.all_areas_positive) {
    for (const Triangle& t : complex.triangles()) {
      if (signed_area(Q, t) <= 0.0) {
        report.first_violation = "negatively oriented triangle " + label(t);
        break;
      }
    }
  }
  return report;
}

}  // namespace meshgeo
