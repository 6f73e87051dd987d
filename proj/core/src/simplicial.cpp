#include "meshgeo/simplicial.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "meshgeo/errors.hpp"

namespace meshgeo {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Components of the graph whose nodes are triangles and whose edges join
// triangles sharing a 1-face.
int count_triangle_components(int num_triangles, const std::vector<std::vector<int>>& edge_triangles) {
  std::vector<int> parent(num_triangles);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& incident : edge_triangles) {
    for (std::size_t i = 1; i < incident.size(); ++i) {
      int a = find_root(parent, incident[0]);
      int b = find_root(parent, incident[i]);
      if (a != b) parent[b] = a;
    }
  }
  int count = 0;
  for (int k = 0; k < num_triangles; ++k) count += find_root(parent, k) == k;
  return count;
}

// +1 when the triangle traverses e from e.a to e.b, -1 otherwise.
int induced_direction(const Triangle& t, Edge e) {
  for (int l = 0; l < 3; ++l) {
    if (t[l] == e.a && t[(l + 1) % 3] == e.b) return 1;
  }
  return -1;
}

bool face_less(const Face& x, const Face& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

std::vector<Face> subfaces(const Triangle& t) {
  Face s{t[0], t[1], t[2]};
  std::sort(s.begin(), s.end());
  return {{s[0]}, {s[1]}, {s[2]}, {s[0], s[1]}, {s[0], s[2]}, {s[1], s[2]}, s};
}

bool contains_all(const Face& big, const Face& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool disjoint(const Face& x, const Face& y) {
  for (VertexId v : x) {
    if (std::binary_search(y.begin(), y.end(), v)) return false;
  }
  return true;
}

std::vector<int> triangles_containing(const ConnectivityComplex& complex, const Face& face) {
  if (face.empty() || !complex.has_face(face)) {
    throw std::invalid_argument("face is not part of the complex");
  }
  std::vector<int> result;
  for (int k : complex.vertex_triangles(face.front())) {
    Face s{complex.triangle(k).begin(), complex.triangle(k).end()};
    std::sort(s.begin(), s.end());
    if (contains_all(s, face)) result.push_back(k);
  }
  return result;
}

}  // namespace

Edge make_edge(VertexId u, VertexId v) { return u < v ? Edge{u, v} : Edge{v, u}; }

Triangle canonical_rotation(const Triangle& t) {
  int m = 0;
  if (t[1] < t[m]) m = 1;
  if (t[2] < t[m]) m = 2;
  return {t[m], t[(m + 1) % 3], t[(m + 2) % 3]};
}

ConnectivityComplex::ConnectivityComplex(int num_vertices, std::vector<Triangle> triangles)
    : num_vertices_(num_vertices), triangles_(std::move(triangles)) {
  if (num_vertices_ <= 0) throw MalformedInput("number of vertices must be positive");
  std::set<Face> seen;
  std::map<Edge, std::vector<int>> incidence;
  vertex_triangles_.assign(num_vertices_, {});
  for (int k = 0; k < num_triangles(); ++k) {
    const Triangle& t = triangles_[k];
    for (VertexId v : t) {
      if (v < 0 || v >= num_vertices_) {
        throw MalformedInput("triangle " + std::to_string(k + 1) + " has vertex id out of range");
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw MalformedInput("triangle " + std::to_string(k + 1) + " repeats a vertex id");
    }
    Face key{t[0], t[1], t[2]};
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) {
      throw MalformedInput("triangle " + std::to_string(k + 1) + " duplicates an earlier 2-face");
    }
    for (int l = 0; l < 3; ++l) {
      incidence[make_edge(t[l], t[(l + 1) % 3])].push_back(k);
      vertex_triangles_[t[l]].push_back(k);
    }
  }
  edges_.reserve(incidence.size());
  edge_triangles_.reserve(incidence.size());
  for (auto& [e, list] : incidence) {
    edges_.push_back(e);
    edge_triangles_.push_back(std::move(list));
  }
}

ConnectivityComplex ConnectivityComplex::from_matrix(int num_vertices, const Eigen::Matrix3Xi& one_based) {
  std::vector<Triangle> triangles(one_based.cols());
  for (Eigen::Index k = 0; k < one_based.cols(); ++k) {
    for (int l = 0; l < 3; ++l) triangles[k][l] = one_based(l, k) - 1;
  }
  return ConnectivityComplex(num_vertices, std::move(triangles));
}

Eigen::Matrix3Xi ConnectivityComplex::connectivity_matrix() const {
  Eigen::Matrix3Xi m(3, num_triangles());
  for (int k = 0; k < num_triangles(); ++k) {
    for (int l = 0; l < 3; ++l) m(l, k) = triangles_[k][l] + 1;
  }
  return m;
}

int ConnectivityComplex::edge_index(Edge e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return static_cast<int>(it - edges_.begin());
}

bool ConnectivityComplex::has_face(const Face& face) const {
  for (VertexId v : face) {
    if (v < 0 || v >= num_vertices_) return false;
  }
  switch (face.size()) {
    case 1:
      return !vertex_triangles_[face[0]].empty();
    case 2:
      return face[0] != face[1] && edge_index(make_edge(face[0], face[1])) >= 0;
    case 3:
      for (int k : vertex_triangles_[face[0]]) {
        Face s{triangles_[k].begin(), triangles_[k].end()};
        std::sort(s.begin(), s.end());
        Face f = face;
        std::sort(f.begin(), f.end());
        if (s == f) return true;
      }
      return false;
    default:
      return false;
  }
}

bool ConnectivityComplex::same_oriented(const ConnectivityComplex& other) const {
  if (num_vertices_ != other.num_vertices_ || num_triangles() != other.num_triangles()) return false;
  for (int k = 0; k < num_triangles(); ++k) {
    if (canonical_rotation(triangles_[k]) != canonical_rotation(other.triangles_[k])) return false;
  }
  return true;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  os << "downward_closed=" << downward_closed << '\n'
     << "pure=" << pure << '\n'
     << "two_path_connected=" << two_path_connected << '\n'
     << "components=" << num_components << '\n'
     << "max_edge_incidence=" << max_edge_incidence << '\n';
  if (!isolated_vertices.empty()) {
    os << "isolated_vertices=";
    for (std::size_t i = 0; i < isolated_vertices.size(); ++i) {
      os << (i ? "," : "") << isolated_vertices[i] + 1;
    }
    os << '\n';
  }
  return os.str();
}

ValidationReport validate_connectivity(const ConnectivityComplex& complex) {
  ValidationReport report;
  for (VertexId v = 0; v < complex.num_vertices(); ++v) {
    if (complex.vertex_triangles(v).empty()) {
      report.isolated_vertices.push_back(v);
      report.non_maximal_faces.push_back({v});
    }
  }
  report.pure = report.isolated_vertices.empty();
  std::vector<std::vector<int>> edge_triangles;
  for (int e = 0; e < complex.num_edges(); ++e) {
    auto incident = complex.edge_triangles(e);
    edge_triangles.emplace_back(incident.begin(), incident.end());
    report.edge_incidence.push_back(static_cast<int>(incident.size()));
    report.max_edge_incidence = std::max(report.max_edge_incidence, static_cast<int>(incident.size()));
  }
  report.num_components = count_triangle_components(complex.num_triangles(), edge_triangles);
  report.two_path_connected = report.num_components == 1;
  return report;
}

ValidationReport validate_faces(int num_vertices, const std::vector<Face>& faces) {
  ValidationReport report;
  std::set<Face> all;
  for (Face f : faces) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    if (f.empty() || f.size() > 3) throw MalformedInput("faces must have one to three vertices");
    for (VertexId v : f) {
      if (v < 0 || v >= num_vertices) throw MalformedInput("face vertex id out of range");
    }
    all.insert(f);
  }
  std::vector<bool> used(num_vertices, false);
  for (const Face& f : all) {
    for (VertexId v : f) used[v] = true;
    for (std::size_t drop = 0; f.size() > 1 && drop < f.size(); ++drop) {
      Face sub;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (i != drop) sub.push_back(f[i]);
      }
      if (!all.count(sub)) report.downward_closed = false;
    }
  }
  for (VertexId v = 0; v < num_vertices; ++v) {
    if (!used[v]) report.isolated_vertices.push_back(v);
  }
  std::vector<Face> triangles;
  for (const Face& f : all) {
    if (f.size() == 3) triangles.push_back(f);
  }
  for (const Face& f : all) {
    if (f.size() == 3) continue;
    bool maximal = true;
    for (const Face& g : all) {
      if (g.size() > f.size() && contains_all(g, f)) {
        maximal = false;
        break;
      }
    }
    if (maximal) report.non_maximal_faces.push_back(f);
  }
  report.pure = report.non_maximal_faces.empty() && report.isolated_vertices.empty() && !triangles.empty();

  std::map<Edge, std::vector<int>> incidence;
  for (int k = 0; k < static_cast<int>(triangles.size()); ++k) {
    const Face& t = triangles[k];
    incidence[Edge{t[0], t[1]}].push_back(k);
    incidence[Edge{t[0], t[2]}].push_back(k);
    incidence[Edge{t[1], t[2]}].push_back(k);
  }
  std::vector<std::vector<int>> edge_triangles;
  for (auto& [e, list] : incidence) {
    report.edge_incidence.push_back(static_cast<int>(list.size()));
    report.max_edge_incidence = std::max(report.max_edge_incidence, static_cast<int>(list.size()));
    edge_triangles.push_back(list);
  }
  report.num_components = count_triangle_components(static_cast<int>(triangles.size()), edge_triangles);
  report.two_path_connected = report.num_components == 1;
  return report;
}

OrientationResult check_orientable(const ConnectivityComplex& complex) {
  OrientationResult result;
  const int nt = complex.num_triangles();
  for (int e = 0; e < complex.num_edges(); ++e) {
    if (complex.edge_triangles(e).size() > 2) return result;
  }
  std::vector<int> sign(nt, 0);
  for (int seed = 0; seed < nt; ++seed) {
    if (sign[seed] != 0) continue;
    sign[seed] = 1;
    std::queue<int> pending;
    pending.push(seed);
    while (!pending.empty()) {
      int k = pending.front();
      pending.pop();
      const Triangle& t = complex.triangle(k);
      for (int l = 0; l < 3; ++l) {
        Edge e = make_edge(t[l], t[(l + 1) % 3]);
        auto incident = complex.edge_triangles(complex.edge_index(e));
        for (int m : incident) {
          if (m == k) continue;
          int wanted = -sign[k] * induced_direction(t, e) * induced_direction(complex.triangle(m), e);
          if (sign[m] == 0) {
            sign[m] = wanted;
            pending.push(m);
          } else if (sign[m] != wanted) {
            return result;
          }
        }
      }
    }
  }
  result.orientable = true;
  result.triangles.reserve(nt);
  for (int k = 0; k < nt; ++k) {
    Triangle t = complex.triangle(k);
    if (sign[k] < 0) std::swap(t[1], t[2]);
    result.triangles.push_back(t);
  }
  return result;
}

bool is_consistently_oriented(const ConnectivityComplex& complex) {
  for (int e = 0; e < complex.num_edges(); ++e) {
    auto incident = complex.edge_triangles(e);
    if (incident.size() > 2) return false;
    if (incident.size() == 2) {
      Edge edge = complex.edges()[e];
      if (induced_direction(complex.triangle(incident[0]), edge) ==
          induced_direction(complex.triangle(incident[1]), edge)) {
        return false;
      }
    }
  }
  return true;
}

FaceClassification classify_faces(const ConnectivityComplex& complex) {
  FaceClassification c;
  std::vector<bool> vertex_on_boundary(complex.num_vertices(), false);
  std::vector<bool> triangle_on_boundary(complex.num_triangles(), false);
  for (int e = 0; e < complex.num_edges(); ++e) {
    Edge edge = complex.edges()[e];
    auto incident = complex.edge_triangles(e);
    if (incident.size() == 1) {
      c.boundary_edges.push_back(edge);
      vertex_on_boundary[edge.a] = vertex_on_boundary[edge.b] = true;
      triangle_on_boundary[incident[0]] = true;
    } else {
      c.interior_edges.push_back(edge);
    }
  }
  for (VertexId v = 0; v < complex.num_vertices(); ++v) {
    if (complex.vertex_triangles(v).empty()) continue;
    (vertex_on_boundary[v] ? c.boundary_vertices : c.interior_vertices).push_back(v);
  }
  for (int k = 0; k < complex.num_triangles(); ++k) {
    (triangle_on_boundary[k] ? c.boundary_triangles : c.interior_triangles).push_back(k);
  }
  return c;
}

std::vector<Face> star(const ConnectivityComplex& complex, const Face& face) {
  Face sorted = face;
  std::sort(sorted.begin(), sorted.end());
  std::set<Face> result;
  for (int k : triangles_containing(complex, sorted)) {
    for (Face& f : subfaces(complex.triangle(k))) {
      if (contains_all(f, sorted)) result.insert(std::move(f));
    }
  }
  std::vector<Face> out(result.begin(), result.end());
  std::sort(out.begin(), out.end(), face_less);
  return out;
}

std::vector<Face> closed_star(const ConnectivityComplex& complex, const Face& face) {
  Face sorted = face;
  std::sort(sorted.begin(), sorted.end());
  std::set<Face> result;
  for (int k : triangles_containing(complex, sorted)) {
    for (Face& f : subfaces(complex.triangle(k))) result.insert(std::move(f));
  }
  std::vector<Face> out(result.begin(), result.end());
  std::sort(out.begin(), out.end(), face_less);
  return out;
}

std::vector<Face> link(const ConnectivityComplex& complex, const Face& face) {
  Face sorted = face;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Face> out;
  for (Face& f : closed_star(complex, sorted)) {
    if (disjoint(f, sorted)) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace meshgeo
