#pragma once

#include <array>
#include <compare>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace meshgeo {

// Vertex ids are 0-based in memory and 1-based in files and matrices.
using VertexId = int;
using Triangle = std::array<VertexId, 3>;

struct Edge {
  VertexId a = 0;
  VertexId b = 0;
  auto operator<=>(const Edge&) const = default;
};

Edge make_edge(VertexId u, VertexId v);

// Rotation of t that puts its smallest id first; even permutations share it.
Triangle canonical_rotation(const Triangle& t);

// Sorted vertex list of a simplex.
using Face = std::vector<VertexId>;

class ConnectivityComplex {
 public:
  ConnectivityComplex() = default;
  // Throws MalformedInput on out-of-range ids, repeated ids in a column or
  // duplicate triangles.
  ConnectivityComplex(int num_vertices, std::vector<Triangle> triangles);

  // 3 x N_T matrix of 1-based ids, one triangle per column.
  static ConnectivityComplex from_matrix(int num_vertices, const Eigen::Matrix3Xi& one_based);
  Eigen::Matrix3Xi connectivity_matrix() const;

  int num_vertices() const { return num_vertices_; }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  std::span<const Triangle> triangles() const { return triangles_; }
  const Triangle& triangle(int k) const { return triangles_[k]; }
  // Sorted ascending.
  std::span<const Edge> edges() const { return edges_; }
  std::span<const int> edge_triangles(int edge_index) const { return edge_triangles_[edge_index]; }
  std::span<const int> vertex_triangles(VertexId v) const { return vertex_triangles_[v]; }
  int edge_index(Edge e) const;  // -1 when absent

  bool has_face(const Face& face) const;

  // Same triangles in the same order, each up to an even permutation.
  bool same_oriented(const ConnectivityComplex& other) const;

 private:
  int num_vertices_ = 0;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> edge_triangles_;
  std::vector<std::vector<int>> vertex_triangles_;
};

struct ValidationReport {
  bool downward_closed = true;
  bool pure = true;
  bool two_path_connected = true;
  int num_components = 0;
  int max_edge_incidence = 0;
  std::vector<int> edge_incidence;      // per edge, aligned with edges()
  std::vector<VertexId> isolated_vertices;
  std::vector<Face> non_maximal_faces;  // maximal faces of dimension < 2

  bool is_connectivity_complex() const { return downward_closed && pure && two_path_connected; }
  std::string to_string() const;
};

ValidationReport validate_connectivity(const ConnectivityComplex& complex);

// Explicit abstract complex given by a list of faces (any dimension).
ValidationReport validate_faces(int num_vertices, const std::vector<Face>& faces);

struct OrientationResult {
  bool orientable = false;
  std::vector<Triangle> triangles;  // consistently oriented when orientable
};

// False when some edge has three or more incident triangles.
OrientationResult check_orientable(const ConnectivityComplex& complex);
bool is_consistently_oriented(const ConnectivityComplex& complex);

struct FaceClassification {
  std::vector<VertexId> boundary_vertices;
  std::vector<VertexId> interior_vertices;
  std::vector<Edge> boundary_edges;
  std::vector<Edge> interior_edges;
  std::vector<int> boundary_triangles;
  std::vector<int> interior_triangles;
};

// An edge is on the boundary when exactly one triangle contains it.
FaceClassification classify_faces(const ConnectivityComplex& complex);

std::vector<Face> star(const ConnectivityComplex& complex, const Face& face);
std::vector<Face> closed_star(const ConnectivityComplex& complex, const Face& face);
// Faces of the closed star sharing no vertex with the face.
std::vector<Face> link(const ConnectivityComplex& complex, const Face& face);

}  // namespace meshgeo
