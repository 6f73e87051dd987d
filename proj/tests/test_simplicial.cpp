#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "meshgeo/errors.hpp"
#include "meshgeo/simplicial.hpp"
#include "support.hpp"

using namespace meshgeo;

namespace {

ConnectivityComplex example_complex() {
  return ConnectivityComplex::from_matrix(5, (Eigen::Matrix3Xi(3, 4) << 2, 3, 4, 1, 1, 2, 3, 4, 5, 5, 5, 5).finished());
}

// Degree of each vertex in the graph formed by the edges of a face set.
std::map<VertexId, int> chain_degrees(const std::vector<Face>& faces) {
  std::map<VertexId, int> deg;
  for (const Face& f : faces) {
    if (f.size() == 1) deg[f[0]] += 0;
    if (f.size() == 2) {
      ++deg[f[0]];
      ++deg[f[1]];
    }
  }
  return deg;
}

bool chain_connected(const std::vector<Face>& faces) {
  std::map<VertexId, VertexId> parent;
  std::function<VertexId(VertexId)> find = [&](VertexId x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const Face& f : faces) {
    for (VertexId v : f) parent.emplace(v, v);
  }
  for (const Face& f : faces) {
    if (f.size() == 2) parent[find(f[0])] = find(f[1]);
  }
  std::set<VertexId> roots;
  for (auto& [v, p] : parent) roots.insert(find(v));
  return roots.size() == 1;
}

}  // namespace

TEST(Simplicial, ExampleComplexIsConnectivityComplex) {
  ValidationReport r = validate_connectivity(example_complex());
  EXPECT_TRUE(r.pure);
  EXPECT_TRUE(r.two_path_connected);
  EXPECT_TRUE(r.is_connectivity_complex());
  EXPECT_EQ(r.max_edge_incidence, 2);
}

TEST(Simplicial, TrianglesSharingOnlyAVertexAreNotTwoPathConnected) {
  ConnectivityComplex c(5, {{0, 1, 2}, {2, 3, 4}});
  ValidationReport r = validate_connectivity(c);
  EXPECT_FALSE(r.two_path_connected);
  EXPECT_EQ(r.num_components, 2);
  EXPECT_TRUE(r.pure);
}

TEST(Simplicial, ExplicitFaceListsDetectImpurity) {
  std::vector<Face> faces{{0, 1, 2}, {0, 1}, {1, 2}, {0, 2}, {0, 3}, {0}, {1}, {2}, {3}};
  ValidationReport r = validate_faces(4, faces);
  EXPECT_TRUE(r.downward_closed);
  EXPECT_FALSE(r.pure);
  ASSERT_EQ(r.non_maximal_faces.size(), 1u);
  EXPECT_EQ(r.non_maximal_faces[0], (Face{0, 3}));

  std::vector<Face> bowtie{{0, 1, 2}, {2, 3, 4}, {0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4},
                           {0},       {1},       {2},    {3},    {4}};
  ValidationReport b = validate_faces(5, bowtie);
  EXPECT_TRUE(b.pure);
  EXPECT_FALSE(b.two_path_connected);

  ValidationReport open = validate_faces(3, {{0, 1, 2}});
  EXPECT_FALSE(open.downward_closed);
}

TEST(Simplicial, SingleTriangle) {
  ConnectivityComplex c(3, {{0, 1, 2}});
  ValidationReport r = validate_connectivity(c);
  EXPECT_TRUE(r.pure);
  EXPECT_TRUE(r.two_path_connected);
  EXPECT_TRUE(check_orientable(c).orientable);
  ConnectivityComplex flipped(3, {{1, 0, 2}});
  EXPECT_TRUE(check_orientable(flipped).orientable);
  FaceClassification f = classify_faces(c);
  EXPECT_EQ(f.boundary_vertices.size(), 3u);
  EXPECT_EQ(f.boundary_edges.size(), 3u);
  EXPECT_EQ(f.boundary_triangles.size(), 1u);
  EXPECT_TRUE(f.interior_vertices.empty());
  EXPECT_TRUE(f.interior_edges.empty());
}

TEST(Simplicial, IsolatedVertexIsImpure) {
  ConnectivityComplex c(4, {{0, 1, 2}});
  ValidationReport r = validate_connectivity(c);
  EXPECT_FALSE(r.pure);
  EXPECT_EQ(r.isolated_vertices, std::vector<VertexId>{3});
}

TEST(Simplicial, Orientability) {
  ConnectivityComplex consistent(5, {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
  EXPECT_TRUE(check_orientable(consistent).orientable);
  EXPECT_TRUE(is_consistently_oriented(consistent));

  ConnectivityComplex three(5, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
  EXPECT_FALSE(check_orientable(three).orientable);
  EXPECT_FALSE(is_consistently_oriented(three));

  ConnectivityComplex mixed(5, {{0, 1, 4}, {2, 1, 4}, {2, 3, 4}, {3, 0, 4}});
  EXPECT_FALSE(is_consistently_oriented(mixed));
  OrientationResult fixed = check_orientable(mixed);
  ASSERT_TRUE(fixed.orientable);
  EXPECT_TRUE(is_consistently_oriented(ConnectivityComplex(5, fixed.triangles)));
}

TEST(Simplicial, MoebiusStripIsNotOrientable) {
  ConnectivityComplex moebius(5, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 0}, {4, 0, 1}});
  EXPECT_EQ(validate_connectivity(moebius).max_edge_incidence, 2);
  EXPECT_FALSE(check_orientable(moebius).orientable);
  ConnectivityComplex annulus(6, {{0, 1, 3}, {1, 4, 3}, {1, 2, 4}, {2, 5, 4}, {2, 0, 5}, {0, 3, 5}});
  EXPECT_TRUE(check_orientable(annulus).orientable);
}

TEST(Simplicial, OrientabilityInvariantUnderRelabeling) {
  std::mt19937_64 rng(7);
  std::vector<ConnectivityComplex> cases{example_complex(),
                                         ConnectivityComplex(5, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 0}, {4, 0, 1}}),
                                         ConnectivityComplex(5, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}})};
  for (const auto& c : cases) {
    const bool expected = check_orientable(c).orientable;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> perm(c.num_vertices());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Triangle> tris;
      for (const Triangle& t : c.triangles()) tris.push_back({perm[t[0]], perm[t[1]], perm[t[2]]});
      std::shuffle(tris.begin(), tris.end(), rng);
      EXPECT_EQ(check_orientable(ConnectivityComplex(c.num_vertices(), tris)).orientable, expected);
    }
  }
}

TEST(Simplicial, ConnectivityMatrixMatchesStoredOrder) {
  Eigen::Matrix3Xi m = example_complex().connectivity_matrix();
  Eigen::Matrix3Xi expected(3, 4);
  expected << 2, 3, 4, 1, 1, 2, 3, 4, 5, 5, 5, 5;
  EXPECT_EQ(m, expected);
}

TEST(Simplicial, MatrixRoundTrip) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Mesh mesh = testkit::random_grid_mesh(rng, 3 + trial % 3, 2 + trial % 2);
    Eigen::Matrix3Xi m = mesh.complex.connectivity_matrix();
    // Rotate some columns: an even permutation describes the same oriented face.
    for (Eigen::Index k = 0; k < m.cols(); k += 2) {
      Eigen::Vector3i col = m.col(k);
      m.col(k) << col[1], col[2], col[0];
    }
    ConnectivityComplex back = ConnectivityComplex::from_matrix(mesh.complex.num_vertices(), m);
    EXPECT_TRUE(back.same_oriented(mesh.complex));
    EXPECT_EQ(ConnectivityComplex::from_matrix(back.num_vertices(), back.connectivity_matrix()).connectivity_matrix(),
              m);
  }
}

TEST(Simplicial, FromMatrixRejectsBadColumns) {
  EXPECT_THROW(ConnectivityComplex::from_matrix(3, (Eigen::Matrix3Xi(3, 1) << 1, 1, 2).finished()), MalformedInput);
  EXPECT_THROW(ConnectivityComplex::from_matrix(3, (Eigen::Matrix3Xi(3, 1) << 1, 2, 4).finished()), MalformedInput);
  EXPECT_THROW(ConnectivityComplex::from_matrix(3, (Eigen::Matrix3Xi(3, 1) << 0, 1, 2).finished()), MalformedInput);
  EXPECT_THROW(ConnectivityComplex(3, {{0, 1, 2}, {1, 0, 2}}), MalformedInput);
}

TEST(Simplicial, CanonicalRotation) {
  EXPECT_EQ(canonical_rotation({3, 1, 2}), (Triangle{1, 2, 3}));
  EXPECT_EQ(canonical_rotation({2, 3, 1}), (Triangle{1, 2, 3}));
  EXPECT_EQ(canonical_rotation({1, 3, 2}), (Triangle{1, 3, 2}));
}

TEST(Simplicial, ClassifyExampleComplex) {
  FaceClassification f = classify_faces(example_complex());
  EXPECT_EQ(f.boundary_vertices, (std::vector<VertexId>{0, 1, 2, 3}));
  EXPECT_EQ(f.interior_vertices, (std::vector<VertexId>{4}));
  std::set<Edge> expected{make_edge(0, 1), make_edge(1, 2), make_edge(2, 3), make_edge(3, 0)};
  EXPECT_EQ(std::set<Edge>(f.boundary_edges.begin(), f.boundary_edges.end()), expected);
  EXPECT_EQ(f.interior_edges.size(), 4u);
  EXPECT_EQ(f.boundary_triangles.size(), 4u);
}

TEST(Simplicial, ClassificationPartitionsFaces) {
  std::mt19937_64 rng(3);
  std::vector<Mesh> meshes{testkit::fan_mesh(6), disk_mesh(), square_mesh()};
  for (int i = 0; i < 10; ++i) meshes.push_back(testkit::random_grid_mesh(rng, 3 + i % 3, 3));
  for (const Mesh& m : meshes) {
    const auto& c = m.complex;
    FaceClassification f = classify_faces(c);
    EXPECT_EQ(f.boundary_vertices.size() + f.interior_vertices.size(), static_cast<std::size_t>(c.num_vertices()));
    EXPECT_EQ(f.boundary_edges.size() + f.interior_edges.size(), static_cast<std::size_t>(c.num_edges()));
    EXPECT_EQ(f.boundary_triangles.size() + f.interior_triangles.size(),
              static_cast<std::size_t>(c.num_triangles()));
    EXPECT_GE(f.boundary_edges.size(), 3u);
    for (VertexId v : f.boundary_vertices) {
      bool on_edge = std::any_of(f.boundary_edges.begin(), f.boundary_edges.end(),
                                 [v](const Edge& e) { return e.a == v || e.b == v; });
      EXPECT_TRUE(on_edge);
    }
  }
}

TEST(Simplicial, HexagonalFanCenterIsInterior) {
  Mesh fan = testkit::fan_mesh(6);
  FaceClassification f = classify_faces(fan.complex);
  EXPECT_EQ(f.interior_vertices, std::vector<VertexId>{0});
  EXPECT_EQ(f.boundary_vertices.size(), 6u);
}

TEST(Simplicial, LinkOfInteriorVertexIsClosedCycle) {
  Mesh fan = testkit::fan_mesh(6);
  std::vector<Face> lk = link(fan.complex, {0});
  EXPECT_EQ(lk.size(), 12u);  // six vertices and six edges
  for (auto [v, d] : chain_degrees(lk)) EXPECT_EQ(d, 2) << "vertex " << v;
  EXPECT_TRUE(chain_connected(lk));
}

TEST(Simplicial, LinkOfBoundaryVertexOfTriangle) {
  ConnectivityComplex c(3, {{0, 1, 2}});
  std::vector<Face> lk = link(c, {0});
  EXPECT_EQ(lk, (std::vector<Face>{{1}, {2}, {1, 2}}));
  EXPECT_EQ(star(c, {0}), (std::vector<Face>{{0}, {0, 1}, {0, 2}, {0, 1, 2}}));
  EXPECT_EQ(closed_star(c, {0}).size(), 7u);
}

TEST(Simplicial, LinkOfInteriorEdge) {
  ConnectivityComplex c = example_complex();
  EXPECT_EQ(link(c, {0, 4}), (std::vector<Face>{{1}, {3}}));
  EXPECT_EQ(star(c, {0, 4}), (std::vector<Face>{{0, 4}, {0, 1, 4}, {0, 3, 4}}));
}

TEST(Simplicial, LinksAreSimpleChains) {
  std::mt19937_64 rng(5);
  std::vector<Mesh> meshes{disk_mesh(), testkit::fan_mesh(7)};
  for (int i = 0; i < 5; ++i) meshes.push_back(testkit::random_grid_mesh(rng, 4, 3));
  for (const Mesh& m : meshes) {
    FaceClassification f = classify_faces(m.complex);
    for (VertexId v = 0; v < m.complex.num_vertices(); ++v) {
      std::vector<Face> lk = link(m.complex, {v});
      EXPECT_TRUE(chain_connected(lk));
      const bool interior = std::binary_search(f.interior_vertices.begin(), f.interior_vertices.end(), v);
      for (auto [u, d] : chain_degrees(lk)) {
        EXPECT_LE(d, 2);
        if (interior) EXPECT_EQ(d, 2);
      }
    }
  }
}

TEST(Simplicial, UnknownFaceThrows) {
  ConnectivityComplex c = example_complex();
  EXPECT_THROW(star(c, {0, 2}), std::invalid_argument);
  EXPECT_THROW(link(c, {7}), std::invalid_argument);
  EXPECT_THROW(closed_star(c, {0, 1, 2}), std::invalid_argument);
}
