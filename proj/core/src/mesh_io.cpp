#include "meshgeo/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "meshgeo/errors.hpp"

namespace meshgeo {

namespace {

std::pair<long, long> read_header(std::istream& in) {
  long nv = 0, nt = 0;
  if (!(in >> nv >> nt)) throw MalformedInput("missing `NV NT` header");
  if (nv <= 0 || nt < 0) throw MalformedInput("header counts out of range");
  return {nv, nt};
}

VertexConfiguration read_coordinates(std::istream& in, long nv) {
  VertexConfiguration Q(2, nv);
  for (long j = 0; j < nv; ++j) {
    if (!(in >> Q(0, j) >> Q(1, j))) {
      throw MalformedInput("expected coordinates for vertex " + std::to_string(j + 1));
    }
  }
  if (!Q.allFinite()) throw MalformedInput("non-finite coordinate");
  return Q;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Mesh parse_mesh(std::istream& in) {
  auto [nv, nt] = read_header(in);
  VertexConfiguration Q = read_coordinates(in, nv);
  Eigen::Matrix3Xi m(3, nt);
  for (long k = 0; k < nt; ++k) {
    if (!(in >> m(0, k) >> m(1, k) >> m(2, k))) {
      throw MalformedInput("expected vertex ids for triangle " + std::to_string(k + 1));
    }
  }
  std::string extra;
  if (in >> extra) throw MalformedInput("unexpected trailing content `" + extra + "`");
  return Mesh{ConnectivityComplex::from_matrix(static_cast<int>(nv), m), std::move(Q)};
}

Mesh read_mesh(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  try {
    return parse_mesh(in);
  } catch (const MalformedInput& e) {
    throw MalformedInput(path.string() + ": " + e.what());
  }
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  const auto& Q = mesh.vertices;
  out << Q.cols() << ' ' << mesh.complex.num_triangles() << '\n';
  for (Eigen::Index j = 0; j < Q.cols(); ++j) out << format_double(Q(0, j)) << ' ' << format_double(Q(1, j)) << '\n';
  for (const Triangle& t : mesh.complex.triangles()) out << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void write_mesh(const std::filesystem::path& path, const Mesh& mesh) {
  std::ofstream out = open_out(path);
  write_mesh(out, mesh);
  if (!out) throw IoError("failed writing " + path.string());
}

VertexConfiguration parse_vectors(std::istream& in) {
  auto [nv, nt] = read_header(in);
  (void)nt;
  return read_coordinates(in, nv);
}

VertexConfiguration read_vectors(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  try {
    return parse_vectors(in);
  } catch (const MalformedInput& e) {
    throw MalformedInput(path.string() + ": " + e.what());
  }
}

void write_vectors(std::ostream& out, const VertexConfiguration& V) {
  out << V.cols() << " 0\n";
  for (Eigen::Index j = 0; j < V.cols(); ++j) out << format_double(V(0, j)) << ' ' << format_double(V(1, j)) << '\n';
}

void write_vectors(const std::filesystem::path& path, const VertexConfiguration& V) {
  std::ofstream out = open_out(path);
  write_vectors(out, V);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace meshgeo
