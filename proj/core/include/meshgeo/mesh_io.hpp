#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "meshgeo/geometry.hpp"
#include "meshgeo/simplicial.hpp"

namespace meshgeo {

struct Mesh {
  ConnectivityComplex complex;
  VertexConfiguration vertices;
};

// "%.17g"
std::string format_double(double x);

// Line 1 `NV NT`, then NV lines `x y`, then NT lines of 1-based ids.
// Throws MalformedInput on bad content, IoError when the file cannot be read.
Mesh parse_mesh(std::istream& in);
Mesh read_mesh(const std::filesystem::path& path);
void write_mesh(std::ostream& out, const Mesh& mesh);
void write_mesh(const std::filesystem::path& path, const Mesh& mesh);

// Vertex-vector files (tangents, momenta) use the same header; any triangle
// block is ignored. Written with NT = 0.
VertexConfiguration parse_vectors(std::istream& in);
VertexConfiguration read_vectors(const std::filesystem::path& path);
void write_vectors(std::ostream& out, const VertexConfiguration& V);
void write_vectors(const std::filesystem::path& path, const VertexConfiguration& V);

}  // namespace meshgeo
