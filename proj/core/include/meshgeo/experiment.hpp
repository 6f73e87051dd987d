#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "meshgeo/integrator.hpp"
#include "meshgeo/mesh_io.hpp"
#include "meshgeo/metric.hpp"

namespace meshgeo {

enum class TangentPreset { translate, shear, scale, rotate };

// Throws std::invalid_argument for unknown names.
TangentPreset parse_preset(std::string_view name);
std::string_view preset_name(TangentPreset preset);

// translate: (c, 0) everywhere; shear: (c y_j, 0); scale: -c (Q_j - centroid);
// rotate: c perp(Q_j - centroid).
VertexConfiguration preset_tangent(TangentPreset preset, const VertexConfiguration& Q, double c = 1.0);

// Zero every column except those listed.
VertexConfiguration restrict_to(const VertexConfiguration& V, const std::vector<VertexId>& keep);

// 2^{l-1} N_T beta1 = C1 and N_V beta3 = C3, with the constants fixed on level 1.
struct LevelScaling {
  double c1 = 0.0;
  double c3 = 0.0;

  static LevelScaling from_level_one(double beta1, double beta3, int num_triangles, int num_vertices);
  std::pair<double, double> betas(int level, int num_triangles, int num_vertices) const;
};

std::pair<double, double> beta_for_mesh_level(double base_beta1, double base_beta3, int level, int num_triangles,
                                              int num_vertices, int level_one_triangles, int level_one_vertices);

// Splits every triangle into four through the edge midpoints.
Mesh refine_uniform(const Mesh& mesh);

// Fixture meshes.
Mesh cross_mesh();                 // corners (+-1, +-1), center (0, 0)
VertexConfiguration cross_inward_tangent();  // bottom corners moving towards each other
Mesh square_mesh();                // unit square with crossed diagonals
Mesh disk_mesh();                  // center, ring of 8 at radius 1/2, ring of 16 at radius 1
VertexConfiguration disk_boundary_tangent();  // outer ring moving by (1/2, 0), interior at rest
Mesh counterexample_mesh(bool second);
Mesh fixture_mesh(std::string_view name);
std::vector<std::string> fixture_names();

struct RunOptions {
  double T = 1.0;
  int N = 100;
  int snapshots = 0;     // evenly spaced step indices written to traj/
  bool svg = false;
  int check_every = 1;
  FixedPointOptions fixed_point;
  double energy_tolerance = 1e-5;
};

struct RunOutcome {
  bool completed = false;
  std::string failure_kind;  // "inadmissible", "diverged" or empty
  std::string failure_message;
  int failure_step = -1;
  double failure_time = 0.0;
  int steps_taken = 0;
  double min_aspect_ratio = 0.0;
  double final_aspect_ratio = 0.0;
  double max_relative_drift = 0.0;
  VertexConfiguration final_vertices;
};

// Integrates one geodesic and writes energy.csv, quality.csv, traj/ and SVG
// snapshots below `directory` (nothing is written when it is empty).
// Integration failures are reported in the outcome; I/O errors throw.
RunOutcome run_geodesic(const Mesh& mesh, const VertexConfiguration& tangent, const MetricParams& params,
                        const RunOptions& options, const std::filesystem::path& directory);

struct GridPoint {
  double beta1 = 0.0;
  double beta3 = 0.0;
  int N = 1;
};

struct ExperimentSpec {
  Mesh mesh;
  VertexConfiguration tangent;
  MetricParams base;  // beta1/beta3 replaced per grid point; empty qref means the initial mesh
  std::vector<GridPoint> grid;
  RunOptions run;     // N replaced per grid point
  std::filesystem::path output_dir;
  int jobs = 1;
};

struct GridOutcome {
  GridPoint point;
  RunOutcome run;
  std::filesystem::path directory;
};

// Grid points run on a pool of `jobs` threads; writes summary.csv.
std::vector<GridOutcome> run_experiment(const ExperimentSpec& spec);

}  // namespace meshgeo
