#include "meshgeo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>

#include "meshgeo/admissibility.hpp"
#include "meshgeo/errors.hpp"
#include "meshgeo/svg.hpp"

namespace meshgeo {

namespace {

constexpr const char* kCsvHeader = "# mesh-geodesics v1\n";

std::string padded(int step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%05d", step);
  return buf;
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << kCsvHeader;
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw IoError("cannot write " + path.string());
}

std::set<int> snapshot_steps(int N, int count) {
  std::set<int> steps;
  if (count <= 0) return steps;
  if (count == 1) return {N};
  for (int j = 0; j < count; ++j) {
    steps.insert(static_cast<int>(std::llround(static_cast<double>(j) * N / (count - 1))));
  }
  return steps;
}

Mesh make_mesh(const std::vector<std::array<double, 2>>& points, const std::vector<Triangle>& one_based) {
  VertexConfiguration Q(2, static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) Q.col(j) << points[j][0], points[j][1];
  std::vector<Triangle> tris;
  for (const Triangle& t : one_based) tris.push_back({t[0] - 1, t[1] - 1, t[2] - 1});
  return Mesh{ConnectivityComplex(static_cast<int>(points.size()), std::move(tris)), std::move(Q)};
}

}  // namespace

TangentPreset parse_preset(std::string_view name) {
  if (name == "translate") return TangentPreset::translate;
  if (name == "shear") return TangentPreset::shear;
  if (name == "scale") return TangentPreset::scale;
  if (name == "rotate") return TangentPreset::rotate;
  throw std::invalid_argument("unknown preset `" + std::string(name) + "`");
}

std::string_view preset_name(TangentPreset preset) {
  switch (preset) {
    case TangentPreset::translate: return "translate";
    case TangentPreset::shear: return "shear";
    case TangentPreset::scale: return "scale";
    case TangentPreset::rotate: return "rotate";
  }
  return "";
}

VertexConfiguration preset_tangent(TangentPreset preset, const VertexConfiguration& Q, double c) {
  VertexConfiguration V(2, Q.cols());
  const Eigen::Vector2d centroid = Q.rowwise().mean();
  for (Eigen::Index j = 0; j < Q.cols(); ++j) {
    const Eigen::Vector2d r = Q.col(j) - centroid;
    switch (preset) {
      case TangentPreset::translate: V.col(j) << c, 0.0; break;
      case TangentPreset::shear: V.col(j) << c * Q(1, j), 0.0; break;
      case TangentPreset::scale: V.col(j) = -c * r; break;
      case TangentPreset::rotate: V.col(j) << -c * r.y(), c * r.x(); break;
    }
  }
  return V;
}

VertexConfiguration restrict_to(const VertexConfiguration& V, const std::vector<VertexId>& keep) {
  VertexConfiguration out = VertexConfiguration::Zero(2, V.cols());
  for (VertexId v : keep) out.col(v) = V.col(v);
  return out;
}

LevelScaling LevelScaling::from_level_one(double beta1, double beta3, int num_triangles, int num_vertices) {
  return {beta1 * num_triangles, beta3 * num_vertices};
}

std::pair<double, double> LevelScaling::betas(int level, int num_triangles, int num_vertices) const {
  if (level < 1 || num_triangles < 1 || num_vertices < 1) throw std::invalid_argument("level and sizes must be positive");
  return {c1 / (std::ldexp(1.0, level - 1) * num_triangles), c3 / num_vertices};
}

std::pair<double, double> beta_for_mesh_level(double base_beta1, double base_beta3, int level, int num_triangles,
                                              int num_vertices, int level_one_triangles, int level_one_vertices) {
  return LevelScaling::from_level_one(base_beta1, base_beta3, level_one_triangles, level_one_vertices)
      .betas(level, num_triangles, num_vertices);
}

Mesh refine_uniform(const Mesh& mesh) {
  const auto& cx = mesh.complex;
  const int nv = cx.num_vertices();
  VertexConfiguration Q(2, nv + cx.num_edges());
  Q.leftCols(nv) = mesh.vertices;
  for (int e = 0; e < cx.num_edges(); ++e) {
    const Edge& edge = cx.edges()[e];
    Q.col(nv + e) = 0.5 * (mesh.vertices.col(edge.a) + mesh.vertices.col(edge.b));
  }
  auto mid = [&](VertexId u, VertexId v) { return nv + cx.edge_index(make_edge(u, v)); };
  std::vector<Triangle> tris;
  for (const Triangle& t : cx.triangles()) {
    const int m01 = mid(t[0], t[1]), m12 = mid(t[1], t[2]), m20 = mid(t[2], t[0]);
    tris.push_back({t[0], m01, m20});
    tris.push_back({m01, t[1], m12});
    tris.push_back({m20, m12, t[2]});
    tris.push_back({m01, m12, m20});
  }
  return Mesh{ConnectivityComplex(static_cast<int>(Q.cols()), std::move(tris)), std::move(Q)};
}

Mesh cross_mesh() {
  return make_mesh({{-1, -1}, {-1, 1}, {1, 1}, {1, -1}, {0, 0}}, {{2, 1, 5}, {3, 2, 5}, {4, 3, 5}, {1, 4, 5}});
}

VertexConfiguration cross_inward_tangent() {
  VertexConfiguration V = VertexConfiguration::Zero(2, 5);
  V.col(0) << 1.7, 1.5;
  V.col(3) << -1.7, 1.5;
  return V;
}

Mesh square_mesh() {
  return make_mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}}, {{1, 2, 5}, {2, 3, 5}, {3, 4, 5}, {4, 1, 5}});
}

Mesh disk_mesh() {
  std::vector<std::array<double, 2>> pts{{0.0, 0.0}};
  for (int k = 0; k < 8; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 8.0;
    pts.push_back({0.5 * std::cos(a), 0.5 * std::sin(a)});
  }
  for (int k = 0; k < 16; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 16.0;
    pts.push_back({std::cos(a), std::sin(a)});
  }
  auto inner = [](int k) { return 2 + (k % 8); };
  auto outer = [](int k) { return 10 + (k % 16); };
  std::vector<Triangle> tris;
  for (int k = 0; k < 8; ++k) tris.push_back({1, inner(k), inner(k + 1)});
  for (int k = 0; k < 8; ++k) {
    tris.push_back({inner(k), outer(2 * k), outer(2 * k + 1)});
    tris.push_back({inner(k), outer(2 * k + 1), inner(k + 1)});
    tris.push_back({inner(k + 1), outer(2 * k + 1), outer(2 * k + 2)});
  }
  return make_mesh(pts, tris);
}

VertexConfiguration disk_boundary_tangent() {
  const Mesh disk = disk_mesh();
  return restrict_to(preset_tangent(TangentPreset::translate, disk.vertices, 0.5),
                     classify_faces(disk.complex).boundary_vertices);
}

Mesh counterexample_mesh(bool second) {
  const std::vector<Triangle> tris{{1, 4, 3}, {1, 2, 5}, {2, 3, 6}, {3, 4, 6}, {1, 5, 4}, {2, 6, 5}};
  if (!second) {
    return make_mesh({{0.75, 1.25}, {1.25, 1.25}, {1, 0.75}, {-0.5, 0}, {1, 2.5}, {2.5, 0}}, tris);
  }
  return make_mesh({{-0.5, 0}, {2.5, 0}, {1, 2.5}, {0.75, 1.25}, {1, 0.75}, {1.25, 1.25}}, tris);
}

std::vector<std::string> fixture_names() { return {"cross", "square", "disk", "counterexample-a", "counterexample-b"}; }

Mesh fixture_mesh(std::string_view name) {
  if (name == "cross") return cross_mesh();
  if (name == "square") return square_mesh();
  if (name == "disk") return disk_mesh();
  if (name == "counterexample-a") return counterexample_mesh(false);
  if (name == "counterexample-b") return counterexample_mesh(true);
  throw std::invalid_argument("unknown fixture `" + std::string(name) + "`");
}

RunOutcome run_geodesic(const Mesh& mesh, const VertexConfiguration& tangent, const MetricParams& params,
                        const RunOptions& options, const std::filesystem::path& directory) {
  MetricParams p = params;
  if (p.qref.size() == 0) p.qref = mesh.vertices;
  MeshAugmentation f(mesh.complex, p);
  if (tangent.cols() != mesh.vertices.cols()) throw std::invalid_argument("tangent has wrong vertex count");

  const bool write = !directory.empty();
  std::ofstream energy, quality;
  if (write) {
    std::filesystem::create_directories(directory);
    energy = open_csv(directory / "energy.csv");
    energy << "step,time,H,fp_iters_P,fp_iters_Q\n";
    quality = open_csv(directory / "quality.csv");
    quality << "step,time,aspect_ratio,min_signed_area\n";
    if (options.snapshots > 0) std::filesystem::create_directories(directory / "traj");
  }
  const std::set<int> snaps = write ? snapshot_steps(options.N, options.snapshots) : std::set<int>{};
  std::vector<std::pair<int, VertexConfiguration>> frames;

  RunOutcome out;
  out.min_aspect_ratio = std::numeric_limits<double>::infinity();
  VertexConfiguration last = mesh.vertices;

  IntegratorOptions io;
  io.fixed_point = options.fixed_point;
  io.check_every = options.check_every;
  io.record_every = 0;
  io.energy_tolerance = options.energy_tolerance;
  io.observer = [&](const StepView& s) {
    last = unvec(s.q);
    const double ar = aspect_ratio(mesh.complex, last);
    out.min_aspect_ratio = std::min(out.min_aspect_ratio, ar);
    out.final_aspect_ratio = ar;
    out.steps_taken = s.step;
    if (!write) return;
    double min_area = std::numeric_limits<double>::infinity();
    for (const Triangle& t : mesh.complex.triangles()) min_area = std::min(min_area, signed_area(last, t));
    energy << s.step << ',' << format_double(s.time) << ',' << format_double(s.hamiltonian) << ','
           << s.iterations_p << ',' << s.iterations_q << '\n';
    quality << s.step << ',' << format_double(s.time) << ',' << format_double(ar) << ','
            << format_double(min_area) << '\n';
    if (snaps.count(s.step)) {
      write_mesh(directory / "traj" / ("step_" + padded(s.step) + ".txt"), Mesh{mesh.complex, last});
      frames.emplace_back(s.step, last);
    }
  };

  try {
    GeodesicTrajectory traj = stormer_verlet(f, vec(mesh.vertices), vec(tangent), options.T, options.N, io);
    out.completed = true;
    out.max_relative_drift = traj.max_relative_drift;
  } catch (const InadmissibleState& e) {
    out.failure_kind = "inadmissible";
    out.failure_message = e.what();
    out.failure_step = e.step();
    out.failure_time = e.time();
  } catch (const FixedPointDiverged& e) {
    out.failure_kind = "diverged";
    out.failure_message = e.what();
    out.failure_step = e.step();
    out.failure_time = options.T * e.step() / options.N;
  }
  out.final_vertices = last;
  if (!std::isfinite(out.min_aspect_ratio)) out.min_aspect_ratio = 0.0;
  if (!out.completed && out.failure_kind == "inadmissible") out.min_aspect_ratio = 0.0;

  if (write && options.svg && !frames.empty()) {
    if (frames.back().first != out.steps_taken) frames.emplace_back(out.steps_taken, last);
    std::vector<VertexConfiguration> all;
    all.push_back(mesh.vertices);
    for (const auto& fr : frames) all.push_back(fr.second);
    const BoundingBox box = bounding_box(all);
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const bool final_frame = i + 1 == frames.size();
      std::vector<SvgLayer> layers{{&mesh.vertices, "red"}, {&frames[i].second, final_frame ? "blue" : "black"}};
      write_text(directory / ("snap_" + padded(frames[i].first) + ".svg"), render_svg(mesh.complex, layers, box));
    }
    std::vector<SvgLayer> overview{{&mesh.vertices, "red"}};
    for (std::size_t i = 0; i + 1 < frames.size(); ++i) overview.push_back({&frames[i].second, "black"});
    overview.push_back({&frames.back().second, "blue"});
    write_text(directory / "overview.svg", render_svg(mesh.complex, overview, box));
  }
  return out;
}

std::vector<GridOutcome> run_experiment(const ExperimentSpec& spec) {
  if (spec.grid.empty()) throw std::invalid_argument("experiment grid is empty");
  for (const GridPoint& g : spec.grid) {
    if (g.N < 1) throw std::invalid_argument("grid point needs N >= 1");
  }
  std::filesystem::create_directories(spec.output_dir);
  std::vector<GridOutcome> outcomes(spec.grid.size());
  std::vector<std::exception_ptr> errors(spec.grid.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t i = next++; i < spec.grid.size(); i = next++) {
      try {
        const GridPoint& g = spec.grid[i];
        char name[32];
        std::snprintf(name, sizeof name, "point_%03zu", i);
        MetricParams p = spec.base;
        p.beta1 = g.beta1;
        p.beta3 = g.beta3;
        RunOptions ro = spec.run;
        ro.N = g.N;
        outcomes[i].point = g;
        outcomes[i].directory = spec.output_dir / name;
        outcomes[i].run = run_geodesic(spec.mesh, spec.tangent, p, ro, outcomes[i].directory);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(spec.jobs, static_cast<int>(spec.grid.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::ofstream summary = open_csv(spec.output_dir / "summary.csv");
  summary << "point,beta1,beta3,N,status,failure_step,failure_time,min_aspect_ratio,final_aspect_ratio,"
             "max_relative_drift\n";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const GridOutcome& o = outcomes[i];
    summary << i << ',' << format_double(o.point.beta1) << ',' << format_double(o.point.beta3) << ',' << o.point.N
            << ',' << (o.run.completed ? "ok" : o.run.failure_kind) << ',' << o.run.failure_step << ','
            << format_double(o.run.failure_time) << ',' << format_double(o.run.min_aspect_ratio) << ','
            << format_double(o.run.final_aspect_ratio) << ',' << format_double(o.run.max_relative_drift) << '\n';
  }
  if (!summary) throw IoError("failed writing summary.csv");
  return outcomes;
}

}  // namespace meshgeo
