#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef MESHGEO_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "meshgeo/admissibility.hpp"
#include "meshgeo/errors.hpp"
#include "meshgeo/experiment.hpp"
#include "meshgeo/integrator.hpp"
#include "meshgeo/mesh_io.hpp"
#include "meshgeo/metric.hpp"
#include "meshgeo/oned.hpp"

namespace fs = std::filesystem;
using namespace meshgeo;

namespace {

enum ExitCode { kOk = 0, kInvalid = 1, kIntegration = 2, kIo = 3 };

struct MetricFlags {
  double beta1 = 1.0;
  double beta2 = 0.0;
  double beta3 = 1.0;
  double mu = 100.0;
  double cutoff_lo = 0.0;
  double cutoff_hi = 0.0;

  MetricParams params(const VertexConfiguration& qref) const {
    MetricParams p;
    p.beta1 = beta1;
    p.beta2 = beta2;
    p.beta3 = beta3;
    p.mu = mu;
    p.distance_cutoff = {cutoff_lo, cutoff_hi};
    p.qref = qref;
    return p;
  }
};

struct TangentFlags {
  std::string tangent_file;
  std::string preset;
  double scale = 1.0;
  bool boundary_only = false;

  VertexConfiguration build(const Mesh& mesh) const {
    VertexConfiguration V;
    if (!tangent_file.empty()) {
      V = read_vectors(tangent_file);
      if (V.cols() != mesh.vertices.cols()) throw MalformedInput("tangent vertex count does not match the mesh");
    } else if (!preset.empty()) {
      V = preset_tangent(parse_preset(preset), mesh.vertices, scale);
    } else {
      throw std::invalid_argument("either --tangent or --preset is required");
    }
    if (boundary_only) V = restrict_to(V, classify_faces(mesh.complex).boundary_vertices);
    return V;
  }
};

void add_tangent_flags(CLI::App* app, TangentFlags& t) {
  app->add_option("--tangent", t.tangent_file, "Tangent vector file (same layout as a mesh file, NT = 0)");
  app->add_option("--preset", t.preset, "Tangent preset: translate, shear, scale or rotate");
  app->add_option("--scale", t.scale, "Magnitude c of the preset");
  app->add_flag("--boundary-only", t.boundary_only, "Zero the tangent at interior vertices");
}

std::string env_name(const std::string& long_name) {
  std::string s = "MESHGEO_" + long_name;
  for (char& c : s) c = c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

void attach_env(CLI::App* app) {
  for (CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_single_name();
    if (opt->get_lnames().empty() || name == "help" || name == "config") continue;
    opt->envname(env_name(opt->get_lnames().front()));
  }
  for (CLI::App* sub : app->get_subcommands({})) attach_env(sub);
}

void print_outcome(const RunOutcome& r) {
  std::cout << "status=" << (r.completed ? "completed" : r.failure_kind) << '\n'
            << "steps=" << r.steps_taken << '\n'
            << "min_aspect_ratio=" << format_double(r.min_aspect_ratio) << '\n'
            << "final_aspect_ratio=" << format_double(r.final_aspect_ratio) << '\n'
            << "max_relative_drift=" << format_double(r.max_relative_drift) << '\n';
  if (!r.completed) {
    std::cout << "failure_step=" << r.failure_step << '\n'
              << "failure_time=" << format_double(r.failure_time) << '\n';
    std::cerr << "meshgeo: " << r.failure_message << '\n';
  }
}

int cmd_validate(const std::string& path) {
  const Mesh mesh = read_mesh(path);
  const ValidationReport complex = validate_connectivity(mesh.complex);
  const OrientationResult orientation = check_orientable(mesh.complex);
  const AdmissibilityReport report = is_in_Mplus(mesh.complex, mesh.vertices);
  std::cout << "connectivity_complex=" << (complex.is_connectivity_complex() ? "true" : "false") << '\n'
            << "consistently_oriented=" << (is_consistently_oriented(mesh.complex) ? "true" : "false") << '\n'
            << "orientable=" << (orientation.orientable ? "true" : "false") << '\n'
            << report.to_string();
  return complex.is_connectivity_complex() && report.is_admissible_oriented() ? kOk : kInvalid;
}

int cmd_geodesic(const std::string& mesh_path, const TangentFlags& tf, const MetricFlags& mf, const RunOptions& run,
                 const std::string& out) {
  const Mesh mesh = read_mesh(mesh_path);
  const VertexConfiguration V = tf.build(mesh);
  MetricParams params = mf.params(mesh.vertices);
  params.validate(mesh.complex.num_vertices());
  const RunOutcome r = run_geodesic(mesh, V, params, run, out);
  print_outcome(r);
  return r.completed ? kOk : kIntegration;
}

int cmd_exp(const std::string& mesh_path, const TangentFlags& tf, const MetricFlags& mf, int N, int check_every,
            const std::string& out) {
  const Mesh mesh = read_mesh(mesh_path);
  const VertexConfiguration V = tf.build(mesh);
  MetricParams params = mf.params(mesh.vertices);
  params.validate(mesh.complex.num_vertices());
  MeshAugmentation f(mesh.complex, params);
  IntegratorOptions opts;
  opts.check_every = check_every;
  const Mesh result{mesh.complex, unvec(exponential_map(f, vec(mesh.vertices), vec(V), N, opts))};
  if (out.empty()) {
    write_mesh(std::cout, result);
  } else {
    write_mesh(fs::path(out), result);
  }
  return kOk;
}

int cmd_demo1d(int n, double beta, std::vector<double> v0, double T, int N, const std::string& out) {
  if (n < 2) throw std::invalid_argument("--n must be at least 2");
  LineConfiguration config;
  config.q = Eigen::VectorXd::LinSpaced(n, 0.0, n - 1.0);
  config.qref = config.q;
  config.beta = beta;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  if (v0.empty()) {
    v[0] = 1.0;
    v[n - 1] = -1.0;
  } else if (static_cast<int>(v0.size()) == n) {
    v = Eigen::Map<Eigen::VectorXd>(v0.data(), n);
  } else {
    throw std::invalid_argument("--v0 needs exactly n values");
  }

  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw IoError("cannot write " + out);
  }
  std::ostream& os = out.empty() ? std::cout : file;
  os << "# mesh-geodesics v1\nstep,time";
  for (int i = 1; i <= n; ++i) os << ",q" << i;
  for (int i = 1; i <= n; ++i) os << ",v" << i;
  os << ",H\n";
  IntegratorOptions opts;
  opts.record_every = 0;
  opts.observer = [&](const StepView& s) {
    os << s.step << ',' << format_double(s.time);
    for (int i = 0; i < n; ++i) os << ',' << format_double(s.q[i]);
    for (int i = 0; i < n; ++i) os << ',' << format_double(s.v[i]);
    os << ',' << format_double(s.hamiltonian) << '\n';
  };
  geodesic_1d(config, v, T, N, opts);
  if (!os) throw IoError("failed writing 1D trajectory");
  return kOk;
}

int cmd_quality(const std::string& mesh_path, const TangentFlags& tf, const MetricFlags& mf,
                const std::vector<double>& betas, const std::vector<int>& steps, const RunOptions& run, int jobs,
                const std::string& out) {
  if (betas.empty()) throw std::invalid_argument("--betas must not be empty");
  if (steps.size() != 1 && steps.size() != betas.size()) {
    throw std::invalid_argument("--steps needs one value or one per beta");
  }
  if (out.empty()) throw std::invalid_argument("--out is required");
  ExperimentSpec spec;
  spec.mesh = read_mesh(mesh_path);
  spec.tangent = tf.build(spec.mesh);
  spec.base = mf.params(spec.mesh.vertices);
  for (std::size_t i = 0; i < betas.size(); ++i) {
    spec.grid.push_back({betas[i], betas[i], steps.size() == 1 ? steps[0] : steps[i]});
  }
  spec.run = run;
  spec.output_dir = out;
  spec.jobs = jobs;
  std::cout << "initial_aspect_ratio=" << format_double(aspect_ratio(spec.mesh.complex, spec.mesh.vertices)) << '\n';
  for (const GridOutcome& g : run_experiment(spec)) {
    std::cout << "beta=" << format_double(g.point.beta1) << " N=" << g.point.N
              << " status=" << (g.run.completed ? "completed" : g.run.failure_kind)
              << " min_aspect_ratio=" << format_double(g.run.min_aspect_ratio) << '\n';
  }
  return kOk;
}

int cmd_fixture(const std::vector<std::string>& names, const std::string& out) {
  const fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  fs::create_directories(dir);
  std::vector<std::string> list = names;
  if (list.empty() || (list.size() == 1 && list[0] == "all")) {
    list = fixture_names();
    list.push_back("cross_inward_tangent");
    list.push_back("disk_boundary_tangent");
  }
  for (const std::string& name : list) {
    const fs::path path = dir / (name + ".txt");
    if (name == "cross_inward_tangent") {
      write_vectors(path, cross_inward_tangent());
    } else if (name == "disk_boundary_tangent") {
      write_vectors(path, disk_boundary_tangent());
    } else {
      write_mesh(path, fixture_mesh(name));
    }
    std::cout << path.string() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesics of planar triangular meshes under a complete Riemannian metric"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file with option defaults");

  MetricFlags mf;
  app.add_option("--beta1", mf.beta1, "Weight of the height terms")->capture_default_str();
  app.add_option("--beta2", mf.beta2, "Weight of the boundary distance terms")->capture_default_str();
  app.add_option("--beta3", mf.beta3, "Weight of the reference term")->capture_default_str();
  app.add_option("--mu", mf.mu, "Regularization parameter (>= 1)")->capture_default_str();
  app.add_option("--cutoff-lo", mf.cutoff_lo, "Lower end of the distance cut-off window");
  app.add_option("--cutoff-hi", mf.cutoff_hi, "Upper end of the distance cut-off window");

  std::string mesh_path;
  TangentFlags tf;
  RunOptions run;
  std::string out;
  int jobs = 1;
  int exp_steps = 100;

  CLI::App* validate = app.add_subcommand("validate", "Check a mesh for admissibility");
  validate->add_option("mesh,--mesh", mesh_path, "Mesh file")->required();

  CLI::App* geodesic = app.add_subcommand("geodesic", "Integrate a geodesic and write its trajectory");
  geodesic->add_option("mesh,--mesh", mesh_path, "Mesh file")->required();
  add_tangent_flags(geodesic, tf);
  geodesic->add_option("--T", run.T, "Final time")->capture_default_str();
  geodesic->add_option("--N", run.N, "Number of steps")->capture_default_str()->check(CLI::PositiveNumber);
  geodesic->add_option("--snapshots", run.snapshots, "Number of evenly spaced mesh snapshots");
  geodesic->add_flag("--svg", run.svg, "Render SVG snapshots");
  geodesic->add_option("--check-every", run.check_every, "Admissibility check period in steps");
  geodesic->add_option("--out", out, "Output directory");

  CLI::App* exp = app.add_subcommand("exp", "Exponential map: geodesic at time 1");
  exp->add_option("mesh,--mesh", mesh_path, "Mesh file")->required();
  add_tangent_flags(exp, tf);
  exp->add_option("--N", exp_steps, "Number of steps")->capture_default_str()->check(CLI::PositiveNumber);
  exp->add_option("--check-every", run.check_every, "Admissibility check period in steps");
  exp->add_option("--out", out, "Output mesh file (stdout when omitted)");

  int n1d = 4;
  double beta1d = 1.0;
  double T1d = 10.0;
  int N1d = 10000;
  std::vector<double> v0;
  CLI::App* demo1d = app.add_subcommand("demo1d", "Geodesic of ordered points on the line, as CSV");
  demo1d->add_option("--n", n1d, "Number of points")->capture_default_str();
  demo1d->add_option("--beta", beta1d, "Weight of the reference term")->capture_default_str();
  demo1d->add_option("--v0", v0, "Initial velocities (default: outer points moving towards each other)");
  demo1d->add_option("--T", T1d, "Final time")->capture_default_str();
  demo1d->add_option("--N", N1d, "Number of steps")->capture_default_str()->check(CLI::PositiveNumber);
  demo1d->add_option("--out", out, "Output CSV file (stdout when omitted)");

  std::vector<double> betas{0.0, 0.15, 0.2, 0.25};
  std::vector<int> steps{100, 5000, 7500, 10000};
  CLI::App* quality = app.add_subcommand("quality", "Aspect ratio along geodesics for a sweep of beta1 = beta3");
  quality->add_option("mesh,--mesh", mesh_path, "Mesh file")->required();
  add_tangent_flags(quality, tf);
  quality->add_option("--betas", betas, "Values of beta1 = beta3")->delimiter(',')->capture_default_str();
  quality->add_option("--steps", steps, "Steps per value (one value or one per beta)")->delimiter(',')->capture_default_str();
  quality->add_option("--T", run.T, "Final time")->capture_default_str();
  quality->add_option("--snapshots", run.snapshots, "Number of evenly spaced mesh snapshots");
  quality->add_flag("--svg", run.svg, "Render SVG snapshots");
  quality->add_option("--check-every", run.check_every, "Admissibility check period in steps");
  quality->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  quality->add_option("--out", out, "Output directory")->required();

  std::vector<std::string> fixture_list;
  CLI::App* fixture = app.add_subcommand("fixture", "Write the built-in meshes and tangents");
  fixture->add_option("names", fixture_list, "Fixture names, or all");
  fixture->add_option("--out", out, "Output directory");

  attach_env(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*validate) return cmd_validate(mesh_path);
    if (*geodesic) return cmd_geodesic(mesh_path, tf, mf, run, out);
    if (*exp) return cmd_exp(mesh_path, tf, mf, exp_steps, run.check_every, out);
    if (*demo1d) return cmd_demo1d(n1d, beta1d, v0, T1d, N1d, out);
    if (*quality) return cmd_quality(mesh_path, tf, mf, betas, steps, run, jobs, out);
    if (*fixture) return cmd_fixture(fixture_list, out);
  } catch (const IoError& e) {
    std::cerr << "meshgeo: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "meshgeo: " << e.what() << '\n';
    return kIo;
  } catch (const InadmissibleState& e) {
    std::cerr << "meshgeo: " << e.what() << '\n';
    return kIntegration;
  } catch (const FixedPointDiverged& e) {
    std::cerr << "meshgeo: " << e.what() << '\n';
    return kIntegration;
  } catch (const std::exception& e) {
    std::cerr << "meshgeo: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
