#include <benchmark/benchmark.h>

#include "meshgeo/admissibility.hpp"
#include "meshgeo/experiment.hpp"
#include "meshgeo/integrator.hpp"
#include "meshgeo/metric.hpp"

using namespace meshgeo;

namespace {

// Disk mesh refined range(0) times.
Mesh refined_disk(int levels) {
  Mesh m = disk_mesh();
  for (int i = 0; i < levels; ++i) m = refine_uniform(m);
  return m;
}

MetricParams params_for(const Mesh& m, double beta2) {
  MetricParams p;
  p.beta1 = 0.15;
  p.beta2 = beta2;
  p.beta3 = 0.15;
  p.mu = 100;
  p.qref = m.vertices;
  return p;
}

void BM_Gradient(benchmark::State& state) {
  const Mesh m = refined_disk(static_cast<int>(state.range(0)));
  MeshAugmentation f(m.complex, params_for(m, state.range(1) ? 0.1 : 0.0));
  const Eigen::VectorXd q = vec(m.vertices);
  for (auto _ : state) benchmark::DoNotOptimize(f.gradient(q));
  state.counters["vertices"] = m.complex.num_vertices();
}
BENCHMARK(BM_Gradient)->ArgsProduct({{0, 1, 2}, {0, 1}});

void BM_HessianVec(benchmark::State& state) {
  const Mesh m = refined_disk(static_cast<int>(state.range(0)));
  MeshAugmentation exact(m.complex, params_for(m, 0.0), HessianMode::exact);
  MeshAugmentation fd(m.complex, params_for(m, 0.0), HessianMode::finite_difference);
  const MeshAugmentation& f = state.range(1) ? fd : exact;
  const Eigen::VectorXd q = vec(m.vertices);
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(q.size());
  for (auto _ : state) benchmark::DoNotOptimize(f.hessian_vec(q, w));
  state.SetLabel(state.range(1) ? "finite difference" : "dual number");
}
BENCHMARK(BM_HessianVec)->ArgsProduct({{0, 1, 2}, {0, 1}});

void BM_IsInM0(benchmark::State& state) {
  const Mesh m = refined_disk(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_in_M0(m.complex, m.vertices));
  state.counters["triangles"] = m.complex.num_triangles();
}
BENCHMARK(BM_IsInM0)->DenseRange(0, 2);

void BM_StormerVerletSteps(benchmark::State& state) {
  const Mesh m = refined_disk(static_cast<int>(state.range(0)));
  MeshAugmentation f(m.complex, params_for(m, 0.0));
  const Eigen::VectorXd q = vec(m.vertices);
  const Eigen::VectorXd v = vec(restrict_to(preset_tangent(TangentPreset::translate, m.vertices, 0.5),
                                            classify_faces(m.complex).boundary_vertices));
  IntegratorOptions opts;
  opts.record_every = 0;
  opts.check_every = 0;
  constexpr int kSteps = 20;
  for (auto _ : state) benchmark::DoNotOptimize(stormer_verlet(f, q, v, kSteps * 4e-4, kSteps, opts));
  state.SetItemsProcessed(state.iterations() * kSteps);
}
BENCHMARK(BM_StormerVerletSteps)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
