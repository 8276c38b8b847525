#include <benchmark/benchmark.h>

#include "nsreg/fields/interpolate.hpp"
#include "nsreg/fields/random_fields.hpp"
#include "nsreg/fields/spectral.hpp"
#include "nsreg/norms/norms.hpp"
#include "nsreg/solver/navier_stokes.hpp"
#include "nsreg/solver/scenarios.hpp"
#include "nsreg/stochastic/flow.hpp"

using namespace nsreg;

static void BM_ForwardInverse(benchmark::State& state) {
  const PeriodicGrid g(static_cast<int>(state.range(0)));
  const ScalarField f = random_smooth_scalar(g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(inverse(forward(f)));
}
BENCHMARK(BM_ForwardInverse)->Arg(16)->Arg(32)->Arg(64);

static void BM_NonlinearTerm(benchmark::State& state) {
  const PeriodicGrid g(static_cast<int>(state.range(0)));
  const VectorField u = taylor_green(g);
  for (auto _ : state) benchmark::DoNotOptimize(nonlinear_term(u));
}
BENCHMARK(BM_NonlinearTerm)->Arg(32)->Arg(64);

static void BM_Step(benchmark::State& state) {
  const VectorField u = taylor_green(PeriodicGrid(32));
  for (auto _ : state) benchmark::DoNotOptimize(step(u, 1e-3));
}
BENCHMARK(BM_Step);

static void BM_OrliczNorm(benchmark::State& state) {
  const ScalarField f = random_smooth_scalar(PeriodicGrid(32), 2);
  OrliczSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(orlicz_norm(f, spec));
}
BENCHMARK(BM_OrliczNorm);

static void BM_PackedSample(benchmark::State& state) {
  const PeriodicGrid g(32);
  const VectorField u = taylor_green(g);
  const TensorField t = grad_tensor(u);
  std::vector<const ScalarField*> comps{&u[0], &u[1], &u[2]};
  for (int e = 0; e < 9; ++e) comps.push_back(&t.flat(e));
  PackedField packed(g, 12);
  packed.assign_blend(comps, comps, 0.0);
  const auto mode = static_cast<Interpolation>(state.range(0));
  packed.prepare(mode);
  double out[12];
  Vec3 x{0.1, 0.2, 0.3};
  for (auto _ : state) {
    packed.sample(x, mode, out);
    x = wrap(Vec3{x[0] + 0.37, x[1] + 0.11, x[2] + 0.23});
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_PackedSample)->Arg(static_cast<int>(Interpolation::kTrilinear))->Arg(static_cast<int>(Interpolation::kTricubic));

static void BM_BackwardFlow(benchmark::State& state) {
  const PeriodicGrid g(32);
  VelocityHistory h = VelocityHistory::frozen(taylor_green(g), 0.0, 0.1);
  SDEConfig c;
  c.particles = 1000;
  c.step = 1e-3;
  for (auto _ : state)
    benchmark::DoNotOptimize(backward_flow(h, {1.0, 2.0, 3.0}, 0.1, 0.0, c, static_cast<unsigned>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * 1000 * 100);
}
BENCHMARK(BM_BackwardFlow)->Arg(kTrackNone)->Arg(kTrackGradient | kTrackMagnetization | kTrackVorticity);
BENCHMARK_MAIN();
