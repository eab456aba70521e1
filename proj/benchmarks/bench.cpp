#include "stokes43/harness.hpp"

#include <benchmark/benchmark.h>

using namespace stokes43;

namespace {

void BM_mesh_build(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const Triangulation T = generate_crisscross(n, true);
    benchmark::DoNotOptimize(T.n_edges());
  }
}
BENCHMARK(BM_mesh_build)->Arg(8)->Arg(16)->Arg(32);

void BM_assemble(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Triangulation T = generate_crisscross(n, true);
  const ArgyrisDofMap dm = build_dof_map(T);
  const ManufacturedCase c = manufactured_case("trig");
  const AnalyticLoad load(T, c.f);
  for (auto _ : state) {
    const SpdSystem sys = assemble(T, dm, load);
    benchmark::DoNotOptimize(sys.rhs.norm());
  }
}
BENCHMARK(BM_assemble)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_solve_velocity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Triangulation T = generate_crisscross(n, true);
  const ArgyrisDofMap dm = build_dof_map(T);
  const ManufacturedCase c = manufactured_case("trig");
  const AnalyticLoad load(T, c.f);
  const SpdSystem sys = assemble(T, dm, load);
  for (auto _ : state) {
    const StreamField s = solve_velocity(T, dm, sys);
    benchmark::DoNotOptimize(s.coeffs.norm());
  }
}
BENCHMARK(BM_solve_velocity)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_recover_pressure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Triangulation T = generate_crisscross(n, true);
  const ArgyrisDofMap dm = build_dof_map(T);
  const ManufacturedCase c = manufactured_case("trig");
  const AnalyticLoad load(T, c.f);
  const StreamField s = solve_velocity(T, dm, assemble(T, dm, load));
  const VelocityField u = velocity_field(s);
  const auto classes = classify_vertices(T, T.min_angle());
  for (auto _ : state) {
    const PressureField p = recover_pressure(T, classes, u, load);
    benchmark::DoNotOptimize(p.mean());
  }
}
BENCHMARK(BM_recover_pressure)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
