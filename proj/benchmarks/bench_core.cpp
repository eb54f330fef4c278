#include <benchmark/benchmark.h>

#include "avsec/functionals.hpp"
#include "avsec/sampling.hpp"

using namespace avsec;

static void BM_sphere_point(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sphere_point(n, rng));
}
BENCHMARK(BM_sphere_point)->DenseRange(2, 10, 2);

static void BM_grassmann_subspace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(grassmann_subspace(n, n - 1, rng));
}
BENCHMARK(BM_grassmann_subspace)->DenseRange(3, 9, 3);

static void BM_radial_cube(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Body cube = Body::cube(n, 0.5);
  RngStream rng(1, 0);
  const Direction d = sphere_point(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(cube.radial(d));
}
BENCHMARK(BM_radial_cube)->DenseRange(3, 9, 3);

static void BM_radial_linear_image(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(1, 0);
  const Body body = linear_image(random_rotation(n, rng), Body::cube(n, 0.5));
  const Direction d = sphere_point(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(body.radial(d));
}
BENCHMARK(BM_radial_linear_image)->DenseRange(3, 9, 3);

static void BM_avg_section(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Body cube = Body::cube(n, 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(avg_section(cube, 2000, RngStream(1, 0)));
}
BENCHMARK(BM_avg_section)->DenseRange(3, 6, 1);

static void BM_section_volume_ellipsoid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = i + 1.0;
  const Body ell = Body::ellipsoid(m);
  RngStream rng(2, 0);
  const Subspace e = grassmann_subspace(n, n - 1, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(section_volume(ell, e, 2000, RngStream(1, 0)));
}
BENCHMARK(BM_section_volume_ellipsoid)->DenseRange(3, 6, 1);

static void BM_body_point_cross(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Body cross = Body::cross_polytope(n, 1.0);
  RngStream rng(3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(body_point(cross, rng));
}
BENCHMARK(BM_body_point_cross)->DenseRange(3, 7, 2);

BENCHMARK_MAIN();
