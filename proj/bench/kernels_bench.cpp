#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "weisslab/analytic.hpp"
#include "weisslab/kernels.hpp"
#include "weisslab/measure.hpp"

using namespace weisslab;

namespace {

struct Atoms {
  std::vector<Complex> z;
  std::vector<double> w;
};

Atoms halfplane_atoms(int n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> x(0.0, 1.0), y(0.01, 0.5), w(0.1, 1.0);
  Atoms a;
  for (int k = 0; k < n; ++k) {
    const double re = x(rng);
    const double im = y(rng);
    a.z.emplace_back(re, im);
    a.w.push_back(w(rng));
  }
  return a;
}

Atoms disk_atoms(int n) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> r(0.0, 0.95), t(0.0, 2.0 * kPi), w(0.1, 1.0);
  Atoms a;
  for (int k = 0; k < n; ++k) {
    const double rr = r(rng);
    a.z.push_back(std::polar(rr, t(rng)));
    a.w.push_back(w(rng));
  }
  return a;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = lo + (hi - lo) * (k + 0.5) / n;
  return v;
}

template <bool Parallel>
void box_sup(benchmark::State& state) {
  const auto mu = stacked_measure({cantor_measure(0.25, 8, Ambient::half_plane), default_stack_heights(0.25, 8), 8});
  const auto layout = dyadic_layout(mu, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::omp::box_sup(mu, 0.5, layout)
                                      : kernels::reference::box_sup(mu, 0.5, layout));
  }
}

template <bool Parallel>
void laplace_gram(benchmark::State& state) {
  const auto a = halfplane_atoms(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::omp::laplace_gram(a.z, a.w, -0.5)
                                      : kernels::reference::laplace_gram(a.z, a.w, -0.5));
  }
}

template <bool Parallel>
void power_series_gram(benchmark::State& state) {
  const auto a = disk_atoms(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::omp::power_series_gram(a.z, a.w, -0.5, 512)
                                      : kernels::reference::power_series_gram(a.z, a.w, -0.5, 512));
  }
}

template <bool Parallel>
void halfplane_resolvent_sup(benchmark::State& state) {
  const auto a = halfplane_atoms(static_cast<int>(state.range(0)));
  const auto re = linspace(1e-3, 2.0, 128);
  const auto im = linspace(-1.0, 2.0, 128);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::omp::halfplane_resolvent_sup(a.z, a.w, -0.5, re, im)
                                      : kernels::reference::halfplane_resolvent_sup(a.z, a.w, -0.5, re, im));
  }
}

template <bool Parallel>
void disk_resolvent_sup(benchmark::State& state) {
  const auto a = disk_atoms(static_cast<int>(state.range(0)));
  const auto radii = linspace(0.0, 0.99, 64);
  const auto angles = linspace(0.0, 2.0 * kPi, 256);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::omp::disk_resolvent_sup(a.z, a.w, -0.5, radii, angles)
                                      : kernels::reference::disk_resolvent_sup(a.z, a.w, -0.5, radii, angles));
  }
}

template <bool Parallel>
void collocation_normal(benchmark::State& state) {
  const int cells = static_cast<int>(state.range(0));
  const double left = -1.0, h = 3.0 / cells;
  std::vector<double> points;
  for (int i = cells / 3; i < 2 * cells / 3; ++i) points.push_back(left + (i + 0.5) * h);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::omp::collocation_normal(points, 0.25, left, h, cells)
                                      : kernels::reference::collocation_normal(points, 0.25, left, h, cells));
  }
}

void collocation_normal_midpoints(benchmark::State& state) {
  const int cells = static_cast<int>(state.range(0));
  std::vector<int> index;
  for (int i = cells / 3; i < 2 * cells / 3; ++i) index.push_back(i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::collocation_normal_midpoints(index, 0.25, 3.0 / cells, cells));
  }
}

template <bool Parallel>
void green_sup(benchmark::State& state) {
  const auto grid = make_disk_grid(8, 4, static_cast<int>(state.range(0)));
  kernels::WeightedNodes nodes;
  nodes.z = grid.z;
  nodes.cell_radius = grid.cell_radius;
  for (std::size_t i = 0; i < grid.z.size(); ++i) nodes.mass.push_back(grid.weight[i] * std::norm(grid.z[i]));
  const auto a_grid = make_a_grid(5, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::omp::green_sup(nodes, a_grid)
                                      : kernels::reference::green_sup(nodes, a_grid));
  }
}

}  // namespace

BENCHMARK(box_sup<false>)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(box_sup<true>)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(laplace_gram<false>)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(laplace_gram<true>)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(power_series_gram<false>)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(power_series_gram<true>)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(halfplane_resolvent_sup<false>)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(halfplane_resolvent_sup<true>)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(disk_resolvent_sup<false>)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(disk_resolvent_sup<true>)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(collocation_normal<false>)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(collocation_normal<true>)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(collocation_normal_midpoints)->Arg(512)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(green_sup<false>)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(green_sup<true>)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
