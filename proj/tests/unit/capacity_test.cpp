#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "weisslab/capacity.hpp"
#include "weisslab/kernels.hpp"

using namespace weisslab;

namespace {

CapacityProblem interval_problem(double beta, double length, int cells) {
  CapacityProblem p;
  p.beta = beta;
  p.target = OpenSetUnion({Interval(0.0, length)});
  p.grid = Grid1D(-length, 2.0 * length, cells);
  return p;
}

}  // namespace

TEST_CASE("riesz_kernel") {
  CHECK(riesz_kernel(0.5, 4.0) == doctest::Approx(0.5));
  CHECK(riesz_kernel(0.5, 1.0) == 1.0);
  CHECK(riesz_kernel(0.3, -2.5) == riesz_kernel(0.3, 2.5));
  CHECK(std::isinf(riesz_kernel(0.3, 0.0)));
  CHECK_THROWS_AS(riesz_kernel(1.0, 1.0), DomainError);
}

TEST_CASE("kernel_convolve examples") {
  const Grid1D grid(0.0, 1.0, 10);
  DensityVector zero{std::vector<double>(10, 0.0)};
  CHECK(kernel_convolve(zero, 0.5, grid, 0.3) == 0.0);

  DensityVector cell{std::vector<double>(10, 0.0)};
  cell.values[0] = 1.0;
  CHECK(kernel_convolve(cell, 0.5, grid, 0.0) == doctest::Approx(2.0 * std::sqrt(0.1)).epsilon(1e-12));

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DensityVector a{std::vector<double>(10)}, b{std::vector<double>(10)}, sum{std::vector<double>(10)};
  for (int i = 0; i < 10; ++i) {
    a.values[i] = u(rng);
    b.values[i] = u(rng);
    sum.values[i] = a.values[i] + b.values[i];
  }
  for (double x : {-0.4, 0.05, 0.5, 1.3}) {
    CHECK(kernel_convolve(sum, 0.3, grid, x) ==
          doctest::Approx(kernel_convolve(a, 0.3, grid, x) + kernel_convolve(b, 0.3, grid, x)).epsilon(1e-12));
  }
}

TEST_CASE("kernel_convolve against a fine Riemann sum") {
  const Grid1D grid(0.0, 1.0, 20);
  DensityVector g{std::vector<double>(20)};
  for (int i = 0; i < 20; ++i) g.values[i] = 1.0 + std::sin(3.0 * grid.midpoint(i));
  for (double x : {-0.5, 1.6, 2.3}) {
    double riemann = 0.0;
    const int fine = 200;
    const double h = grid.h() / (fine / 20);
    for (int j = 0; j < fine; ++j) {
      const double t = (j + 0.5) * h;
      riemann += g.values[static_cast<std::size_t>(j / (fine / 20))] * riesz_kernel(0.4, x - t) * h;
    }
    CHECK(kernel_convolve(g, 0.4, grid, x) == doctest::Approx(riemann).epsilon(1e-2));
  }
}

TEST_CASE("closed-form cell integral matches quadrature") {
  for (double x : {-0.3, 0.0, 0.2, 0.7, 1.4}) {
    CHECK(kernels::riesz_cell_integral(x, 0.0, 0.7, 0.3) ==
          doctest::Approx(oracle::riesz_cell_quadrature(0.3, x, 0.0, 0.7)).epsilon(1e-9));
  }
}

TEST_CASE("collocation normal kernels agree") {
  const double left = -1.0;
  const double h = 3.0 / 300;
  std::vector<double> points;
  std::vector<int> index;
  for (int i = 0; i < 300; i += 1 + i % 7) {
    index.push_back(i);
    points.push_back(left + (i + 0.5) * h);
  }
  const auto ref = kernels::reference::collocation_normal(points, 0.25, left, h, 300);
  const auto par = kernels::omp::collocation_normal(points, 0.25, left, h, 300);
  CHECK((ref - par).norm() <= 1e-12 * ref.norm());
  const auto mid = kernels::omp::collocation_normal_midpoints(index, 0.25, h, 300);
  CHECK((mid - ref).norm() <= 1e-11 * ref.norm());
  const std::vector<int> repeated{3, 3};
  CHECK_THROWS_AS(kernels::omp::collocation_normal_midpoints(repeated, 0.25, h, 300), DomainError);
}

TEST_CASE("midpoint normal kernel on a long sparse grid") {
  const int cells = 300000;
  const double left = 0.0;
  const double h = 1.0 / cells;
  const std::vector<int> index{0, 7, 8, 9, 150, 40000, 40003, 150000, 222222, 299990, 299999};
  std::vector<double> points;
  for (int i : index) points.push_back(left + (i + 0.5) * h);
  for (double beta : {0.25, 0.7}) {
    const auto ref = kernels::reference::collocation_normal(points, beta, left, h, cells);
    const auto mid = kernels::omp::collocation_normal_midpoints(index, beta, h, cells);
    for (Eigen::Index i = 0; i < ref.rows(); ++i) {
      for (Eigen::Index j = 0; j < ref.cols(); ++j) CHECK(std::abs(mid(i, j) - ref(i, j)) <= 1e-9 * std::abs(ref(i, j)));
    }
  }
}

TEST_CASE("capacity of an empty target is zero") {
  CapacityProblem p;
  p.grid = Grid1D(0.0, 1.0, 16);
  const auto r = capacity_upper(p);
  CHECK(r.value == 0.0);
  for (double v : r.density.values) CHECK(v == 0.0);
}

TEST_CASE("capacity density is feasible and nonnegative") {
  for (auto method : {CapacityMethod::active_set, CapacityMethod::projected_gradient}) {
    auto p = interval_problem(0.25, 1.0, 256);
    p.solver.method = method;
    p.solver.max_iter = 5000;
    const auto r = capacity_upper(p);
    for (double v : r.density.values) CHECK(v >= 0.0);
    for (double x : collocation_points(p)) CHECK(kernel_convolve(r.density, 0.25, p.grid, x) >= 1.0 - 1e-9);
    CHECK(r.value > 0.0);
  }
}

TEST_CASE("projected gradient and active set agree") {
  auto p = interval_problem(0.3, 1.0, 192);
  const double exact = capacity_upper(p).value;
  p.solver.method = CapacityMethod::projected_gradient;
  p.solver.max_iter = 20000;
  p.solver.tol = 1e-10;
  CHECK(capacity_upper(p).value == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("capacity is monotone in the target") {
  CapacityProblem small;
  small.beta = 0.25;
  small.grid = Grid1D(-1.0, 2.0, 384);
  small.target = OpenSetUnion({Interval(0.0, 0.4)});
  CapacityProblem big = small;
  big.target = OpenSetUnion({Interval(0.0, 0.4), Interval(0.6, 1.0)});
  CHECK(capacity_upper(small).value <= capacity_upper(big).value * (1.0 + 1e-8));
}

TEST_CASE("capacity is homogeneous of degree 1 - 2 beta") {
  for (double beta : {0.25, 0.3}) {
    const double unit = capacity_upper(interval_problem(beta, 1.0, 512)).value;
    for (double length : {0.25, 0.5}) {
      const double value = capacity_upper(interval_problem(beta, length, 512)).value;
      CHECK(value / std::pow(length, 1.0 - 2.0 * beta) == doctest::Approx(unit).epsilon(1e-9));
    }
  }
}

TEST_CASE("capacity does not grow under grid refinement") {
  const double coarse = capacity_upper(interval_problem(0.25, 1.0, 192)).value;
  const double fine = capacity_upper(interval_problem(0.25, 1.0, 384)).value;
  CHECK(fine <= coarse * (1.0 + 1e-2));
}

TEST_CASE("poisson_extension examples") {
  const Grid1D wide(-1000.0, 1000.0, 2000);
  const std::vector<double> ones(2000, 1.0);
  CHECK(poisson_extension(ones, wide, 0.3, 1.0) == doctest::Approx(1.0).epsilon(1e-3));

  const Grid1D unit(-1.0, 1.0, 2);
  const std::vector<double> two{1.0, 1.0};
  CHECK(poisson_extension(two, unit, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));

  const Grid1D corner(0.0, 1.0, 4);
  const std::vector<double> four(4, 1.0);
  CHECK(poisson_extension(four, corner, 0.0, 0.5) == doctest::Approx(std::atan(2.0) / kPi).epsilon(1e-12));

  CHECK(poisson_extension(four, corner, 0.5, 1000.0) < 1e-2);
  CHECK_THROWS_AS(poisson_extension(four, corner, 0.5, 0.0), DomainError);
}

TEST_CASE("indicator box lower bound") {
  const double delta = std::atan(2.0) / kPi;
  CHECK(indicator_box_lower_bound(Interval(0.0, 1.0), 32) == doctest::Approx(delta).epsilon(1e-4));
  CHECK(indicator_box_lower_bound(Interval(3.0, 4.0), 32) ==
        doctest::Approx(indicator_box_lower_bound(Interval(0.0, 1.0), 32)).epsilon(1e-12));
  CHECK(indicator_box_lower_bound(Interval(0.0, 5.0), 32) ==
        doctest::Approx(indicator_box_lower_bound(Interval(0.0, 1.0), 32)).epsilon(1e-12));
}

TEST_CASE("capacity config round trip") {
  std::istringstream in(
      "beta = 0.3\ntarget = 0:0.5, 0.75:1\ngrid.left = -1\ngrid.right = 2\ngrid.cells = 300\n"
      "solver.method = projected_gradient\n");
  const auto p = parse_capacity_config(in);
  CHECK(p.beta == 0.3);
  CHECK(p.target.intervals().size() == 2);
  CHECK(p.grid.cells == 300);
  CHECK(p.solver.method == CapacityMethod::projected_gradient);
  std::stringstream io;
  write_capacity_config(io, p);
  const auto back = parse_capacity_config(io);
  CHECK(back.beta == p.beta);
  CHECK(back.grid.left == p.grid.left);
  CHECK(back.target.intervals()[1].right == 1.0);
  std::istringstream bad("beta = 0.3\nunknown = 1\n");
  CHECK_THROWS_AS(parse_capacity_config(bad), DomainError);
}
