#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "weisslab/capacity.hpp"
#include "weisslab/halfplane.hpp"
#include "weisslab/kernels.hpp"

using namespace weisslab;

namespace {

HalfPlaneSystem single(Complex z, double w = 1.0) {
  return HalfPlaneSystem(AtomicMeasure(Ambient::half_plane, {{z, w}}));
}

StateVector random_state(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  StateVector x(n);
  for (auto& v : x) {
    const double re = normal(rng);
    const double im = normal(rng);
    v = Complex(re, im);
  }
  return x;
}

}  // namespace

TEST_CASE("semigroup") {
  const auto sys = single(Complex(0.0, 1.0));
  const StateVector x{Complex(1.0, 0.0)};
  CHECK(semigroup_apply(sys, 0.0, x)[0] == x[0]);
  CHECK(std::abs(semigroup_apply(sys, 1.0, x)[0] - std::exp(-1.0)) < 1e-15);

  std::mt19937_64 rng(31);
  const auto random = oracle::random_halfplane_system(rng, 10);
  const auto y = random_state(rng, 10);
  const auto composed = semigroup_apply(random, 0.7, semigroup_apply(random, 1.3, y));
  const auto direct = semigroup_apply(random, 2.0, y);
  for (std::size_t j = 0; j < y.size(); ++j) CHECK(std::abs(composed[j] - direct[j]) <= 1e-12 * std::abs(direct[j]));
  for (double t : {0.0, 0.1, 1.0, 10.0}) CHECK(state_norm(random, semigroup_apply(random, t, y)) <= state_norm(random, y));
}

TEST_CASE("observe") {
  const HalfPlaneSystem sys(AtomicMeasure(Ambient::half_plane, {{Complex(0.0, 1.0), 1.0}, {Complex(1.0, 1.0), 2.0}}));
  CHECK(observe(sys, StateVector{1.0, 1.0}) == Complex(3.0, 0.0));
  CHECK(std::abs(observe(sys, StateVector{1.0, -0.5})) == 0.0);
  const StateVector a{Complex(1.0, 2.0), Complex(-1.0, 0.5)};
  const StateVector b{Complex(0.3, 0.0), Complex(0.0, 4.0)};
  const StateVector s{a[0] + 2.0 * b[0], a[1] + 2.0 * b[1]};
  CHECK(std::abs(observe(sys, s) - (observe(sys, a) + 2.0 * observe(sys, b))) < 1e-14);
}

TEST_CASE("resolvent functional norm") {
  CHECK(resolvent_functional_norm(single(Complex(0.0, 1.0)), Complex(1.0, 0.0)) == doctest::Approx(0.5));
  const auto sys = single(Complex(0.3, 0.5));
  CHECK(resolvent_functional_norm(sys, Complex(1e6, 0.0)) < 1e-5);
  const HalfPlaneSystem two(AtomicMeasure(Ambient::half_plane, {{Complex(0.3, 0.5), 1.0}, {Complex(-1.0, 0.2), 3.0}}));
  const Complex lambda(0.4, 0.9);
  const double a = resolvent_functional_norm(sys, lambda);
  const double b = resolvent_functional_norm(single(Complex(-1.0, 0.2), 3.0), lambda);
  CHECK(resolvent_functional_norm(two, lambda) == doctest::Approx(std::sqrt(a * a + b * b)));
  CHECK_THROWS_AS(resolvent_functional_norm(sys, Complex(0.0, 1.0)), DomainError);
}

TEST_CASE("resolvent sup") {
  const auto grid = make_lambda_grid();
  CHECK(resolvent_sup(HalfPlaneSystem(AtomicMeasure()), -0.5, grid).value == 0.0);
  const double y0 = 0.5;
  const double alpha = -0.5;
  const auto atom = single(Complex(0.0, y0));
  const auto best = resolvent_sup(atom, alpha, grid);
  const double peak = y0 * (1.0 - alpha) / (1.0 + alpha);
  const double exact = std::pow(peak, 0.5 * (1.0 - alpha)) / (peak + y0);
  CHECK(best.value == doctest::Approx(exact).epsilon(1e-2));
  CHECK(best.argmax.real() == doctest::Approx(peak).epsilon(0.1));

  std::mt19937_64 rng(32);
  const auto sys = oracle::random_halfplane_system(rng, 12);
  const auto doubled = HalfPlaneSystem(sys.measure().scaled(2.0));
  CHECK(resolvent_sup(doubled, alpha, grid).value ==
        doctest::Approx(std::sqrt(2.0) * resolvent_sup(sys, alpha, grid).value).epsilon(1e-12));
}

TEST_CASE("resolvent sup kernels agree") {
  std::mt19937_64 rng(33);
  const auto sys = oracle::random_halfplane_system(rng, 20);
  const auto grid = make_lambda_grid(1e-3, 1e3, 61, 41);
  const auto ref = kernels::reference::halfplane_resolvent_sup(sys.points(), sys.weights(), -0.3, grid.re, grid.im);
  const auto par = kernels::omp::halfplane_resolvent_sup(sys.points(), sys.weights(), -0.3, grid.re, grid.im);
  CHECK(ref.value == par.value);
  CHECK(ref.argmax == par.argmax);
}

TEST_CASE("admissibility constant closed forms") {
  CHECK(admissibility_constant(single(Complex(0.0, 0.5)), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(admissibility_constant(single(Complex(0.0, 0.5)), -0.5) == doctest::Approx(1.33134).epsilon(1e-5));
  const double a = 0.3;
  CHECK(admissibility_constant(single(Complex(0.0, 0.2)), a) ==
        doctest::Approx(std::sqrt(std::tgamma(1.0 + a) / std::pow(0.4, 1.0 + a))).epsilon(1e-12));
  const HalfPlaneSystem far(
      AtomicMeasure(Ambient::half_plane, {{Complex(0.0, 0.5), 1.0}, {Complex(1000.0, 0.25), 1.0}}));
  const double m1 = admissibility_constant(single(Complex(0.0, 0.5)), -0.5);
  const double m2 = admissibility_constant(single(Complex(1000.0, 0.25)), -0.5);
  const double m = admissibility_constant(far, -0.5);
  CHECK(m * m == doctest::Approx(std::max(m1 * m1, m2 * m2)).epsilon(1e-2));
  CHECK_THROWS_AS(admissibility_constant(far, 1.0), DomainError);
}

TEST_CASE("Gram kernels agree") {
  std::mt19937_64 rng(34);
  const auto sys = oracle::random_halfplane_system(rng, 16);
  const auto ref = kernels::reference::laplace_gram(sys.points(), sys.weights(), -0.4);
  const auto par = kernels::omp::laplace_gram(sys.points(), sys.weights(), -0.4);
  CHECK((ref - par).norm() <= 1e-14 * ref.norm());
  CHECK((par - par.adjoint()).norm() <= 1e-14 * par.norm());
}

TEST_CASE("admissibility bound is attained and respected by time quadrature") {
  std::mt19937_64 rng(35);
  const double alpha = -0.5;
  const auto sys = oracle::random_halfplane_system(rng, 6);
  const double m = admissibility_constant(sys, alpha);
  CHECK(m == doctest::Approx(oracle::quadrature_admissibility_constant(sys, alpha)).epsilon(5e-3));
  double best = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto x = random_state(rng, sys.size());
    const double n = state_norm(sys, x);
    const double ratio = oracle::quadrature_output_energy(sys, alpha, x, 200) / (n * n);
    CHECK(ratio <= m * m * 1.01);
    best = std::max(best, ratio);
  }
  // The Gram matrix is the conjugate of the output-energy form, so the
  // maximising state is conj(u)/√w for the top eigenvector u.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(admissibility_gram(sys, alpha));
  const Eigen::VectorXcd u = eig.eigenvectors().col(eig.eigenvalues().size() - 1);
  StateVector top(sys.size());
  for (std::size_t j = 0; j < top.size(); ++j) top[j] = std::conj(u[static_cast<Eigen::Index>(j)]) / std::sqrt(sys.weights()[j]);
  const double n = state_norm(sys, top);
  best = std::max(best, oracle::quadrature_output_energy(sys, alpha, top, 200) / (n * n));
  CHECK(best >= 0.8 * m * m);
  CHECK(best <= m * m * 1.01);
}

TEST_CASE("Laplace embedding") {
  const double y0 = 0.5;
  const double alpha = -0.5;
  const auto atom = single(Complex(0.0, y0));
  WeightedSignal v;
  v.t = default_time_grid();
  for (double t : v.t) v.w.push_back(std::exp(-t));
  const double inner = std::tgamma(1.0 + 0.5 * alpha) / std::pow(1.0 + y0, 1.0 + 0.5 * alpha);
  CHECK(laplace_embedding_ratio(atom, alpha, v) == doctest::Approx(inner / std::sqrt(0.5)).epsilon(1e-3));
  CHECK(laplace_embedding_ratio(HalfPlaneSystem(AtomicMeasure()), alpha, v) == 0.0);

  std::mt19937_64 rng(36);
  const auto sys = oracle::random_halfplane_system(rng, 8);
  const double bound = admissibility_constant(sys, alpha);
  std::uniform_real_distribution<double> rate(0.05, 5.0);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 100; ++k) {
    WeightedSignal s;
    s.t = default_time_grid(1024);
    const double a = rate(rng), b = rate(rng), c = normal(rng);
    for (double t : s.t) s.w.push_back(std::exp(-a * t) + c * t * std::exp(-b * t));
    CHECK(laplace_embedding_ratio(sys, alpha, s) <= bound * 1.01);
  }
}

TEST_CASE("analytic witness") {
  const double alpha = -0.5;
  const Grid1D grid(-1.0, 2.0, 300);
  DensityVector zero{std::vector<double>(300, 0.0)};
  const auto blank = analytic_witness(zero, grid, alpha);
  CHECK(std::abs(blank.evaluate(Complex(0.5, 0.1))) == 0.0);

  DensityVector g{std::vector<double>(300)};
  for (int i = 0; i < grid.cells; ++i) {
    const double x = grid.midpoint(i);
    g.values[i] = x > 0.0 && x < 1.0 ? 1.0 + 0.5 * std::cos(5.0 * x) : 0.0;
  }
  const auto witness = analytic_witness(g, grid, alpha);
  const Grid1D wide(-60.0, 61.0, 12100);
  std::vector<double> f(12100);
  for (int i = 0; i < wide.cells; ++i) f[i] = kernel_convolve(g, -0.5 * alpha, grid, wide.midpoint(i));
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> ux(-0.5, 1.5);
  std::uniform_real_distribution<double> uy(0.02, 0.8);
  for (int k = 0; k < 20; ++k) {
    const double x = ux(rng);
    const double y = uy(rng);
    CHECK(witness.evaluate(Complex(x, y)).real() == doctest::Approx(poisson_extension(f, wide, x, y)).epsilon(2e-2));
  }
  // |G(iy)| ~ y^{β-1} far above the support.
  const double beta = -0.5 * alpha;
  const double far = std::abs(witness.evaluate(Complex(0.5, 1e3)));
  const double farther = std::abs(witness.evaluate(Complex(0.5, 1e4)));
  CHECK(far < std::abs(witness.evaluate(Complex(0.5, 0.02))));
  CHECK(farther / far == doctest::Approx(std::pow(10.0, beta - 1.0)).epsilon(1e-2));
}

TEST_CASE("hierarchical witness evaluation matches the exact sum") {
  const double alpha = -0.5;
  const Grid1D grid(-1.0, 2.0, 6000);
  DensityVector g{std::vector<double>(6000)};
  for (int i = 0; i < grid.cells; ++i) g.values[i] = std::exp(-std::pow(grid.midpoint(i) - 0.4, 2));
  const auto witness = analytic_witness(g, grid, alpha);
  for (const Complex z : {Complex(0.3, 1e-4), Complex(-0.9, 0.01), Complex(1.7, 0.3), Complex(5.0, 2.0)}) {
    const Complex exact = witness.evaluate_exact(z);
    CHECK(std::abs(witness.evaluate_hierarchical(z) - exact) <= 1e-5 * std::abs(exact));
  }
}

TEST_CASE("witness embedding ratio is scale free") {
  const Grid1D grid(-1.0, 2.0, 300);
  DensityVector g{std::vector<double>(300, 0.0)};
  DensityVector g2 = g;
  for (int i = 100; i < 200; ++i) {
    g.values[i] = 1.0;
    g2.values[i] = 3.0;
  }
  std::mt19937_64 rng(38);
  const auto sys = oracle::random_halfplane_system(rng, 10);
  const double a = witness_embedding_ratio(sys, analytic_witness(g, grid, -0.5));
  const double b = witness_embedding_ratio(sys, analytic_witness(g2, grid, -0.5));
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
  CHECK(a > 0.0);
}
