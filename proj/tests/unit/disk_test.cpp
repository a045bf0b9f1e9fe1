#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "weisslab/disk.hpp"
#include "weisslab/kernels.hpp"

using namespace weisslab;

namespace {

DiskSystem single(Complex z, double w = 1.0) { return DiskSystem(AtomicMeasure(Ambient::disk, {{z, w}})); }

TaylorCoefficients monomial(int n) {
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex(0.0, 0.0));
  c[static_cast<std::size_t>(n)] = 1.0;
  return TaylorCoefficients(std::move(c));
}

}  // namespace

TEST_CASE("disk resolvent integral") {
  std::mt19937_64 rng(41);
  const DiskSystem sys(oracle::random_disk_measure(rng, 10));
  CHECK(disk_resolvent_integral(sys, 0.0) == doctest::Approx(sys.measure().total_mass()));
  const auto origin = single(0.0, 0.7);
  for (const Complex w : {Complex(0.0, 0.0), Complex(0.5, 0.3), Complex(-0.9, 0.0)}) {
    CHECK(disk_resolvent_integral(origin, w) == doctest::Approx(0.7));
  }
  const double r = 0.6;
  CHECK(disk_resolvent_integral(single(r, 2.0), r) == doctest::Approx(2.0 / std::pow(1.0 - r * r, 2)));
  CHECK_THROWS_AS(disk_resolvent_integral(origin, 1.0), DomainError);
}

TEST_CASE("disk resolvent sup") {
  const auto grid = make_omega_grid(8, 64);
  CHECK(disk_resolvent_sup(DiskSystem(AtomicMeasure()), -0.5, grid).value == 0.0);
  std::mt19937_64 rng(42);
  const auto mu = oracle::random_disk_measure(rng, 15);
  const double base = disk_resolvent_sup(DiskSystem(mu), -0.5, grid).value;
  for (int k : {1, 5, 17}) {
    const double rotated = disk_resolvent_sup(DiskSystem(mu.rotated(2.0 * kPi * k / 64)), -0.5, grid).value;
    CHECK(rotated == doctest::Approx(base).epsilon(1e-12));
  }
  const auto ref = kernels::reference::disk_resolvent_sup(DiskSystem(mu).points(), DiskSystem(mu).weights(), -0.5,
                                                          grid.radii, grid.angles);
  const DiskSystem sys(mu);
  const auto par = kernels::omp::disk_resolvent_sup(sys.points(), sys.weights(), -0.5, grid.radii, grid.angles);
  CHECK(ref.value == par.value);
  CHECK(ref.argmax == par.argmax);
}

TEST_CASE("resolvent sup squared tracks the one-box constant on stacked measures") {
  std::vector<double> ratios;
  for (int level = 3; level <= 6; ++level) {
    const auto heights = default_stack_heights(0.25, level, 0.125, 2.0);
    const auto mu = stacked_measure({cantor_measure(0.25, level, Ambient::disk, 2.0), heights, level});
    const int depth = static_cast<int>(std::ceil(std::log2(1.0 / heights.back()))) + 2;
    const double res = disk_resolvent_sup(DiskSystem(mu), -0.5, make_omega_grid(depth, 512)).value;
    ratios.push_back(res * res / one_box_constant(mu, 0.5, depth));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  CHECK(*hi / *lo < 2.0);
}

TEST_CASE("discrete admissibility constant") {
  for (int n : {1, 16, 256}) CHECK(discrete_admissibility_constant(single(0.0), -0.5, n).value == doctest::Approx(1.0));
  const double m = discrete_admissibility_constant(single(1.0 / std::sqrt(2.0)), 0.0, 2000).value;
  CHECK(m * m == doctest::Approx(2.0).epsilon(1e-9));

  std::mt19937_64 rng(43);
  const DiskSystem sys(oracle::random_disk_measure(rng, 8));
  const auto result = discrete_admissibility_constant(sys, -0.5, 2048);
  CHECK(result.value == doctest::Approx(oracle::direct_discrete_admissibility(sys, -0.5, 2048, 200, 0)).epsilon(1e-2));
  CHECK(result.doubled >= result.value);
  double previous = 0.0;
  for (int n : {4, 8, 16, 32, 64, 128}) {
    const double value = discrete_admissibility_constant(sys, 0.3, n).value;
    CHECK(value >= previous * (1.0 - 1e-14));
    previous = value;
  }
}

TEST_CASE("power-series Gram kernels and the limit Gram") {
  std::mt19937_64 rng(44);
  const DiskSystem sys(oracle::random_disk_measure(rng, 12));
  const auto ref = kernels::reference::power_series_gram(sys.points(), sys.weights(), -0.5, 300);
  const auto par = discrete_gram(sys, -0.5, 300);
  CHECK((ref - par).norm() <= 1e-13 * ref.norm());
  for (double alpha : {-0.5, 0.0, 0.4}) {
    const auto limit = limit_gram(sys, alpha);
    const auto truncated = discrete_gram(sys, alpha, 4000);
    CHECK((limit - truncated).norm() <= 1e-9 * limit.norm());
  }
}

TEST_CASE("disk embedding ratio") {
  std::mt19937_64 rng(45);
  const DiskSystem sys(oracle::random_disk_measure(rng, 8));
  CHECK(disk_embedding_ratio(sys, TaylorCoefficients({Complex(1.0, 0.0)}), -0.5) ==
        doctest::Approx(std::sqrt(sys.measure().total_mass())));
  const double r = 0.8;
  const double w = 0.3;
  for (int n : {0, 3, 10}) {
    CHECK(disk_embedding_ratio(single(r, w), monomial(n), -0.5) ==
          doctest::Approx(std::sqrt(w) * std::pow(r, n) * std::pow(1.0 + n, -0.25)));
  }
  const double bound = discrete_admissibility_constant(sys, -0.5, 64).value;
  std::uniform_int_distribution<int> degree(0, 64);
  for (int k = 0; k < 100; ++k) {
    CHECK(disk_embedding_ratio(sys, oracle::random_polynomial(rng, degree(rng)), -0.5) <= bound * 1.01);
  }
  CHECK_THROWS_AS(disk_embedding_ratio(sys, TaylorCoefficients(), -0.5), DomainError);
}

TEST_CASE("kernel embedding ratio equals the embedding ratio of the kernel combination") {
  std::mt19937_64 rng(46);
  const DiskSystem sys(oracle::random_disk_measure(rng, 6));
  std::normal_distribution<double> normal;
  Eigen::VectorXcd d(6);
  for (auto& v : d) {
    const double re = normal(rng);
    const double im = normal(rng);
    v = Complex(re, im);
  }
  const auto gram = discrete_gram(sys, -0.5, 200);
  const auto f = kernel_combination(sys, -0.5, 200, d);
  CHECK(kernel_embedding_ratio(gram, d) == doctest::Approx(disk_embedding_ratio(sys, f, -0.5)).epsilon(1e-10));
}

TEST_CASE("norm of C f(A) is the L2(mu) norm of f") {
  std::mt19937_64 rng(47);
  const DiskSystem sys(oracle::random_disk_measure(rng, 7));
  const auto f = oracle::random_polynomial(rng, 20);
  // The functional x -> C f(A) x = Σ_n f_n Σ_j w_j z_j^n x_j in the basis of unit states.
  Eigen::MatrixXcd row(1, 7);
  for (std::size_t j = 0; j < 7; ++j) {
    Complex s(0.0, 0.0);
    Complex p(1.0, 0.0);
    for (int n = 0; n <= f.truncation(); ++n) {
      s += f[static_cast<std::size_t>(n)] * p;
      p *= sys.points()[j];
    }
    row(0, static_cast<Eigen::Index>(j)) = std::sqrt(sys.weights()[j]) * s;
  }
  const double norm = std::sqrt(oracle::power_lambda_max(row.adjoint() * row));
  double direct = 0.0;
  for (std::size_t j = 0; j < 7; ++j) direct += sys.weights()[j] * std::norm(f.evaluate(sys.points()[j]));
  CHECK(norm == doctest::Approx(std::sqrt(direct)).epsilon(1e-10));
}

TEST_CASE("polylog") {
  for (double s : {-0.5, 0.0, 0.5, 1.0, -1.0, 0.25}) {
    const Polylog li(s);
    for (const Complex q : {Complex(0.1, 0.0), Complex(0.6, 0.3), Complex(-0.9, 0.1), Complex(0.0, 0.97),
                            Complex(0.999, 0.0)}) {
      const Complex expected = oracle::polylog_series(s, q);
      CHECK(std::abs(li(q) - expected) <= 1e-9 * std::abs(expected));
    }
  }
}
