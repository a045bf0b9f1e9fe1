#include "weisslab/numerics.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

namespace weisslab {

std::vector<double> log_space(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
    throw DomainError("log_space: need 0 < lo <= hi and count > 0");
  }
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + step * static_cast<double>(i));
  }
  out.back() = hi;
  return out;
}

QuadratureRule gauss_legendre(std::size_t order, double a, double b) {
  if (order == 0) throw DomainError("gauss_legendre: order must be positive");
  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const auto n = static_cast<double>(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess.
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const auto kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[order - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[order - 1 - i] = half * w;
  }
  return rule;
}

double hermitian_lambda_max(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_lambda_max: eigen solver failed");
  }
  return solver.eigenvalues().maxCoeff();
}

Polylog::Polylog(double order) : s_(order), integer_order_(2), gamma_(0.0) {
  if (!std::isfinite(order)) throw DomainError("Polylog: order must be finite");
  if (order == 1.0 || order == 0.0 || order == -1.0) {
    integer_order_ = static_cast<int>(order);
    return;
  }
  if (order == std::floor(order)) throw DomainError("Polylog: integer orders other than 1, 0, -1 unsupported");
  gamma_ = std::tgamma(1.0 - order);
  double factorial = 1.0;
  for (int k = 0; k < 120; ++k) {
    if (k > 0) factorial *= k;
    zeta_over_factorial_.push_back(std::riemann_zeta(order - k) / factorial);
  }
}

Complex Polylog::operator()(Complex q) const {
  if (!(std::abs(q) < 1.0)) throw DomainError("Polylog: need |q| < 1");
  switch (integer_order_) {
    case 1:
      return -std::log(1.0 - q);
    case 0:
      return q / (1.0 - q);
    case -1:
      return q / ((1.0 - q) * (1.0 - q));
    default:
      break;
  }
  if (std::abs(q) <= 0.5) {
    Complex sum(0.0, 0.0);
    Complex p = q;
    for (int n = 1; n < 200; ++n) {
      const Complex term = p * std::pow(static_cast<double>(n), -s_);
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
      p *= q;
    }
    return sum;
  }
  const Complex mu = std::log(q);
  Complex sum = gamma_ * std::pow(-mu, s_ - 1.0);
  Complex p(1.0, 0.0);
  for (std::size_t k = 0; k < zeta_over_factorial_.size(); ++k) {
    const Complex term = zeta_over_factorial_[k] * p;
    sum += term;
    if (k > 4 && std::abs(term) <= 1e-17 * std::abs(sum)) break;
    p *= mu;
  }
  return sum;
}

std::string format_shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_17g(double value) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

int apply_thread_env() {
  const char* raw = std::getenv("WEISSLAB_THREADS");
  if (raw == nullptr || *raw == '\0') return omp_get_max_threads();
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value <= 0 || value > 4096) {
    throw DomainError(std::string("WEISSLAB_THREADS must be a positive integer, got '") + raw + "'");
  }
  omp_set_num_threads(static_cast<int>(value));
  return static_cast<int>(value);
}

}  // namespace weisslab
