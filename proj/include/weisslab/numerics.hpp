#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace weisslab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Thrown when an argument lies outside an operation's domain
/// (bad exponent, |ω| ≥ 1, ambient mismatch, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Logarithmically spaced points from `lo` to `hi` inclusive.
std::vector<double> log_space(double lo, double hi, std::size_t count);

/// Gauss-Legendre nodes and weights on [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(std::size_t order, double a, double b);

/// Largest eigenvalue of a Hermitian matrix (only the lower triangle is read).
double hermitian_lambda_max(const Eigen::MatrixXcd& matrix);

/// Li_s(q) = Σ_{n≥1} qⁿ/n^s for real s and |q| < 1. Direct series for
/// |q| ≤ 1/2, otherwise the expansion about q = 1,
/// Li_s(e^μ) = Γ(1-s)(-μ)^{s-1} + Σ_k ζ(s-k) μ^k/k!, valid for |μ| < 2π;
/// integer s ≤ 1 use closed forms.
class Polylog {
public:
  explicit Polylog(double order);
  double order() const noexcept { return s_; }
  Complex operator()(Complex q) const;

private:
  double s_;
  int integer_order_;  // s when s ∈ {1, 0, -1}, else 2
  double gamma_;       // Γ(1-s)
  std::vector<double> zeta_over_factorial_;
};

/// Shortest decimal string that parses back to the same double.
std::string format_shortest(double value);

/// Fixed 17-significant-digit rendering used by the CSV emitter.
std::string format_17g(double value);

/// Applies WEISSLAB_THREADS (positive integer) to the OpenMP runtime.
/// Returns the thread cap in effect. Throws DomainError on a malformed value.
int apply_thread_env();

}  // namespace weisslab
