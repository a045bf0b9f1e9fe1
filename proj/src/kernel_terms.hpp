#pragma once

// Scalar terms shared by the reference and OpenMP kernels so that both
// evaluate every element with the same floating-point expression.

#include <cmath>
#include <complex>

#include "weisslab/numerics.hpp"

namespace weisslab::kernels::detail {

inline Complex laplace_entry(Complex zj, Complex zk, double wj, double wk, double gamma1a,
                             double alpha) {
  const Complex s = Complex(0.0, -1.0) * (zj - std::conj(zk));
  return std::sqrt(wj * wk) * gamma1a * std::pow(s, -(1.0 + alpha));
}

inline Complex power_series_entry(Complex zj, Complex zk, double wj, double wk,
                                  const double* coef, int truncation) {
  const Complex q = zj * std::conj(zk);
  Complex term(1.0, 0.0);
  Complex sum(0.0, 0.0);
  for (int n = 0; n <= truncation; ++n) {
    sum += coef[n] * term;
    term *= q;
  }
  return std::sqrt(wj * wk) * sum;
}

inline double halfplane_resolvent_sq(const Complex* z, const double* w, std::size_t count,
                                     double a, double b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const double re = a + z[j].imag();
    const double im = b - z[j].real();
    sum += w[j] / (re * re + im * im);
  }
  return sum;
}

inline double disk_resolvent_sq(const Complex* z, const double* w, std::size_t count,
                                Complex omega) {
  const Complex oc = std::conj(omega);
  double sum = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    sum += w[j] / std::norm(1.0 - oc * z[j]);
  }
  return sum;
}

inline double riesz_antiderivative(double u, double beta) {
  const double m = std::pow(std::abs(u), beta) / beta;
  return u < 0.0 ? -m : m;
}

// (1 + x)^b - (1 - x)^b for 0 < x ≤ 1/4 without cancellation.
inline double power_gap(double x, double b) {
  const double l1 = std::log1p(x);
  const double l2 = std::log1p(-x);
  return 2.0 * std::exp(0.5 * b * (l1 + l2)) * std::sinh(0.5 * b * (l1 - l2));
}

// κ(v) = F(v + ½) - F(v - ½): the unit cell integral of |v - t|^{β-1}
// around a point at offset v. Even in v.
inline double cell_weight(double v, double beta) {
  const double a = std::abs(v);
  if (a < 2.0) return riesz_antiderivative(a + 0.5, beta) - riesz_antiderivative(a - 0.5, beta);
  return std::pow(a, beta) * power_gap(0.5 / a, beta) / beta;
}

// κ'(v) = |v + ½|^{β-1} - |v - ½|^{β-1}, for |v| > ½.
inline double cell_weight_slope(double v, double beta) {
  const double a = std::abs(v);
  const double m = a < 2.0 ? std::pow(a + 0.5, beta - 1.0) - std::pow(a - 0.5, beta - 1.0)
                           : std::pow(a, beta - 1.0) * power_gap(0.5 / a, beta - 1.0);
  return v < 0.0 ? -m : m;
}

inline double green_value(Complex z, Complex a) {
  return -std::log(std::abs(a - z)) + std::log(std::abs(1.0 - std::conj(a) * z));
}

// Green term for one node: inside its own cell the logarithmic singularity is
// replaced by its average over the equal-area disk of radius `radius`.
inline double green_node(Complex z, Complex a, double radius) {
  if (std::abs(z - a) < radius) {
    return -std::log(radius) + 0.5 + std::log(std::abs(1.0 - std::norm(a)));
  }
  return green_value(z, a);
}

}  // namespace weisslab::kernels::detail
