#include "weisslab/shift.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace weisslab {
namespace {

Eigen::VectorXcd random_start(Eigen::Index size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const double re = u(rng);
    const double im = u(rng);
    v[i] = Complex(re, im);
  }
  return v.normalized();
}

// Power iteration on MᴴM given the two products. Returns the top singular value.
template <class Apply, class Adjoint>
double power_norm(Eigen::Index cols, int iterations, std::uint64_t seed, Apply apply, Adjoint adjoint) {
  if (iterations < 1) throw DomainError("operator_norm: iterations must be >= 1");
  if (cols == 0) return 0.0;
  Eigen::VectorXcd v = random_start(cols, seed);
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXcd mv = apply(v);
    const double next = mv.squaredNorm();
    if (next == 0.0) return 0.0;
    Eigen::VectorXcd w = adjoint(mv);
    const double wn = w.norm();
    if (wn == 0.0) return std::sqrt(next);
    v = w / wn;
    const bool settled = it > 0 && std::abs(next - lambda) <= 1e-10 * next;
    lambda = next;
    if (settled) break;
  }
  return std::sqrt(std::max(lambda, apply(v).squaredNorm()));
}

std::vector<double> row_scale(double alpha, int truncation) {
  std::vector<double> s(static_cast<std::size_t>(truncation) + 1);
  for (std::size_t n = 0; n < s.size(); ++n) s[n] = std::pow(1.0 + static_cast<double>(n), 0.5 * alpha);
  return s;
}

}  // namespace

void validate(const HankelSpec& spec) {
  if (!(spec.alpha >= 0.0 && spec.alpha < 1.0)) throw DomainError("HankelSpec: alpha must lie in [0, 1)");
  if (spec.truncation < 0) throw DomainError("HankelSpec: truncation must be >= 0");
}

Eigen::MatrixXcd hankel_matrix(const HankelSpec& spec) {
  validate(spec);
  const Eigen::Index n = spec.truncation + 1;
  const auto scale = row_scale(spec.alpha, spec.truncation);
  Eigen::MatrixXcd h(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) h(i, j) = scale[i] * spec.c[static_cast<std::size_t>(i + j)];
  }
  return h;
}

double operator_norm(const Eigen::MatrixXcd& matrix, int iterations, std::uint64_t seed) {
  if (matrix.size() == 0) return 0.0;
  return power_norm(
      matrix.cols(), iterations, seed, [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd { return matrix * x; },
      [&](const Eigen::VectorXcd& y) -> Eigen::VectorXcd { return matrix.adjoint() * y; });
}

Eigen::VectorXcd hankel_apply(const HankelSpec& spec, const Eigen::VectorXcd& x) {
  validate(spec);
  const int n_max = spec.truncation;
  if (x.size() != n_max + 1) throw DomainError("hankel_apply: vector size mismatch");
  const auto scale = row_scale(spec.alpha, n_max);
  const auto& support = spec.c.support();
  Eigen::VectorXcd out(n_max + 1);
#pragma omp parallel for schedule(static)
  for (int n = 0; n <= n_max; ++n) {
    Complex s(0.0, 0.0);
    for (auto it = std::lower_bound(support.begin(), support.end(), n); it != support.end(); ++it) {
      const int m = *it - n;
      if (m > n_max) break;
      s += spec.c[static_cast<std::size_t>(*it)] * x[m];
    }
    out[n] = scale[n] * s;
  }
  return out;
}

Eigen::VectorXcd hankel_apply_adjoint(const HankelSpec& spec, const Eigen::VectorXcd& y) {
  validate(spec);
  const int n_max = spec.truncation;
  if (y.size() != n_max + 1) throw DomainError("hankel_apply_adjoint: vector size mismatch");
  const auto scale = row_scale(spec.alpha, n_max);
  const auto& support = spec.c.support();
  Eigen::VectorXcd out(n_max + 1);
#pragma omp parallel for schedule(static)
  for (int m = 0; m <= n_max; ++m) {
    Complex s(0.0, 0.0);
    for (auto it = std::lower_bound(support.begin(), support.end(), m); it != support.end(); ++it) {
      const int n = *it - m;
      if (n > n_max) break;
      s += std::conj(spec.c[static_cast<std::size_t>(*it)]) * scale[n] * y[n];
    }
    out[m] = s;
  }
  return out;
}

double hankel_norm(const HankelSpec& spec, int iterations, std::uint64_t seed) {
  validate(spec);
  if (spec.c.is_zero()) return 0.0;
  return power_norm(
      spec.truncation + 1, iterations, seed, [&](const Eigen::VectorXcd& x) { return hankel_apply(spec, x); },
      [&](const Eigen::VectorXcd& y) { return hankel_apply_adjoint(spec, y); });
}

double admissibility_sum(const TaylorCoefficients& c, double alpha, const TaylorCoefficients& f, int truncation) {
  if (truncation < 0) throw DomainError("admissibility_sum: truncation must be >= 0");
  std::vector<double> terms(static_cast<std::size_t>(truncation) + 1, 0.0);
#pragma omp parallel for schedule(static)
  for (int n = 0; n <= truncation; ++n) {
    Complex s(0.0, 0.0);
    for (int m : f.support()) s += f[static_cast<std::size_t>(m)] * std::conj(c[static_cast<std::size_t>(n + m)]);
    terms[n] = std::pow(1.0 + n, alpha) * std::norm(s);
  }
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

ResolventNorm shift_resolvent_norm(const TaylorCoefficients& c, Complex omega, int truncation) {
  if (!(std::abs(omega) < 1.0)) throw DomainError("shift_resolvent_norm: need |ω| < 1");
  if (truncation < 0) throw DomainError("shift_resolvent_norm: truncation must be >= 0");
  const auto coeffs = c.coefficients();
  const int last = static_cast<int>(coeffs.size()) - 1;
  ResolventNorm out;
  double kept = 0.0;
  double tail = 0.0;
  Complex a(0.0, 0.0);
  for (int k = last; k >= 0; --k) {
    a = coeffs[k] + omega * a;
    if (k <= truncation) {
      kept += std::norm(a);
    } else {
      tail += std::norm(coeffs[k]);
    }
  }
  out.value = std::sqrt(kept);
  out.tail_bound = std::sqrt(tail) / (1.0 - std::abs(omega));
  return out;
}

kernels::GridMax shift_resolvent_sup(const TaylorCoefficients& c, double alpha, const OmegaGrid& grid,
                                     int truncation) {
  if (!(alpha > -1.0 && alpha < 1.0)) throw DomainError("shift_resolvent_sup: alpha must lie in (-1, 1)");
  const std::size_t na = grid.angles.size();
  const std::size_t total = grid.radii.size() * na;
  std::vector<double> values(total, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t idx = 0; idx < total; ++idx) {
    const double r = grid.radii[idx / na];
    const Complex omega = std::polar(r, grid.angles[idx % na]);
    values[idx] = std::pow(1.0 - r * r, 0.5 * (1.0 - alpha)) * shift_resolvent_norm(c, omega, truncation).value;
  }
  kernels::GridMax best;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (values[idx] > best.value) {
      best.value = values[idx];
      best.argmax = std::polar(grid.radii[idx / na], grid.angles[idx % na]);
    }
  }
  return best;
}

DifferenceQuotientForms difference_quotient_forms(const TaylorCoefficients& c, Complex omega, int angles,
                                                  const DiskGrid& grid) {
  if (!(std::abs(omega) < 1.0)) throw DomainError("difference_quotient_forms: need |ω| < 1");
  if (angles < 1) throw DomainError("difference_quotient_forms: angles must be >= 1");
  DifferenceQuotientForms out;
  const Complex f_omega = omega * c.evaluate(omega);
  for (int j = 0; j < angles; ++j) {
    const Complex e = std::polar(1.0, 2.0 * kPi * j / angles);
    out.boundary += std::norm(e * c.evaluate(e) - f_omega) / std::norm(e - omega);
  }
  out.boundary /= angles;
  const auto d = fractional_derivative(c, 1.0).evaluate(grid.z);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Complex z = grid.z[i];
    out.area += grid.weight[i] * std::norm(d[i]) * (1.0 - std::norm(z)) / std::norm(1.0 - std::conj(omega) * z);
  }
  out.area /= kPi;
  return out;
}

std::vector<ShiftRow> shift_experiment(double alpha, std::span<const int> blocks,
                                       const ShiftExperimentOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("shift_experiment: alpha must lie in (0, 1)");
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (blocks[i] <= blocks[i - 1]) throw DomainError("shift_experiment: K list must be increasing");
  }
  const auto omega = make_omega_grid(options.omega_depth, options.omega_angles);
  const auto bloch_grid = make_disk_grid(options.bloch_levels, 4, options.bloch_angles);
  std::vector<ShiftRow> rows;
  for (int k : blocks) {
    const auto c = lacunary_witness(alpha, k);
    ShiftRow row;
    row.blocks = k;
    row.bloch = bloch_seminorm(fractional_derivative(c, 1.0), 2.0 - 0.5 * alpha, bloch_grid);
    row.resolvent_sup = shift_resolvent_sup(c, alpha, omega, options.truncation).value;
    row.hankel_alpha = hankel_norm({c, alpha, options.truncation}, options.power_iterations, options.seed);
    row.hankel_beta_half = hankel_norm({c, 0.5 * alpha, options.truncation}, options.power_iterations, options.seed);
    row.hankel_beta_zero = hankel_norm({c, 0.0, options.truncation}, options.power_iterations, options.seed);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace weisslab
