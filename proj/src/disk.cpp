#include "weisslab/disk.hpp"

#include <cmath>

namespace weisslab {

DiskSystem::DiskSystem(AtomicMeasure measure) : measure_(std::move(measure)) {
  if (measure_.ambient() != Ambient::disk && !measure_.empty()) {
    throw DomainError("DiskSystem: measure must live on the disk");
  }
  for (const auto& a : measure_.atoms()) {
    if (!(std::abs(a.z) < 1.0)) throw DomainError("DiskSystem: atoms need |z| < 1");
    if (!(a.weight > 0.0)) throw DomainError("DiskSystem: weights must be positive");
    z_.push_back(a.z);
    w_.push_back(a.weight);
  }
}

double disk_resolvent_integral(const DiskSystem& sys, Complex omega) {
  if (!(std::abs(omega) < 1.0)) throw DomainError("disk_resolvent_integral: need |ω| < 1");
  double s = 0.0;
  for (std::size_t j = 0; j < sys.size(); ++j) {
    s += sys.weights()[j] / std::norm(1.0 - std::conj(omega) * sys.points()[j]);
  }
  return s;
}

OmegaGrid make_omega_grid(int depth, int angles) {
  if (depth < 0 || angles < 1) throw DomainError("make_omega_grid: need depth >= 0, angles >= 1");
  OmegaGrid grid;
  for (int k = 0; k <= depth; ++k) grid.radii.push_back(1.0 - std::ldexp(1.0, -k));
  for (int j = 0; j < angles; ++j) grid.angles.push_back(2.0 * kPi * j / angles);
  return grid;
}

kernels::GridMax disk_resolvent_sup(const DiskSystem& sys, double alpha, const OmegaGrid& grid) {
  if (!(alpha > -1.0 && alpha < 1.0)) throw DomainError("disk_resolvent_sup: alpha must lie in (-1, 1)");
  for (double r : grid.radii) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("disk_resolvent_sup: radii must lie in [0, 1)");
  }
  return kernels::omp::disk_resolvent_sup(sys.points(), sys.weights(), alpha, grid.radii, grid.angles);
}

Eigen::MatrixXcd discrete_gram(const DiskSystem& sys, double alpha, int truncation) {
  if (truncation < 1) throw DomainError("discrete_gram: truncation must be >= 1");
  return kernels::omp::power_series_gram(sys.points(), sys.weights(), alpha, truncation);
}

Eigen::MatrixXcd limit_gram(const DiskSystem& sys, double alpha) {
  if (!(alpha > -1.0 && alpha < 1.0)) throw DomainError("limit_gram: alpha must lie in (-1, 1)");
  const Polylog li(-alpha);
  const auto n = static_cast<Eigen::Index>(sys.size());
  Eigen::MatrixXcd g(n, n);
#pragma omp parallel for schedule(dynamic, 8)
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k <= j; ++k) {
      const Complex q = sys.points()[j] * std::conj(sys.points()[k]);
      const Complex series = std::abs(q) < 1e-300 ? Complex(1.0, 0.0) : li(q) / q;
      g(j, k) = std::sqrt(sys.weights()[j] * sys.weights()[k]) * series;
      g(k, j) = std::conj(g(j, k));
    }
  }
  return g;
}

TruncatedConstant discrete_admissibility_constant(const DiskSystem& sys, double alpha, int truncation) {
  TruncatedConstant out;
  out.truncation = truncation;
  if (sys.size() == 0) {
    if (truncation < 1) throw DomainError("discrete_admissibility_constant: truncation must be >= 1");
    return out;
  }
  out.value = std::sqrt(std::max(0.0, hermitian_lambda_max(discrete_gram(sys, alpha, truncation))));
  out.doubled = std::sqrt(std::max(0.0, hermitian_lambda_max(discrete_gram(sys, alpha, 2 * truncation))));
  out.relative_change = out.value > 0.0 ? (out.doubled - out.value) / out.value : 0.0;
  return out;
}

double disk_embedding_ratio(const DiskSystem& sys, const TaylorCoefficients& f, double alpha) {
  const double norm = dirichlet_norm(f, -alpha);
  if (!(norm > 0.0)) throw DomainError("disk_embedding_ratio: f must be nonzero");
  const auto values = f.evaluate(sys.points());
  double s = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) s += sys.weights()[j] * std::norm(values[j]);
  return std::sqrt(s) / norm;
}

double kernel_embedding_ratio(const Eigen::MatrixXcd& gram, const Eigen::VectorXcd& d) {
  const Eigen::VectorXcd gd = gram * d;
  const double denom = std::real(d.dot(gd));
  if (!(denom > 0.0)) throw DomainError("kernel_embedding_ratio: zero test function");
  return std::sqrt(gd.squaredNorm() / denom);
}

TaylorCoefficients kernel_combination(const DiskSystem& sys, double alpha, int truncation,
                                      const Eigen::VectorXcd& d) {
  if (d.size() != static_cast<Eigen::Index>(sys.size())) {
    throw DomainError("kernel_combination: coefficient vector size mismatch");
  }
  // K_N(z, a) = Σ (1+n)^α (conj(a) z)^n
  std::vector<Complex> c(static_cast<std::size_t>(truncation) + 1, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const Complex a = std::conj(sys.points()[k]);
    const Complex scale = d[static_cast<Eigen::Index>(k)] * std::sqrt(sys.weights()[k]);
    Complex p(1.0, 0.0);
    for (int n = 0; n <= truncation; ++n) {
      c[n] += scale * p;
      p *= a;
    }
  }
  for (int n = 0; n <= truncation; ++n) c[n] *= std::pow(1.0 + n, alpha);
  return TaylorCoefficients(std::move(c));
}

}  // namespace weisslab
