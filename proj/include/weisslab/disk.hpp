#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "weisslab/analytic.hpp"
#include "weisslab/kernels.hpp"
#include "weisslab/measure.hpp"

namespace weisslab {

/// A = multiplication by z and C = integration against μ on L²(𝔻, μ) for an
/// atomic μ with every atom strictly inside 𝔻.
class DiskSystem {
public:
  explicit DiskSystem(AtomicMeasure measure);

  const AtomicMeasure& measure() const noexcept { return measure_; }
  std::size_t size() const noexcept { return z_.size(); }
  std::span<const Complex> points() const noexcept { return z_; }
  std::span<const double> weights() const noexcept { return w_; }

private:
  AtomicMeasure measure_;
  std::vector<Complex> z_;
  std::vector<double> w_;
};

/// Σ w_j / |1 - conj(ω) z_j|² = ‖C(I - conj(ω)A)^{-1}‖², |ω| < 1.
double disk_resolvent_integral(const DiskSystem& sys, Complex omega);

struct OmegaGrid {
  std::vector<double> radii;
  std::vector<double> angles;
};

/// Radii 1 - 2^{-k}, k = 0..depth, and `angles` uniform angles.
OmegaGrid make_omega_grid(int depth, int angles);

/// max over the grid of (1-|ω|²)^{(1-α)/2} ‖C(I - conj(ω)A)^{-1}‖.
kernels::GridMax disk_resolvent_sup(const DiskSystem& sys, double alpha, const OmegaGrid& grid);

/// (G_N)_{jk} = √(w_j w_k) Σ_{n=0}^{N} (1+n)^α (z_j conj z_k)^n.
Eigen::MatrixXcd discrete_gram(const DiskSystem& sys, double alpha, int truncation);

/// The N → ∞ limit of discrete_gram: √(w_j w_k) Li_{-α}(q)/q with
/// q = z_j conj z_k (1 at q = 0).
Eigen::MatrixXcd limit_gram(const DiskSystem& sys, double alpha);

struct TruncatedConstant {
  double value = 0.0;            // M at truncation N
  double doubled = 0.0;          // M at truncation 2N
  double relative_change = 0.0;  // (M(2N) - M(N)) / M(N)
  int truncation = 0;
};

/// √λ_max(G_N): the smallest M with Σ_{n≤N} (1+n)^α |CAⁿx|² ≤ M² ‖x‖², plus
/// the change on doubling N as a convergence indicator.
TruncatedConstant discrete_admissibility_constant(const DiskSystem& sys, double alpha, int truncation);

/// (Σ w_j |f(z_j)|²)^{1/2} / ‖f‖_{-α}.
double disk_embedding_ratio(const DiskSystem& sys, const TaylorCoefficients& f, double alpha);

/// Embedding ratio of f = Σ_k d_k √w_k K_N(·, z_k), K_N the truncated
/// reproducing kernel of ‖·‖_{-α}: ‖G_N d‖ / (dᴴ G_N d)^{1/2}. Agrees with
/// disk_embedding_ratio on the coefficients of that polynomial.
double kernel_embedding_ratio(const Eigen::MatrixXcd& gram, const Eigen::VectorXcd& d);

/// The polynomial Σ_k d_k √w_k K_N(·, z_k) itself.
TaylorCoefficients kernel_combination(const DiskSystem& sys, double alpha, int truncation,
                                      const Eigen::VectorXcd& d);

}  // namespace weisslab
