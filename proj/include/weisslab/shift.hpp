#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "weisslab/analytic.hpp"
#include "weisslab/disk.hpp"

namespace weisslab {

/// Γ_c^α truncated to indices 0..N: entry (n, m) = (1+n)^{α/2} c_{n+m},
/// with c_k = 0 beyond the stored coefficients.
struct HankelSpec {
  TaylorCoefficients c;
  double alpha = 0.0;
  int truncation = 0;
};

void validate(const HankelSpec& spec);

/// Dense (N+1)×(N+1) generalised Hankel matrix.
Eigen::MatrixXcd hankel_matrix(const HankelSpec& spec);

/// Largest singular value by power iteration on MᴴM from a seeded random
/// start. Stops early once the Rayleigh quotient changes by < 1e-10.
double operator_norm(const Eigen::MatrixXcd& matrix, int iterations = 300, std::uint64_t seed = 0);

/// Γx and Γᴴy without forming Γ; O(N · #support(c)).
Eigen::VectorXcd hankel_apply(const HankelSpec& spec, const Eigen::VectorXcd& x);
Eigen::VectorXcd hankel_apply_adjoint(const HankelSpec& spec, const Eigen::VectorXcd& y);

/// operator_norm of Γ_c^α through the matrix-free products.
double hankel_norm(const HankelSpec& spec, int iterations = 300, std::uint64_t seed = 0);

/// Σ_{n=0}^{N} (1+n)^α |Σ_m f_m conj(c_{n+m})|², which equals ‖Γ_c^α conj(f)‖².
double admissibility_sum(const TaylorCoefficients& c, double alpha, const TaylorCoefficients& f, int truncation);

struct ResolventNorm {
  double value = 0.0;
  /// Upper bound for the discarded part Σ_{k>N} |a_k|², as a norm.
  double tail_bound = 0.0;
};

/// ‖C(I - conj(ω)S)^{-1}‖ = ‖(zc(z) - ωc(ω))/(z - ω)‖_{H²} from the
/// coefficients a_k = Σ_{m≥k} c_m ω^{m-k}, k = 0..N.
ResolventNorm shift_resolvent_norm(const TaylorCoefficients& c, Complex omega, int truncation);

/// max over the grid of (1-|ω|²)^{(1-α)/2} ‖C(I - conj(ω)S)^{-1}‖.
kernels::GridMax shift_resolvent_sup(const TaylorCoefficients& c, double alpha, const OmegaGrid& grid,
                                     int truncation);

/// Both sides of the difference-quotient equivalence for f = zc at ω:
/// boundary = ∫ |e^{iθ}c(e^{iθ}) - ωc(ω)|² / |e^{iθ} - ω|² dθ/2π by the
/// trapezoid rule on `angles` points, area = ∫ |(I₁c)(z)|² (1-|z|²) / |1 - conj(ω)z|² dA.
struct DifferenceQuotientForms {
  double boundary = 0.0;
  double area = 0.0;
};
DifferenceQuotientForms difference_quotient_forms(const TaylorCoefficients& c, Complex omega, int angles,
                                                  const DiskGrid& grid);

struct ShiftRow {
  int blocks = 0;
  double bloch = 0.0;
  double resolvent_sup = 0.0;
  double hankel_alpha = 0.0;
  double hankel_beta_half = 0.0;
  double hankel_beta_zero = 0.0;
};

struct ShiftExperimentOptions {
  int truncation = 8192;
  int omega_depth = 10;
  int omega_angles = 64;
  int bloch_levels = 20;
  int bloch_angles = 64;
  int power_iterations = 300;
  std::uint64_t seed = 0;
};

/// One row per K: lacunary_witness(α, K) and its Bloch seminorm
/// (δ = 2 - α/2, of I₁c), resolvent sup and the Hankel norms at α, α/2, 0.
std::vector<ShiftRow> shift_experiment(double alpha, std::span<const int> blocks,
                                       const ShiftExperimentOptions& options = {});

}  // namespace weisslab
