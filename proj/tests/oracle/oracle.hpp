#pragma once

// Independent reference computations. Nothing here calls the closed forms it
// is meant to check: Gram matrices are replaced by time quadrature or direct
// summation, resolvent formulas by dense solves, power iteration by SVD.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "weisslab/analytic.hpp"
#include "weisslab/disk.hpp"
#include "weisslab/experiment.hpp"
#include "weisslab/halfplane.hpp"

namespace weisslab::oracle {

/// λ_max by plain power iteration on a Hermitian positive semidefinite matrix.
double power_lambda_max(const Eigen::MatrixXcd& m, int iterations = 2000);

/// M² estimate from ∫ t^α |Σ_j √w_j e^{i z_j t} u_j|² dt on a dense log grid
/// (trapezoid in log t plus the t → 0 tail), maximised by power iteration.
double quadrature_admissibility_constant(const HalfPlaneSystem& sys, double alpha, int points_per_decade = 2000);

/// ∫₀^∞ t^α |CT(t)x|² dt for one state by the same quadrature.
double quadrature_output_energy(const HalfPlaneSystem& sys, double alpha, const StateVector& x,
                                int points_per_decade = 2000);

/// max over `trials` random states of Σ_{n≤N} (1+n)^α |CAⁿx|² / ‖x‖², then
/// refined by power iteration on the same operator applied term by term.
double direct_discrete_admissibility(const DiskSystem& sys, double alpha, int truncation, int trials,
                                     std::uint64_t seed);

/// ‖cᴴ(I - conj(ω)S_N)^{-1}‖ with S_N the (N+1)×(N+1) shift, by dense LU.
double dense_shift_resolvent(const TaylorCoefficients& c, Complex omega, int truncation);

/// ‖Γ conj(f)‖² with Γ formed densely entry by entry.
double dense_hankel_route(const TaylorCoefficients& c, double alpha, const TaylorCoefficients& f, int truncation);

/// Largest singular value by SVD.
double svd_norm(const Eigen::MatrixXcd& m);

/// Σ_{n≥1} qⁿ/n^s summed until the terms drop below 1e-18.
Complex polylog_series(double s, Complex q);

/// ∫_a^b |x - t|^{β-1} dt by composite Gauss-Legendre after splitting at x.
double riesz_cell_quadrature(double beta, double x, double a, double b);

/// Random half-plane system: `atoms` atoms with Re z ∈ [-1, 1],
/// Im z ∈ [0.1, 1], weights in [0.1, 1].
HalfPlaneSystem random_halfplane_system(std::mt19937_64& rng, int atoms);

/// Random disk measure: atoms with |z| ∈ [0.2, 0.95], weights in [0.01, 0.1].
AtomicMeasure random_disk_measure(std::mt19937_64& rng, int atoms);

TaylorCoefficients random_polynomial(std::mt19937_64& rng, int degree);

/// The oracle suite behind `weisslab verify`: one row per check with
/// columns check, observed, reference, tolerance, pass.
ExperimentReport run_verify(const ExperimentConfig& config);

}  // namespace weisslab::oracle
