#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "weisslab/kernels.hpp"
#include "weisslab/numerics.hpp"

namespace weisslab {

/// Truncated Taylor series f(z) = Σ_{n=0}^{N} f_n zⁿ.
class TaylorCoefficients {
public:
  TaylorCoefficients() : c_(1, Complex(0.0, 0.0)) {}
  explicit TaylorCoefficients(std::vector<Complex> coefficients);

  int truncation() const noexcept { return static_cast<int>(c_.size()) - 1; }
  std::span<const Complex> coefficients() const noexcept { return c_; }
  Complex operator[](std::size_t n) const noexcept { return n < c_.size() ? c_[n] : Complex(0.0, 0.0); }
  bool is_zero() const noexcept;
  /// Indices of the nonzero coefficients, increasing.
  const std::vector<int>& support() const noexcept { return support_; }

  Complex evaluate(Complex z) const;
  /// f evaluated at many points; uses the sparse form when f is lacunary.
  std::vector<Complex> evaluate(std::span<const Complex> z) const;
  /// Coefficients of f'.
  TaylorCoefficients derivative() const;
  /// Same function with truncation raised (zero padding) or lowered.
  TaylorCoefficients resized(int truncation) const;

private:
  std::vector<Complex> c_;
  std::vector<int> support_;
};

/// {"truncation": N, "coefficients": [[re, im], ...]}
std::string to_json(const TaylorCoefficients& f);
TaylorCoefficients taylor_from_json(const std::string& text);

/// (Σ (1+n)^α |f_n|²)^{1/2}.
double dirichlet_norm(const TaylorCoefficients& f, double alpha);

/// I_β f = Σ (1+n)^β f_n zⁿ. I₁ f = (z f)'.
TaylorCoefficients fractional_derivative(const TaylorCoefficients& f, double beta);

/// Quadrature nodes on 𝔻: radial cells [1 - 2^{-j}, 1 - 2^{-j-1}] for
/// j = 0..levels-1 (the first cell is [0, 1/2]), Gauss-Legendre in r within
/// each cell, uniform angles. Node 0 is the origin with zero weight so that
/// sups see z = 0.
struct DiskGrid {
  std::vector<Complex> z;
  std::vector<double> weight;       // dA weights
  std::vector<double> cell_radius;  // radius of the equal-area disk
  double outer_radius = 0.0;        // 1 - 2^{-levels}
  std::size_t outer_ring_begin = 0; // nodes of the outermost Gauss ring
};

/// `angles` points per ring; with `adaptive` the count in cell j is raised to
/// 2^{j+3} (capped at max_angles) so that frequencies up to ~2^j are resolved.
DiskGrid make_disk_grid(int levels = 12, int radial_order = 4, int angles = 256,
                        bool adaptive = false, int max_angles = 1 << 16);

/// (∫_𝔻 |f|² (1-|z|²)^{-(1+β)} dA)^{1/2}, β < 0, by quadrature on the grid
/// plus the annulus beyond the grid, where |f|² is replaced by its mean on
/// the outermost ring.
double area_dirichlet_norm(const TaylorCoefficients& f, double beta, const DiskGrid& grid);

/// max over grid nodes of |f'(z)| (1-|z|²)^δ.
double bloch_seminorm(const TaylorCoefficients& f, double delta, const DiskGrid& grid);

/// g(z,a) = -log|(a - z)/(1 - conj(a) z)|.
double green_function(Complex z, Complex a);

/// sup over a ∈ a_grid of ∫ |f'(z)|² (1-|z|²)^q g(z,a) dA, quadrature on
/// z_grid with the cell-averaged logarithm at nodes within a cell of a.
kernels::GridMax f_space_seminorm(const TaylorCoefficients& f, double q,
                                  std::span<const Complex> a_grid, const DiskGrid& z_grid);

/// Uniform polar sample of a points: radii 1 - 2^{-k}, k = 0..levels, angles
/// offset by half a step so that no a coincides with a DiskGrid node.
std::vector<Complex> make_a_grid(int levels, int angles);

/// One-box constant (exponent 1, dyadic arcs up to `depth`) of the measure
/// |(I_β f)(z)|² (1-|z|²)^{2β-1} dA discretised on the grid.
double carleson_bmoa_test(const TaylorCoefficients& f, double beta, int depth, const DiskGrid& grid);

/// c with c_{2^k} = 2^{k(1-α/2)}/(1 + 2^k), k = 0..K-1, zero elsewhere, so
/// that I₁c has amplitudes 2^{k(1-α/2)} at the frequencies 2^k.
TaylorCoefficients lacunary_witness(double alpha, int blocks);

}  // namespace weisslab
