#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "weisslab/capacity.hpp"
#include "weisslab/kernels.hpp"
#include "weisslab/measure.hpp"

namespace weisslab {

/// A = multiplication by iz and C = integration against μ on X = L²(Π₊, μ)
/// for an atomic μ with every atom strictly inside Π₊.
class HalfPlaneSystem {
public:
  explicit HalfPlaneSystem(AtomicMeasure measure);

  const AtomicMeasure& measure() const noexcept { return measure_; }
  std::size_t size() const noexcept { return z_.size(); }
  std::span<const Complex> points() const noexcept { return z_; }
  std::span<const double> weights() const noexcept { return w_; }

private:
  AtomicMeasure measure_;
  std::vector<Complex> z_;
  std::vector<double> w_;
};

/// One coordinate per atom; ‖x‖² = Σ w_j |x_j|².
using StateVector = std::vector<Complex>;

double state_norm(const HalfPlaneSystem& sys, std::span<const Complex> x);

/// (T(t)x)_j = e^{i z_j t} x_j.
StateVector semigroup_apply(const HalfPlaneSystem& sys, double t, std::span<const Complex> x);

/// Cx = Σ w_j x_j.
Complex observe(const HalfPlaneSystem& sys, std::span<const Complex> x);

/// ‖CR(λ, A)‖ = (Σ w_j / |λ - i z_j|²)^{1/2}, Re λ > 0.
double resolvent_functional_norm(const HalfPlaneSystem& sys, Complex lambda);

struct LambdaGrid {
  std::vector<double> re;  // Re λ > 0
  std::vector<double> im;
};

/// Re λ log-spaced on [re_lo, re_hi]; Im λ symmetric log-spaced with the same
/// magnitudes plus 0, merged with `extra_im`.
LambdaGrid make_lambda_grid(double re_lo = 1e-4, double re_hi = 1e4, std::size_t re_points = 161,
                            std::size_t im_points = 81, std::span<const double> extra_im = {});

/// max over the grid of (Re λ)^{(1-α)/2} ‖CR(λ, A)‖ with the attaining λ.
kernels::GridMax resolvent_sup(const HalfPlaneSystem& sys, double alpha, const LambdaGrid& grid);

/// G_{jk} = √(w_j w_k) Γ(1+α) (-i(z_j - conj z_k))^{-(1+α)}, the Gram matrix
/// of ∫₀^∞ t^α |CT(t)x|² dt in the weighted coordinates.
Eigen::MatrixXcd admissibility_gram(const HalfPlaneSystem& sys, double alpha);

/// Smallest M with ∫₀^∞ t^α |CT(t)x|² dt ≤ M² ‖x‖², i.e. √λ_max(G).
double admissibility_constant(const HalfPlaneSystem& sys, double alpha);

/// Samples w(t_k) of a signal on a time grid together with its weight
/// exponent: ‖w‖² = ∫ t^{-α} |w|² dt.
struct WeightedSignal {
  std::vector<double> t;
  std::vector<Complex> w;
  double alpha = 0.0;
};

/// Log-uniform time grid on [lo, hi].
std::vector<double> default_time_grid(std::size_t count = 4096, double lo = 1e-6, double hi = 1e3);

/// ∫₀^∞ f(t) dt for samples on a log-uniform grid: trapezoid in log t plus
/// the tail ∫₀^{t₀} ≈ f(t₀)·t₀/(1 + p) for an integrand behaving like t^p.
double log_grid_integral(std::span<const double> t, std::span<const double> f, double p = 0.0);
Complex log_grid_integral(std::span<const double> t, std::span<const Complex> f, double p = 0.0);

/// ‖w‖ = (∫ t^{-α}|w|² dt)^{1/2} by log-grid quadrature.
double signal_norm(const WeightedSignal& signal);

/// (∫ |∫₀^∞ e^{izt} t^{α/2} v(t) dt|² dμ)^{1/2} / ‖v‖₂ for an unweighted
/// signal v on a log-uniform grid.
double laplace_embedding_ratio(const HalfPlaneSystem& sys, double alpha, const WeightedSignal& v);

/// Analytic function G(z) = ∫₀^∞ e^{izt} w(t) dt whose real part is the
/// Poisson extension of f = I_β * g, β = -α/2, for a density g ≥ 0.
///
/// With ℱg(t) = ∫ g(x)e^{-ixt} dx the weight is
/// w(t) = (κ_β/π) t^{α/2} ℱg(t), κ_β = 2Γ(β)cos(πβ/2),
/// where κ_β|t|^{-β} is the Fourier transform of |x|^{β-1}.
class AnalyticWitness {
public:
  AnalyticWitness(DensityVector g, Grid1D grid, double alpha);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return -0.5 * alpha_; }
  double kappa() const noexcept { return kappa_; }

  /// w sampled on `t` (t > 0).
  WeightedSignal signal(std::span<const double> t) const;
  /// ℱg(t).
  Complex fourier(double t) const;
  /// G(z), Im z > 0. Uses evaluate_exact on small grids and
  /// evaluate_hierarchical otherwise.
  Complex evaluate(Complex z) const;
  /// Closed form, one term per grid cell.
  Complex evaluate_exact(Complex z) const;
  /// The 32 cells nearest Re z are summed exactly; the rest are grouped into
  /// blocks whose width is at most 1/8 of their distance to z and integrated
  /// by a second-order Taylor expansion using prefix-sum moments of g.
  /// Relative error ~1e-5.
  Complex evaluate_hierarchical(Complex z) const;
  /// ‖w‖_{L²(t^{-α})} = κ_β ‖g‖₂ / √π exactly (Plancherel).
  double weight_norm() const;

private:
  Complex cell_sum(Complex z, long first, long last) const;
  Complex block_sum(Complex z, long first, long last) const;

  DensityVector g_;
  Grid1D grid_;
  double alpha_;
  double kappa_;
  // Prefix sums over cells of g_k, g_k·m_k and g_k·m_k² (m_k = midpoint
  // offset from the grid centre, in units of h).
  std::vector<long double> p0_;
  std::vector<long double> p1_;
  std::vector<long double> p2_;
};

AnalyticWitness analytic_witness(const DensityVector& g, const Grid1D& grid, double alpha);

/// (Σ w_j |G(z_j)|²)^{1/2} / ‖w‖: the Dirichlet-embedding ratio of the witness.
double witness_embedding_ratio(const HalfPlaneSystem& sys, const AnalyticWitness& witness);

}  // namespace weisslab
