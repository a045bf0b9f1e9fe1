#pragma once

// Hot loops of the library. Every kernel exists twice with the same
// signature: `reference` is the plain serial version kept as a test oracle,
// `omp` is the OpenMP version the modules call. Reductions in `omp` are
// either max-reductions or fixed-order sums so results do not depend on the
// thread count.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "weisslab/measure.hpp"
#include "weisslab/numerics.hpp"

namespace weisslab::kernels {

/// Maximum of a scan together with the grid point that attained it.
struct GridMax {
  double value = 0.0;
  Complex argmax{0.0, 0.0};
};

/// Nodes of a quadrature measure on 𝔻 with a per-node local cell radius,
/// used by the Green-function sup.
struct WeightedNodes {
  std::vector<Complex> z;
  std::vector<double> mass;         // integrand × quadrature weight
  std::vector<double> cell_radius;  // radius of the equal-area disk of the node's cell
};

namespace reference {

/// sup over the dyadic family of μ(box)/|I|^exponent, by enumerating every
/// box and testing every atom against Region::contains.
double box_sup(const AtomicMeasure& measure, double exponent, const DyadicLayout& layout);

/// G_{jk} = √(w_j w_k) Γ(1+α) (-i(z_j - conj z_k))^{-(1+α)}.
Eigen::MatrixXcd laplace_gram(std::span<const Complex> z, std::span<const double> w, double alpha);

/// G_{jk} = √(w_j w_k) Σ_{n=0}^{N} (1+n)^α (z_j conj z_k)^n.
Eigen::MatrixXcd power_series_gram(std::span<const Complex> z, std::span<const double> w,
                                   double alpha, int truncation);

/// max over λ = a + ib of a^{(1-α)/2} (Σ_j w_j / |λ - i z_j|²)^{1/2}.
GridMax halfplane_resolvent_sup(std::span<const Complex> z, std::span<const double> w,
                                double alpha, std::span<const double> re_grid,
                                std::span<const double> im_grid);

/// max over ω = r e^{iθ} of (1-r²)^{(1-α)/2} (Σ_j w_j / |1 - conj ω z_j|²)^{1/2}.
GridMax disk_resolvent_sup(std::span<const Complex> z, std::span<const double> w, double alpha,
                           std::span<const double> radii, std::span<const double> angles);

/// B = A Aᵀ / h where A_{qi} = ∫_{cell i} |x_q - t|^{β-1} dt on a uniform grid
/// with `cells` cells starting at `left`.
Eigen::MatrixXd collocation_normal(std::span<const double> points, double beta, double left,
                                   double h, int cells);

/// sup over a ∈ a_grid of Σ_z mass(z)·g(z,a), with g the Green function of 𝔻.
/// Nodes closer than their cell radius to a use the cell-averaged logarithm.
GridMax green_sup(const WeightedNodes& nodes, std::span<const Complex> a_grid);

}  // namespace reference

namespace omp {

double box_sup(const AtomicMeasure& measure, double exponent, const DyadicLayout& layout);
Eigen::MatrixXcd laplace_gram(std::span<const Complex> z, std::span<const double> w, double alpha);
Eigen::MatrixXcd power_series_gram(std::span<const Complex> z, std::span<const double> w,
                                   double alpha, int truncation);
GridMax halfplane_resolvent_sup(std::span<const Complex> z, std::span<const double> w,
                                double alpha, std::span<const double> re_grid,
                                std::span<const double> im_grid);
GridMax disk_resolvent_sup(std::span<const Complex> z, std::span<const double> w, double alpha,
                           std::span<const double> radii, std::span<const double> angles);
Eigen::MatrixXd collocation_normal(std::span<const double> points, double beta, double left,
                                   double h, int cells);
GridMax green_sup(const WeightedNodes& nodes, std::span<const Complex> a_grid);

/// Same matrix as collocation_normal when every point is the midpoint of
/// a grid cell: `index` lists the distinct cells. Entries depend on the
/// offset between cells up to end terms, so each offset is summed once;
/// long sums use Euler-Maclaurin away from the singular offsets (about
/// 1e-11 relative).
Eigen::MatrixXd collocation_normal_midpoints(std::span<const int> index, double beta, double h, int cells);

}  // namespace omp

/// ∫_a^b |x - t|^{β-1} dt in closed form (antiderivative sign(u)|u|^β/β).
double riesz_cell_integral(double x, double a, double b, double beta);

/// Green function g(z,a) = -log|(a - z)/(1 - conj(a) z)|.
double green_function(Complex z, Complex a);

}  // namespace weisslab::kernels
