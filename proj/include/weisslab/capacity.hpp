#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "weisslab/measure.hpp"

namespace weisslab {

/// Uniform grid of `cells` cells on [left, right].
struct Grid1D {
  double left = 0.0;
  double right = 1.0;
  int cells = 2;

  Grid1D() = default;
  Grid1D(double l, double r, int c);
  double h() const noexcept { return (right - left) / cells; }
  double midpoint(int i) const noexcept { return left + (i + 0.5) * h(); }
};

/// Piecewise-constant density, one value per grid cell.
struct DensityVector {
  std::vector<double> values;
};

enum class CapacityMethod {
  active_set,         // exact KKT solve of the multiplier problem
  projected_gradient  // accelerated projected gradient on the same problem
};

struct SolverOptions {
  int max_iter = 500;
  double step = 0.0;  // projected_gradient only; 0 selects 1/L
  double tol = 1e-8;
  CapacityMethod method = CapacityMethod::active_set;
};

struct CapacityProblem {
  double beta = 0.25;
  OpenSetUnion target;
  Grid1D grid;
  SolverOptions solver;
};

struct CapacityResult {
  double value = 0.0;  // h·Σ g² for the feasible density below
  DensityVector density;
  double residual = 0.0;  // max(0, 1 - min constraint) before the feasibility push
  int iterations = 0;
  bool converged = true;
};

/// |x|^{β-1}, +∞ at x = 0.
double riesz_kernel(double beta, double x);

/// (I_β * g)(x) with each cell integrated exactly.
double kernel_convolve(const DensityVector& g, double beta, const Grid1D& grid, double x);

/// Cell midpoints lying in the target: the collocation points of the problem.
std::vector<double> collocation_points(const CapacityProblem& problem);

/// Upper estimate of Cap_β(target) on the grid.
///
/// Minimises h‖g‖² over g ≥ 0 with (I_β * g)(x_q) ≥ 1 at the collocation
/// points by solving the dual problem min ½λᵀBλ - Σλ over λ ≥ 0, where
/// B = AAᵀ/h and A_{qi} = ∫_{cell i} |x_q - t|^{β-1} dt. The primal density
/// g = Aᵀλ/h is nonnegative by construction; it is rescaled until every
/// constraint holds, so the returned value is attained by a feasible g.
CapacityResult capacity_upper(const CapacityProblem& problem);

/// (f * P_y)(x) for piecewise-constant f on the grid, P_y(x) = y/π(x² + y²).
double poisson_extension(std::span<const double> f, const Grid1D& grid, double x, double y);

/// Minimum of the Poisson extension of χ_I over a samples×samples lattice of
/// the closed box over I (heights in (0, |I|/2]).
double indicator_box_lower_bound(const Interval& interval, int samples);

/// Key-value config: beta, target ("a:b, c:d"), grid.left, grid.right,
/// grid.cells, solver.max_iter, solver.step, solver.tol, solver.method.
CapacityProblem parse_capacity_config(std::istream& in);
void write_capacity_config(std::ostream& out, const CapacityProblem& problem);
/// {"value": ..., "residual": ..., "iterations": ...}
std::string capacity_result_json(const CapacityResult& result);

}  // namespace weisslab
