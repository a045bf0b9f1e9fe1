#include "weisslab/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kernel_terms.hpp"
#include "weisslab/kernels.hpp"

namespace weisslab {

Grid1D::Grid1D(double l, double r, int c) : left(l), right(r), cells(c) {
  if (!(l < r) || !std::isfinite(l) || !std::isfinite(r)) {
    throw DomainError("Grid1D: need finite left < right");
  }
  if (c < 2) throw DomainError("Grid1D: need at least 2 cells");
}

double riesz_kernel(double beta, double x) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("riesz_kernel: beta must lie in (0, 1)");
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(std::abs(x), beta - 1.0);
}

double kernel_convolve(const DensityVector& g, double beta, const Grid1D& grid, double x) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("kernel_convolve: beta must lie in (0, 1)");
  if (g.values.size() != static_cast<std::size_t>(grid.cells)) {
    throw DomainError("kernel_convolve: density size does not match the grid");
  }
  const double h = grid.h();
  double sum = 0.0;
  for (int i = 0; i < grid.cells; ++i) {
    if (g.values[i] == 0.0) continue;
    sum += g.values[i] *
           kernels::riesz_cell_integral(x, grid.left + i * h, grid.left + (i + 1) * h, beta);
  }
  return sum;
}

std::vector<double> collocation_points(const CapacityProblem& problem) {
  std::vector<double> points;
  for (int i = 0; i < problem.grid.cells; ++i) {
    const double x = problem.grid.midpoint(i);
    if (problem.target.contains(x)) points.push_back(x);
  }
  return points;
}

namespace {

void validate(const CapacityProblem& p) {
  if (!(p.beta > 0.0 && p.beta < 1.0)) throw DomainError("capacity: beta must lie in (0, 1)");
  if (p.solver.max_iter < 1) throw DomainError("capacity: solver.max_iter must be >= 1");
  if (!(p.solver.tol > 0.0)) throw DomainError("capacity: solver.tol must be positive");
  if (!(p.solver.step >= 0.0)) throw DomainError("capacity: solver.step must be >= 0");
  for (const auto& iv : p.target.intervals()) {
    if (iv.left < p.grid.left || iv.right > p.grid.right) {
      throw DomainError("capacity: target must lie inside the grid");
    }
  }
}

struct DualSolution {
  Eigen::VectorXd lambda;
  int iterations = 0;
  bool converged = false;
};

Eigen::VectorXd solve_free(const Eigen::MatrixXd& m, const std::vector<int>& free) {
  const auto n = static_cast<Eigen::Index>(free.size());
  Eigen::MatrixXd sub(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = m(free[i], free[j]);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sub);
  if (llt.info() == Eigen::Success) return llt.solve(Eigen::VectorXd::Ones(n));
  return sub.ldlt().solve(Eigen::VectorXd::Ones(n));
}

// Active-set method for min ½λᵀMλ - 1ᵀλ, λ ≥ 0 (Lawson-Hanson pattern,
// started from the full free set because the equilibrium multipliers of an
// open set are typically all positive).
DualSolution active_set(const Eigen::MatrixXd& m, const SolverOptions& opt) {
  const auto n = m.rows();
  DualSolution out;
  out.lambda = Eigen::VectorXd::Zero(n);
  std::vector<char> is_free(static_cast<std::size_t>(n), 1);
  auto free_list = [&] {
    std::vector<int> f;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (is_free[i]) f.push_back(static_cast<int>(i));
    }
    return f;
  };
  bool feasible = false;
  for (int it = 1; it <= opt.max_iter; ++it) {
    out.iterations = it;
    auto free = free_list();
    Eigen::VectorXd s = solve_free(m, free);
    if (!feasible) {
      bool all_positive = true;
      for (std::size_t k = 0; k < free.size(); ++k) {
        if (s[k] <= 0.0) {
          is_free[free[k]] = 0;
          all_positive = false;
        }
      }
      if (!all_positive) continue;
      feasible = true;
    } else {
      // Move towards s until the first free multiplier hits zero.
      for (;;) {
        double t = 1.0;
        for (std::size_t k = 0; k < free.size(); ++k) {
          if (s[k] <= 0.0) {
            const double l = out.lambda[free[k]];
            t = std::min(t, l / (l - s[k]));
          }
        }
        if (t >= 1.0) break;
        for (std::size_t k = 0; k < free.size(); ++k) {
          double& l = out.lambda[free[k]];
          l += t * (s[k] - l);
          if (l <= 0.0) {
            l = 0.0;
            is_free[free[k]] = 0;
          }
        }
        free = free_list();
        if (free.empty()) break;
        s = solve_free(m, free);
      }
    }
    out.lambda.setZero();
    for (std::size_t k = 0; k < free.size(); ++k) out.lambda[free[k]] = s[k];
    const Eigen::VectorXd grad = m * out.lambda - Eigen::VectorXd::Ones(n);
    Eigen::Index worst = -1;
    double most_negative = -opt.tol;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!is_free[i] && grad[i] < most_negative) {
        most_negative = grad[i];
        worst = i;
      }
    }
    if (worst < 0) {
      out.converged = true;
      return out;
    }
    is_free[worst] = 1;
  }
  return out;
}

double lambda_max_sym(const Eigen::MatrixXd& m) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m.rows()).normalized();
  double value = 0.0;
  for (int it = 0; it < 200; ++it) {
    const Eigen::VectorXd w = m * v;
    const double next = v.dot(w);
    v = w.normalized();
    if (std::abs(next - value) <= 1e-12 * std::abs(next)) return next;
    value = next;
  }
  return value;
}

// FISTA with projection onto λ ≥ 0.
DualSolution projected_gradient(const Eigen::MatrixXd& m, const SolverOptions& opt) {
  const auto n = m.rows();
  const double step = opt.step > 0.0 ? opt.step : 1.0 / lambda_max_sym(m);
  DualSolution out;
  out.lambda = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd y = out.lambda;
  double t = 1.0;
  for (int it = 1; it <= opt.max_iter; ++it) {
    out.iterations = it;
    const Eigen::VectorXd grad = m * y - Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd next = (y - step * grad).cwiseMax(0.0);
    const double change = (next - out.lambda).lpNorm<Eigen::Infinity>();
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / t_next) * (next - out.lambda);
    out.lambda = next;
    t = t_next;
    if (change <= opt.tol * std::max(1.0, out.lambda.lpNorm<Eigen::Infinity>())) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

CapacityResult capacity_upper(const CapacityProblem& problem) {
  validate(problem);
  const Grid1D& grid = problem.grid;
  const double beta = problem.beta;
  const double h = grid.h();
  CapacityResult result;
  result.density.values.assign(static_cast<std::size_t>(grid.cells), 0.0);

  const auto points = collocation_points(problem);
  if (points.empty()) {
    if (!problem.target.empty()) {
      throw DomainError("capacity: grid too coarse, no cell midpoint lies in the target");
    }
    return result;
  }

  std::vector<int> index(points.size());
  for (std::size_t q = 0; q < points.size(); ++q) {
    index[q] = static_cast<int>(std::floor((points[q] - grid.left) / h));
  }
  const Eigen::MatrixXd m = kernels::omp::collocation_normal_midpoints(index, beta, h, grid.cells);
  const DualSolution dual = problem.solver.method == CapacityMethod::active_set
                                ? active_set(m, problem.solver)
                                : projected_gradient(m, problem.solver);
  result.iterations = dual.iterations;
  result.converged = dual.converged;

  // Collocation points are cell midpoints, so A_{qi} = h^β κ(i - j_q) with
  // κ(e) = F(e + ½) - F(e - ½), F(u) = sign(u)|u|^β/β.
  const int cells = grid.cells;
  std::vector<double> kappa(static_cast<std::size_t>(2 * cells + 1));
  for (int e = -cells; e <= cells; ++e) kappa[e + cells] = kernels::detail::cell_weight(e, beta);
  const double hb = std::pow(h, beta);

  auto& g = result.density.values;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < cells; ++i) {
    double s = 0.0;
    for (std::size_t q = 0; q < points.size(); ++q) s += dual.lambda[q] * kappa[i - index[q] + cells];
    g[i] = std::max(0.0, hb * s / h);
  }

  double min_constraint = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : min_constraint)
  for (std::size_t q = 0; q < points.size(); ++q) {
    double s = 0.0;
    for (int i = 0; i < cells; ++i) s += kappa[i - index[q] + cells] * g[i];
    min_constraint = std::min(min_constraint, hb * s);
  }
  result.residual = std::max(0.0, 1.0 - min_constraint);
  if (!(min_constraint > 0.0)) {
    result.converged = false;
    result.value = std::numeric_limits<double>::infinity();
    return result;
  }
  if (min_constraint < 1.0) {
    for (auto& v : g) v /= min_constraint;
  }
  double norm = 0.0;
  for (double v : g) norm += v * v;
  result.value = h * norm;
  if (result.residual > std::max(problem.solver.tol, 1e-6)) result.converged = false;
  return result;
}

double poisson_extension(std::span<const double> f, const Grid1D& grid, double x, double y) {
  if (!(y > 0.0)) throw DomainError("poisson_extension: y must be positive");
  if (f.size() != static_cast<std::size_t>(grid.cells)) {
    throw DomainError("poisson_extension: sample count does not match the grid");
  }
  const double h = grid.h();
  double sum = 0.0;
  for (int i = 0; i < grid.cells; ++i) {
    if (f[i] == 0.0) continue;
    const double a = grid.left + i * h - x;
    const double b = grid.left + (i + 1) * h - x;
    sum += f[i] * (std::atan(b / y) - std::atan(a / y));
  }
  return sum / kPi;
}

double indicator_box_lower_bound(const Interval& interval, int samples) {
  if (samples < 4) throw DomainError("indicator_box_lower_bound: need at least 4 samples");
  const Grid1D grid(interval.left, interval.right, 2);
  const double ones[2] = {1.0, 1.0};
  const double len = interval.length();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double x = interval.left + len * i / (samples - 1);
    for (int j = 1; j <= samples; ++j) {
      const double y = 0.5 * len * j / samples;
      best = std::min(best, poisson_extension(ones, grid, x, y));
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Config

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw DomainError("config: '" + key + "' expects a number, got '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 2e9) {
    throw DomainError("config: '" + key + "' expects an integer, got '" + text + "'");
  }
  return static_cast<int>(v);
}

OpenSetUnion parse_target(const std::string& text) {
  std::vector<Interval> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw DomainError("config: target intervals are written a:b, got '" + item + "'");
    }
    out.emplace_back(parse_double("target", trim(item.substr(0, colon))),
                     parse_double("target", trim(item.substr(colon + 1))));
  }
  return OpenSetUnion(std::move(out));
}

}  // namespace

CapacityProblem parse_capacity_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("config: expected key = value, got '" + line + "'");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  CapacityProblem p;
  double left = 0.0;
  double right = 1.0;
  int cells = 1024;
  for (const auto& [key, value] : kv) {
    if (key == "beta") {
      p.beta = parse_double(key, value);
    } else if (key == "target") {
      p.target = parse_target(value);
    } else if (key == "grid.left") {
      left = parse_double(key, value);
    } else if (key == "grid.right") {
      right = parse_double(key, value);
    } else if (key == "grid.cells") {
      cells = parse_int(key, value);
    } else if (key == "solver.max_iter") {
      p.solver.max_iter = parse_int(key, value);
    } else if (key == "solver.step") {
      p.solver.step = parse_double(key, value);
    } else if (key == "solver.tol") {
      p.solver.tol = parse_double(key, value);
    } else if (key == "solver.method") {
      if (value == "active_set") {
        p.solver.method = CapacityMethod::active_set;
      } else if (value == "projected_gradient") {
        p.solver.method = CapacityMethod::projected_gradient;
      } else {
        throw DomainError("config: solver.method must be active_set or projected_gradient");
      }
    } else {
      throw DomainError("config: unknown key '" + key + "'");
    }
  }
  p.grid = Grid1D(left, right, cells);
  validate(p);
  return p;
}

void write_capacity_config(std::ostream& out, const CapacityProblem& p) {
  out << "beta = " << format_shortest(p.beta) << '\n';
  out << "target = ";
  bool first = true;
  for (const auto& iv : p.target.intervals()) {
    out << (first ? "" : ", ") << format_shortest(iv.left) << ':' << format_shortest(iv.right);
    first = false;
  }
  out << '\n';
  out << "grid.left = " << format_shortest(p.grid.left) << '\n';
  out << "grid.right = " << format_shortest(p.grid.right) << '\n';
  out << "grid.cells = " << p.grid.cells << '\n';
  out << "solver.max_iter = " << p.solver.max_iter << '\n';
  out << "solver.step = " << format_shortest(p.solver.step) << '\n';
  out << "solver.tol = " << format_shortest(p.solver.tol) << '\n';
  out << "solver.method = "
      << (p.solver.method == CapacityMethod::active_set ? "active_set" : "projected_gradient") << '\n';
}

std::string capacity_result_json(const CapacityResult& result) {
  nlohmann::json j;
  j["value"] = result.value;
  j["residual"] = result.residual;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  return j.dump();
}

}  // namespace weisslab
