#include "weisslab/analytic.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "weisslab/measure.hpp"

namespace weisslab {

TaylorCoefficients::TaylorCoefficients(std::vector<Complex> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) c_.assign(1, Complex(0.0, 0.0));
  for (std::size_t n = 0; n < c_.size(); ++n) {
    if (!std::isfinite(c_[n].real()) || !std::isfinite(c_[n].imag())) {
      throw DomainError("TaylorCoefficients: coefficients must be finite");
    }
    if (c_[n] != Complex(0.0, 0.0)) support_.push_back(static_cast<int>(n));
  }
}

bool TaylorCoefficients::is_zero() const noexcept { return support_.empty(); }

Complex TaylorCoefficients::evaluate(Complex z) const {
  if (support_.size() * 8 < c_.size()) {
    const double r = std::abs(z);
    const double t = std::arg(z);
    Complex s(0.0, 0.0);
    for (int n : support_) {
      s += c_[n] * (n == 0 ? Complex(1.0, 0.0) : std::polar(std::pow(r, n), n * t));
    }
    return s;
  }
  Complex s(0.0, 0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * z + *it;
  return s;
}

std::vector<Complex> TaylorCoefficients::evaluate(std::span<const Complex> z) const {
  std::vector<Complex> out(z.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = evaluate(z[i]);
  return out;
}

TaylorCoefficients TaylorCoefficients::derivative() const {
  std::vector<Complex> d(std::max<std::size_t>(c_.size() - 1, 1), Complex(0.0, 0.0));
  for (std::size_t n = 1; n < c_.size(); ++n) d[n - 1] = static_cast<double>(n) * c_[n];
  return TaylorCoefficients(std::move(d));
}

TaylorCoefficients TaylorCoefficients::resized(int truncation) const {
  if (truncation < 0) throw DomainError("TaylorCoefficients::resized: truncation must be >= 0");
  auto c = c_;
  c.resize(static_cast<std::size_t>(truncation) + 1, Complex(0.0, 0.0));
  return TaylorCoefficients(std::move(c));
}

std::string to_json(const TaylorCoefficients& f) {
  nlohmann::json j;
  j["truncation"] = f.truncation();
  auto arr = nlohmann::json::array();
  for (const auto& c : f.coefficients()) arr.push_back({c.real(), c.imag()});
  j["coefficients"] = std::move(arr);
  return j.dump();
}

TaylorCoefficients taylor_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("taylor_from_json: ") + e.what());
  }
  if (!j.contains("coefficients") || !j["coefficients"].is_array()) {
    throw DomainError("taylor_from_json: missing coefficients array");
  }
  std::vector<Complex> c;
  for (const auto& pair : j["coefficients"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw DomainError("taylor_from_json: coefficients must be [re, im] pairs");
    }
    c.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  if (j.contains("truncation")) {
    const int n = j["truncation"].get<int>();
    if (n + 1 != static_cast<int>(c.size())) {
      throw DomainError("taylor_from_json: truncation does not match the coefficient count");
    }
  }
  return TaylorCoefficients(std::move(c));
}

double dirichlet_norm(const TaylorCoefficients& f, double alpha) {
  double s = 0.0;
  for (int n : f.support()) s += std::pow(1.0 + n, alpha) * std::norm(f[n]);
  return std::sqrt(s);
}

TaylorCoefficients fractional_derivative(const TaylorCoefficients& f, double beta) {
  std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] *= std::pow(1.0 + static_cast<double>(n), beta);
  return TaylorCoefficients(std::move(c));
}

DiskGrid make_disk_grid(int levels, int radial_order, int angles, bool adaptive, int max_angles) {
  if (levels < 1 || levels > 40) throw DomainError("make_disk_grid: levels must lie in [1, 40]");
  if (radial_order < 1 || angles < 1) throw DomainError("make_disk_grid: need positive orders");
  DiskGrid grid;
  grid.z.push_back(Complex(0.0, 0.0));
  grid.weight.push_back(0.0);
  grid.cell_radius.push_back(0.0);
  for (int j = 0; j < levels; ++j) {
    const double r0 = j == 0 ? 0.0 : 1.0 - std::ldexp(1.0, -j);
    const double r1 = 1.0 - std::ldexp(1.0, -j - 1);
    int count = angles;
    if (adaptive) count = std::clamp(1 << std::min(j + 3, 30), angles, std::max(angles, max_angles));
    const auto rule = gauss_legendre(static_cast<std::size_t>(radial_order), r0, r1);
    const double dtheta = 2.0 * kPi / count;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = rule.nodes[i];
      const double w = rule.weights[i] * r * dtheta;
      if (j == levels - 1 && i + 1 == rule.nodes.size()) grid.outer_ring_begin = grid.z.size();
      for (int k = 0; k < count; ++k) {
        grid.z.push_back(std::polar(r, k * dtheta));
        grid.weight.push_back(w);
        grid.cell_radius.push_back(std::sqrt(w / kPi));
      }
    }
  }
  grid.outer_radius = 1.0 - std::ldexp(1.0, -levels);
  return grid;
}

double area_dirichlet_norm(const TaylorCoefficients& f, double beta, const DiskGrid& grid) {
  if (!(beta < 0.0)) throw DomainError("area_dirichlet_norm: beta must be negative");
  const auto values = f.evaluate(grid.z);
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (grid.weight[i] == 0.0) continue;
    sum += grid.weight[i] * std::norm(values[i]) * std::pow(1.0 - std::norm(grid.z[i]), -(1.0 + beta));
  }
  double ring = 0.0;
  for (std::size_t i = grid.outer_ring_begin; i < values.size(); ++i) ring += std::norm(values[i]);
  ring /= static_cast<double>(values.size() - grid.outer_ring_begin);
  const double big_r2 = grid.outer_radius * grid.outer_radius;
  sum += ring * kPi * std::pow(1.0 - big_r2, -beta) / (-beta);
  return std::sqrt(sum);
}

double bloch_seminorm(const TaylorCoefficients& f, double delta, const DiskGrid& grid) {
  const auto d = f.derivative().evaluate(grid.z);
  double best = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    best = std::max(best, std::abs(d[i]) * std::pow(1.0 - std::norm(grid.z[i]), delta));
  }
  return best;
}

double green_function(Complex z, Complex a) { return kernels::green_function(z, a); }

kernels::GridMax f_space_seminorm(const TaylorCoefficients& f, double q,
                                  std::span<const Complex> a_grid, const DiskGrid& z_grid) {
  if (a_grid.empty()) throw DomainError("f_space_seminorm: empty a grid");
  for (const auto& a : a_grid) {
    if (!(std::abs(a) < 1.0)) throw DomainError("f_space_seminorm: a grid must lie in 𝔻");
  }
  const auto d = f.derivative().evaluate(z_grid.z);
  kernels::WeightedNodes nodes;
  nodes.z = z_grid.z;
  nodes.cell_radius = z_grid.cell_radius;
  nodes.mass.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    nodes.mass[i] = z_grid.weight[i] * std::norm(d[i]) * std::pow(1.0 - std::norm(z_grid.z[i]), q);
  }
  return kernels::omp::green_sup(nodes, a_grid);
}

std::vector<Complex> make_a_grid(int levels, int angles) {
  if (levels < 0 || angles < 1) throw DomainError("make_a_grid: need levels >= 0, angles >= 1");
  std::vector<Complex> out;
  for (int k = 0; k <= levels; ++k) {
    const double r = 1.0 - std::ldexp(1.0, -k);
    if (k == 0) {
      out.push_back(Complex(0.0, 0.0));
      continue;
    }
    for (int j = 0; j < angles; ++j) out.push_back(std::polar(r, 2.0 * kPi * (j + 0.5) / angles));
  }
  return out;
}

double carleson_bmoa_test(const TaylorCoefficients& f, double beta, int depth, const DiskGrid& grid) {
  if (!(beta > 0.0)) throw DomainError("carleson_bmoa_test: beta must be positive");
  if (f.is_zero()) return 0.0;
  const auto values = fractional_derivative(f, beta).evaluate(grid.z);
  std::vector<Atom> atoms;
  atoms.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (grid.weight[i] == 0.0) continue;
    const double w =
        grid.weight[i] * std::norm(values[i]) * std::pow(1.0 - std::norm(grid.z[i]), 2.0 * beta - 1.0);
    atoms.push_back({grid.z[i], w});
  }
  return one_box_constant(AtomicMeasure(Ambient::disk, std::move(atoms)), 1.0, depth);
}

TaylorCoefficients lacunary_witness(double alpha, int blocks) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("lacunary_witness: alpha must lie in (0, 1)");
  if (blocks < 1 || blocks > 28) throw DomainError("lacunary_witness: blocks must lie in [1, 28]");
  std::vector<Complex> c((std::size_t{1} << (blocks - 1)) + 1, Complex(0.0, 0.0));
  for (int k = 0; k < blocks; ++k) {
    const double n = std::ldexp(1.0, k);
    c[static_cast<std::size_t>(n)] = std::pow(2.0, k * (1.0 - 0.5 * alpha)) / (1.0 + n);
  }
  return TaylorCoefficients(std::move(c));
}

}  // namespace weisslab
