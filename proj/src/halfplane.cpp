#include "weisslab/halfplane.hpp"

#include <algorithm>
#include <cmath>

namespace weisslab {

namespace {

void check_alpha(double alpha, const char* where) {
  if (!(alpha > -1.0 && alpha < 1.0)) {
    throw DomainError(std::string(where) + ": alpha must lie in (-1, 1)");
  }
}

template <typename T>
T trapezoid_log(std::span<const double> t, std::span<const T> f, double p) {
  if (t.size() != f.size() || t.empty()) {
    throw DomainError("log_grid_integral: need matching, nonempty samples");
  }
  T sum{};
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double ds = std::log(t[k + 1] / t[k]);
    sum += 0.5 * ds * (f[k] * t[k] + f[k + 1] * t[k + 1]);
  }
  return sum + f[0] * (t[0] / (1.0 + p));
}

}  // namespace

HalfPlaneSystem::HalfPlaneSystem(AtomicMeasure measure) : measure_(std::move(measure)) {
  if (measure_.ambient() != Ambient::half_plane && !measure_.empty()) {
    throw DomainError("HalfPlaneSystem: measure must live on the half-plane");
  }
  for (const auto& a : measure_.atoms()) {
    if (!(a.z.imag() > 0.0)) throw DomainError("HalfPlaneSystem: atoms need Im z > 0");
    if (!(a.weight > 0.0)) throw DomainError("HalfPlaneSystem: weights must be positive");
    z_.push_back(a.z);
    w_.push_back(a.weight);
  }
}

double state_norm(const HalfPlaneSystem& sys, std::span<const Complex> x) {
  if (x.size() != sys.size()) throw DomainError("state_norm: state size mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += sys.weights()[j] * std::norm(x[j]);
  return std::sqrt(s);
}

StateVector semigroup_apply(const HalfPlaneSystem& sys, double t, std::span<const Complex> x) {
  if (!(t >= 0.0)) throw DomainError("semigroup_apply: t must be >= 0");
  if (x.size() != sys.size()) throw DomainError("semigroup_apply: state size mismatch");
  StateVector out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[j] = std::exp(Complex(0.0, 1.0) * sys.points()[j] * t) * x[j];
  }
  return out;
}

Complex observe(const HalfPlaneSystem& sys, std::span<const Complex> x) {
  if (x.size() != sys.size()) throw DomainError("observe: state size mismatch");
  Complex s(0.0, 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) s += sys.weights()[j] * x[j];
  return s;
}

double resolvent_functional_norm(const HalfPlaneSystem& sys, Complex lambda) {
  if (!(lambda.real() > 0.0)) throw DomainError("resolvent_functional_norm: need Re λ > 0");
  double s = 0.0;
  for (std::size_t j = 0; j < sys.size(); ++j) {
    s += sys.weights()[j] / std::norm(lambda - Complex(0.0, 1.0) * sys.points()[j]);
  }
  return std::sqrt(s);
}

LambdaGrid make_lambda_grid(double re_lo, double re_hi, std::size_t re_points,
                            std::size_t im_points, std::span<const double> extra_im) {
  LambdaGrid grid;
  grid.re = log_space(re_lo, re_hi, re_points);
  const auto mags = log_space(re_lo, re_hi, im_points);
  for (auto it = mags.rbegin(); it != mags.rend(); ++it) grid.im.push_back(-*it);
  grid.im.push_back(0.0);
  grid.im.insert(grid.im.end(), mags.begin(), mags.end());
  grid.im.insert(grid.im.end(), extra_im.begin(), extra_im.end());
  std::sort(grid.im.begin(), grid.im.end());
  grid.im.erase(std::unique(grid.im.begin(), grid.im.end()), grid.im.end());
  return grid;
}

kernels::GridMax resolvent_sup(const HalfPlaneSystem& sys, double alpha, const LambdaGrid& grid) {
  check_alpha(alpha, "resolvent_sup");
  if (grid.re.empty() || grid.im.empty()) throw DomainError("resolvent_sup: empty λ grid");
  for (double a : grid.re) {
    if (!(a > 0.0)) throw DomainError("resolvent_sup: grid needs Re λ > 0");
  }
  return kernels::omp::halfplane_resolvent_sup(sys.points(), sys.weights(), alpha, grid.re, grid.im);
}

Eigen::MatrixXcd admissibility_gram(const HalfPlaneSystem& sys, double alpha) {
  check_alpha(alpha, "admissibility_gram");
  return kernels::omp::laplace_gram(sys.points(), sys.weights(), alpha);
}

double admissibility_constant(const HalfPlaneSystem& sys, double alpha) {
  if (sys.size() == 0) {
    check_alpha(alpha, "admissibility_constant");
    return 0.0;
  }
  return std::sqrt(std::max(0.0, hermitian_lambda_max(admissibility_gram(sys, alpha))));
}

std::vector<double> default_time_grid(std::size_t count, double lo, double hi) {
  return log_space(lo, hi, count);
}

double log_grid_integral(std::span<const double> t, std::span<const double> f, double p) {
  return trapezoid_log<double>(t, f, p);
}

Complex log_grid_integral(std::span<const double> t, std::span<const Complex> f, double p) {
  return trapezoid_log<Complex>(t, f, p);
}

double signal_norm(const WeightedSignal& signal) {
  std::vector<double> f(signal.t.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    f[k] = std::pow(signal.t[k], -signal.alpha) * std::norm(signal.w[k]);
  }
  return std::sqrt(log_grid_integral(signal.t, f, -signal.alpha));
}

double laplace_embedding_ratio(const HalfPlaneSystem& sys, double alpha, const WeightedSignal& v) {
  check_alpha(alpha, "laplace_embedding_ratio");
  if (v.t.size() != v.w.size()) throw DomainError("laplace_embedding_ratio: malformed signal");
  const double vnorm = signal_norm(WeightedSignal{v.t, v.w, 0.0});
  if (!(vnorm > 0.0)) throw DomainError("laplace_embedding_ratio: zero signal");
  std::vector<Complex> base(v.t.size());
  for (std::size_t k = 0; k < v.t.size(); ++k) base[k] = std::pow(v.t[k], 0.5 * alpha) * v.w[k];
  std::vector<double> terms(sys.size());
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < sys.size(); ++j) {
    std::vector<Complex> f(v.t.size());
    const Complex iz = Complex(0.0, 1.0) * sys.points()[j];
    for (std::size_t k = 0; k < v.t.size(); ++k) f[k] = std::exp(iz * v.t[k]) * base[k];
    terms[j] = sys.weights()[j] * std::norm(log_grid_integral(v.t, f, 0.5 * alpha));
  }
  double total = 0.0;
  for (double x : terms) total += x;
  return std::sqrt(total) / vnorm;
}

// ---------------------------------------------------------------------------

AnalyticWitness::AnalyticWitness(DensityVector g, Grid1D grid, double alpha)
    : g_(std::move(g)), grid_(grid), alpha_(alpha) {
  if (!(alpha > -1.0 && alpha < 0.0)) throw DomainError("analytic_witness: alpha must lie in (-1, 0)");
  if (g_.values.size() != static_cast<std::size_t>(grid_.cells)) {
    throw DomainError("analytic_witness: density size does not match the grid");
  }
  const double b = beta();
  kappa_ = 2.0 * std::tgamma(b) * std::cos(0.5 * kPi * b);
  const auto n = static_cast<std::size_t>(grid_.cells);
  p0_.assign(n + 1, 0.0L);
  p1_.assign(n + 1, 0.0L);
  p2_.assign(n + 1, 0.0L);
  const long double centre = 0.5L * (grid_.cells - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const long double m = static_cast<long double>(i) - centre;
    const long double v = g_.values[i];
    p0_[i + 1] = p0_[i] + v;
    p1_[i + 1] = p1_[i] + v * m;
    p2_[i + 1] = p2_[i] + v * m * m;
  }
}

Complex AnalyticWitness::fourier(double t) const {
  const double h = grid_.h();
  if (t == 0.0) {
    double s = 0.0;
    for (double v : g_.values) s += v;
    return s * h;
  }
  // ∫_a^{a+h} e^{-ixt} dx = e^{-iat}(1 - e^{-iht})/(it)
  const Complex cell = (1.0 - std::exp(Complex(0.0, -h * t))) / Complex(0.0, t);
  Complex sum(0.0, 0.0);
  for (int i = 0; i < grid_.cells; ++i) {
    if (g_.values[i] == 0.0) continue;
    sum += g_.values[i] * std::exp(Complex(0.0, -(grid_.left + i * h) * t));
  }
  return sum * cell;
}

WeightedSignal AnalyticWitness::signal(std::span<const double> t) const {
  WeightedSignal out;
  out.alpha = alpha_;
  out.t.assign(t.begin(), t.end());
  out.w.resize(t.size());
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!(t[k] > 0.0)) continue;
    out.w[k] = (kappa_ / kPi) * std::pow(t[k], 0.5 * alpha_) * fourier(t[k]);
  }
  return out;
}

Complex AnalyticWitness::evaluate(Complex z) const {
  return grid_.cells <= 4096 ? evaluate_exact(z) : evaluate_hierarchical(z);
}

// G(z) = (κ_β Γ(1-β)/π) Σ_i g_i [(-i(z-s))^β/(iβ)] from s = a_i to a_i + h.
Complex AnalyticWitness::evaluate_exact(Complex z) const {
  if (!(z.imag() > 0.0)) throw DomainError("AnalyticWitness::evaluate: need Im z > 0");
  const double c = kappa_ * std::tgamma(1.0 - beta()) / kPi;
  return c * cell_sum(z, 0, grid_.cells - 1) / Complex(0.0, beta());
}

Complex AnalyticWitness::cell_sum(Complex z, long first, long last) const {
  const double b = beta();
  const double h = grid_.h();
  const Complex mi(0.0, -1.0);
  Complex prev = std::pow(mi * (z - (grid_.left + static_cast<double>(first) * h)), b);
  Complex sum(0.0, 0.0);
  for (long i = first; i <= last; ++i) {
    const Complex next = std::pow(mi * (z - (grid_.left + static_cast<double>(i + 1) * h)), b);
    if (g_.values[i] != 0.0) sum += g_.values[i] * (next - prev);
    prev = next;
  }
  return sum;
}

// ∫_block g(s) K(s) ds with K(s) = d/ds (i(s - z))^β expanded about the block
// centre s_c: K(s_c)M₀ + K'(s_c)M₁ + ½K''(s_c)M₂ with centred moments M_m.
Complex AnalyticWitness::block_sum(Complex z, long first, long last) const {
  const double b = beta();
  const double h = grid_.h();
  const long double centre = 0.5L * (grid_.cells - 1);
  const long double mc = 0.5L * (static_cast<long double>(first) + static_cast<long double>(last)) - centre;
  const long double s0 = p0_[last + 1] - p0_[first];
  const long double s1 = p1_[last + 1] - p1_[first];
  const long double s2 = p2_[last + 1] - p2_[first];
  const double m0 = static_cast<double>(s0) * h;
  const double m1 = static_cast<double>(s1 - mc * s0) * h * h;
  const double m2 = static_cast<double>(s2 - 2.0L * mc * s1 + mc * mc * s0) * h * h * h +
                    static_cast<double>(s0) * h * h * h / 12.0;
  const double sc = grid_.left + (0.5 * static_cast<double>(first + last) + 0.5) * h;
  const Complex u = Complex(0.0, 1.0) * (sc - z);
  const Complex k0 = Complex(0.0, b) * std::pow(u, b - 1.0);
  const Complex k1 = -b * (b - 1.0) * std::pow(u, b - 2.0);
  const Complex k2 = Complex(0.0, -b * (b - 1.0) * (b - 2.0)) * std::pow(u, b - 3.0);
  return k0 * m0 + k1 * m1 + 0.5 * k2 * m2;
}

Complex AnalyticWitness::evaluate_hierarchical(Complex z) const {
  if (!(z.imag() > 0.0)) throw DomainError("AnalyticWitness::evaluate: need Im z > 0");
  const double h = grid_.h();
  const long cells = grid_.cells;
  constexpr long near = 32;
  const double lift = z.imag() / h;
  // Block width is at most 1/8 of the distance from z to the block, in cells.
  const auto width_at = [lift](long offset) {
    const double dist = std::hypot(static_cast<double>(offset), lift);
    return std::max(1L, static_cast<long>(dist / 8.0));
  };
  const auto j0 = static_cast<long>(std::floor((z.real() - grid_.left) / h));
  const long lo = std::clamp(j0 - near, 0L, cells);
  const long hi = std::clamp(j0 + near, -1L, cells - 1);
  Complex sum(0.0, 0.0);
  if (lo <= hi) sum += cell_sum(z, lo, hi);
  // Blocks to the right of the window, then to the left.
  for (long first = std::max(hi + 1, 0L); first < cells;) {
    const long width = width_at(first - j0);
    const long last = std::min(cells - 1, first + width - 1);
    sum += width == 1 ? cell_sum(z, first, last) : block_sum(z, first, last);
    first = last + 1;
  }
  for (long last = std::min(lo - 1, cells - 1); last >= 0;) {
    const long width = width_at(j0 - last);
    const long first = std::max(0L, last - width + 1);
    sum += width == 1 ? cell_sum(z, first, last) : block_sum(z, first, last);
    last = first - 1;
  }
  const double c = kappa_ * std::tgamma(1.0 - beta()) / kPi;
  return c * sum / Complex(0.0, beta());
}

double AnalyticWitness::weight_norm() const {
  double s = 0.0;
  for (double v : g_.values) s += v * v;
  return kappa_ * std::sqrt(s * grid_.h() / kPi);
}

AnalyticWitness analytic_witness(const DensityVector& g, const Grid1D& grid, double alpha) {
  return AnalyticWitness(g, grid, alpha);
}

double witness_embedding_ratio(const HalfPlaneSystem& sys, const AnalyticWitness& witness) {
  const double norm = witness.weight_norm();
  if (!(norm > 0.0)) throw DomainError("witness_embedding_ratio: zero witness");
  std::vector<double> terms(sys.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t j = 0; j < sys.size(); ++j) {
    terms[j] = sys.weights()[j] * std::norm(witness.evaluate(sys.points()[j]));
  }
  double total = 0.0;
  for (double x : terms) total += x;
  return std::sqrt(total) / norm;
}

}  // namespace weisslab
