#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "kernel_terms.hpp"
#include "weisslab/kernels.hpp"

namespace weisslab::kernels::omp {

namespace {

struct Hit {
  long box;
  std::size_t atom;
};

// Sums the hits of one (generation, shift) family box by box, in atom order,
// and returns the largest normalised box mass.
double best_box(std::vector<Hit>& hits, std::span<const Atom> atoms, double denom) {
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.box != b.box ? a.box < b.box : a.atom < b.atom;
  });
  double best = 0.0;
  std::size_t i = 0;
  while (i < hits.size()) {
    double mass = 0.0;
    const long box = hits[i].box;
    for (; i < hits.size() && hits[i].box == box; ++i) mass += atoms[hits[i].atom].weight;
    best = std::max(best, mass / denom);
  }
  return best;
}

double family_sup(const AtomicMeasure& measure, double exponent, const DyadicLayout& layout,
                  int g, int shift) {
  const auto atoms = measure.atoms();
  const double len = std::ldexp(layout.base_length, -g);
  const double start = layout.origin + (shift != 0 ? len / 3.0 : 0.0);
  std::vector<Hit> hits;
  hits.reserve(atoms.size());
  if (layout.ambient == Ambient::half_plane) {
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      const auto k0 = static_cast<long>(std::floor((atoms[j].z.real() - start) / len));
      for (long k = k0 - 1; k <= k0 + 1; ++k) {
        if (in_halfplane_box(dyadic_interval(layout, g, shift, k), atoms[j].z)) {
          hits.push_back({k, j});
        }
      }
    }
  } else {
    const long n = 1L << g;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      double t = std::fmod(std::arg(atoms[j].z) - start, 2.0 * kPi);
      if (t < 0.0) t += 2.0 * kPi;
      const auto k0 = static_cast<long>(std::floor(t / len));
      long candidates[3];
      int count = 0;
      for (long d = -1; d <= 1; ++d) {
        const long k = ((k0 + d) % n + n) % n;
        if (std::find(candidates, candidates + count, k) == candidates + count) {
          candidates[count++] = k;
        }
      }
      for (int c = 0; c < count; ++c) {
        if (in_disk_box(dyadic_arc(layout, g, shift, candidates[c]), atoms[j].z)) {
          hits.push_back({candidates[c], j});
        }
      }
    }
  }
  return best_box(hits, atoms, std::pow(len, exponent));
}

}  // namespace

double box_sup(const AtomicMeasure& measure, double exponent, const DyadicLayout& layout) {
  const int families = 2 * (layout.depth + 1);
  std::vector<double> sup(static_cast<std::size_t>(families), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int f = 0; f < families; ++f) {
    sup[f] = family_sup(measure, exponent, layout, f / 2, f % 2);
  }
  return *std::max_element(sup.begin(), sup.end());
}

Eigen::MatrixXcd laplace_gram(std::span<const Complex> z, std::span<const double> w, double alpha) {
  const auto n = static_cast<Eigen::Index>(z.size());
  const double g = std::tgamma(1.0 + alpha);
  Eigen::MatrixXcd out(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(j, k) = detail::laplace_entry(z[j], z[k], w[j], w[k], g, alpha);
    }
  }
  return out;
}

Eigen::MatrixXcd power_series_gram(std::span<const Complex> z, std::span<const double> w,
                                   double alpha, int truncation) {
  const auto n = static_cast<Eigen::Index>(z.size());
  std::vector<double> coef(static_cast<std::size_t>(truncation) + 1);
  for (int m = 0; m <= truncation; ++m) coef[m] = std::pow(1.0 + m, alpha);
  Eigen::MatrixXcd out(n, n);
#pragma omp parallel for schedule(dynamic, 8)
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = k; j < n; ++j) {
      const Complex v = detail::power_series_entry(z[j], z[k], w[j], w[k], coef.data(), truncation);
      out(j, k) = v;
      out(k, j) = std::conj(v);
    }
  }
  return out;
}

namespace {

// First strict maximum in row-major scan order, matching the serial scan.
GridMax reduce_rows(const std::vector<GridMax>& rows) {
  GridMax best;
  best.value = -1.0;
  for (const auto& r : rows) {
    if (r.value > best.value) best = r;
  }
  if (best.value < 0.0) best.value = 0.0;
  return best;
}

}  // namespace

GridMax halfplane_resolvent_sup(std::span<const Complex> z, std::span<const double> w,
                                double alpha, std::span<const double> re_grid,
                                std::span<const double> im_grid) {
  std::vector<GridMax> rows(re_grid.size(), GridMax{-1.0, {}});
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < re_grid.size(); ++i) {
    const double a = re_grid[i];
    const double scale = std::pow(a, 0.5 * (1.0 - alpha));
    for (double b : im_grid) {
      const double v =
          scale * std::sqrt(detail::halfplane_resolvent_sq(z.data(), w.data(), z.size(), a, b));
      if (v > rows[i].value) rows[i] = {v, Complex(a, b)};
    }
  }
  return reduce_rows(rows);
}

GridMax disk_resolvent_sup(std::span<const Complex> z, std::span<const double> w, double alpha,
                           std::span<const double> radii, std::span<const double> angles) {
  std::vector<GridMax> rows(radii.size(), GridMax{-1.0, {}});
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    const double scale = std::pow(1.0 - r * r, 0.5 * (1.0 - alpha));
    for (double t : angles) {
      const Complex omega = std::polar(r, t);
      const double v =
          scale * std::sqrt(detail::disk_resolvent_sq(z.data(), w.data(), z.size(), omega));
      if (v > rows[i].value) rows[i] = {v, omega};
    }
  }
  return reduce_rows(rows);
}

Eigen::MatrixXd collocation_normal(std::span<const double> points, double beta, double left,
                                   double h, int cells) {
  constexpr int kBlock = 256;
  const auto q = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(q, q);
  Eigen::MatrixXd a(q, kBlock);
  for (int c0 = 0; c0 < cells; c0 += kBlock) {
    const int width = std::min(kBlock, cells - c0);
#pragma omp parallel for schedule(static)
    for (int c = 0; c < width; ++c) {
      const double lo = left + (c0 + c) * h;
      const double hi = left + (c0 + c + 1) * h;
      for (Eigen::Index i = 0; i < q; ++i) a(i, c) = riesz_cell_integral(points[i], lo, hi, beta);
    }
    const auto blk = a.leftCols(width);
    b.selfadjointView<Eigen::Lower>().rankUpdate(blk);
  }
  Eigen::MatrixXd full = b.selfadjointView<Eigen::Lower>();
  return full / h;
}

GridMax green_sup(const WeightedNodes& nodes, std::span<const Complex> a_grid) {
  if (a_grid.empty()) return {};
  std::vector<double> sums(a_grid.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < a_grid.size(); ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.z.size(); ++i) {
      sum += nodes.mass[i] * detail::green_node(nodes.z[i], a_grid[k], nodes.cell_radius[i]);
    }
    sums[k] = sum;
  }
  GridMax best{-std::numeric_limits<double>::infinity(), {}};
  for (std::size_t k = 0; k < a_grid.size(); ++k) {
    if (sums[k] > best.value) best = {sums[k], a_grid[k]};
  }
  return best;
}

namespace {

// Σ_{e=lo}^{hi} κ(e)κ(e - d) for offsets d ≥ 0 on a grid of `cells` cells.
// Short ranges are summed directly. Long ones are summed exactly within
// `kWindow` of the singular offsets 0 and d; on the smooth stretches between
// them the sum is the Euler-Maclaurin integral plus its first correction,
// integrated by Gauss-Legendre on panels no longer than their distance to
// the nearest singular offset.
class OffsetSum {
public:
  OffsetSum(const std::vector<double>& kappa, int cells, double beta)
      : kappa_(kappa), cells_(cells), beta_(beta) {
    const auto rule = gauss_legendre(kOrder, -1.0, 1.0);
    nodes_ = rule.nodes;
    weights_ = rule.weights;
  }

  double term(long e, long d) const { return k(e) * k(e - d); }

  double operator()(long d, long lo, long hi) const {
    if (hi - lo < kDirect) return direct(d, lo, hi);
    // Exact windows around 0 and d, merged when they overlap.
    std::vector<std::pair<long, long>> exact;
    exact.emplace_back(std::max(lo, -kWindow), std::min(hi, kWindow));
    const long a = std::max(lo, d - kWindow), b = std::min(hi, d + kWindow);
    if (a <= exact.back().second + 1) {
      exact.back().second = std::max(exact.back().second, b);
    } else {
      exact.emplace_back(a, b);
    }
    double sum = 0.0;
    long cursor = lo;
    for (const auto& [x, y] : exact) {
      if (x > y) continue;
      if (x > cursor) sum += smooth(d, cursor, x - 1);
      sum += direct(d, x, y);
      cursor = std::max(cursor, y + 1);
    }
    if (cursor <= hi) sum += smooth(d, cursor, hi);
    return sum;
  }

private:
  static constexpr long kDirect = 8192;
  static constexpr long kWindow = 128;
  static constexpr std::size_t kOrder = 10;

  double k(long e) const { return kappa_[static_cast<std::size_t>(e + cells_)]; }

  double direct(long d, long lo, long hi) const {
    double sum = 0.0;
    for (long e = lo; e <= hi; ++e) sum += term(e, d);
    return sum;
  }

  double f(double u, double d) const { return detail::cell_weight(u, beta_) * detail::cell_weight(u - d, beta_); }

  double slope(double u, double d) const {
    return detail::cell_weight_slope(u, beta_) * detail::cell_weight(u - d, beta_) +
           detail::cell_weight(u, beta_) * detail::cell_weight_slope(u - d, beta_);
  }

  // Σ_{e=lo}^{hi} κ(e)κ(e - d) with no singular offset within kWindow.
  double smooth(long d, long lo, long hi) const {
    if (hi - lo < 2 * kWindow) return direct(d, lo, hi);
    const double dd = static_cast<double>(d);
    const double left = lo - 0.5, right = hi + 0.5;
    double integral = 0.0;
    for (double x = left; x < right;) {
      // Distances from x to the nearest singular offset on each side.
      double dl = INFINITY, dr = INFINITY;
      for (double s : {0.0, dd}) {
        if (s <= x) dl = std::min(dl, x - s);
        if (s >= x) dr = std::min(dr, s - x);
      }
      const double len = std::min({dl, 0.5 * dr, right - x});
      const double mid = x + 0.5 * len, half = 0.5 * len;
      double panel = 0.0;
      for (std::size_t j = 0; j < kOrder; ++j) panel += weights_[j] * f(mid + half * nodes_[j], dd);
      integral += half * panel;
      x += len;
    }
    return integral - (slope(right, dd) - slope(left, dd)) / 24.0;
  }

  const std::vector<double>& kappa_;
  int cells_;
  double beta_;
  std::vector<double> nodes_, weights_;
};

}  // namespace

Eigen::MatrixXd collocation_normal_midpoints(std::span<const int> index, double beta, double h, int cells) {
  const auto q = static_cast<Eigen::Index>(index.size());
  std::vector<long> slot(static_cast<std::size_t>(cells), -1);
  for (Eigen::Index k = 0; k < q; ++k) {
    const int c = index[k];
    if (c < 0 || c >= cells) throw DomainError("collocation_normal_midpoints: cell index out of range");
    if (slot[c] >= 0) throw DomainError("collocation_normal_midpoints: repeated cell index");
    slot[c] = static_cast<long>(k);
  }
  Eigen::MatrixXd b(q, q);
  if (q == 0) return b;

  // A cell-midpoint collocation row is A_{pi} = h^β κ(i - p).
  std::vector<double> kappa(static_cast<std::size_t>(2 * cells + 1));
  for (int e = -cells; e <= cells; ++e) kappa[e + cells] = detail::cell_weight(e, beta);
  const double scale = std::pow(h, 2.0 * beta - 1.0);
  const OffsetSum sum(kappa, cells, beta);

  // Pairs (p, p + d) by offset. For one d, the grid sum over e = i - p runs
  // over [-p, cells-1-p], so moving p changes only the end terms.
  std::vector<int> sorted(index.begin(), index.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<long, long>> pairs;  // (d, p)
  pairs.reserve(static_cast<std::size_t>(q * (q + 1) / 2));
  for (Eigen::Index i = 0; i < q; ++i) {
    for (Eigen::Index j = i; j < q; ++j) pairs.emplace_back(sorted[j] - sorted[i], sorted[i]);
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::size_t> starts;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (k == 0 || pairs[k].first != pairs[k - 1].first) starts.push_back(k);
  }
  starts.push_back(pairs.size());

  const long n = cells;
  const auto groups = static_cast<long>(starts.size()) - 1;
#pragma omp parallel for schedule(dynamic, 1)
  for (long g = 0; g < groups; ++g) {
    const long d = pairs[starts[g]].first;
    long p = -1;
    double s = 0.0;
    for (std::size_t k = starts[g]; k < starts[g + 1]; ++k) {
      const long next = pairs[k].second;
      if (p < 0 || next - p > 4096) {
        s = sum(d, -next, n - 1 - next);
      } else {
        for (long e = -next; e < -p; ++e) s += sum.term(e, d);
        for (long e = n - next; e <= n - 1 - p; ++e) s -= sum.term(e, d);
      }
      p = next;
      const long a = slot[static_cast<std::size_t>(p)];
      const long c = slot[static_cast<std::size_t>(p + d)];
      b(a, c) = scale * s;
      b(c, a) = scale * s;
    }
  }
  return b;
}

}  // namespace weisslab::kernels::omp
