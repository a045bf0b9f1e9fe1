#include <cmath>
#include <limits>

#include "kernel_terms.hpp"
#include "weisslab/kernels.hpp"

namespace weisslab::kernels {

double riesz_cell_integral(double x, double a, double b, double beta) {
  return detail::riesz_antiderivative(b - x, beta) - detail::riesz_antiderivative(a - x, beta);
}

double green_function(Complex z, Complex a) { return detail::green_value(z, a); }

namespace reference {

double box_sup(const AtomicMeasure& measure, double exponent, const DyadicLayout& layout) {
  double best = 0.0;
  for (int g = 0; g <= layout.depth; ++g) {
    for (int shift = 0; shift <= 1; ++shift) {
      const auto [first, last] = dyadic_index_range(layout, g, shift);
      for (long k = first; k <= last; ++k) {
        Region box = layout.ambient == Ambient::half_plane
                         ? Region::halfplane_box(dyadic_interval(layout, g, shift, k))
                         : Region::disk_box(dyadic_arc(layout, g, shift, k));
        const double mass = measure_of(measure, box);
        const double len = std::ldexp(layout.base_length, -g);
        best = std::max(best, mass / std::pow(len, exponent));
      }
    }
  }
  return best;
}

Eigen::MatrixXcd laplace_gram(std::span<const Complex> z, std::span<const double> w, double alpha) {
  const auto n = static_cast<Eigen::Index>(z.size());
  const double g = std::tgamma(1.0 + alpha);
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
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
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      out(j, k) = detail::power_series_entry(z[j], z[k], w[j], w[k], coef.data(), truncation);
    }
  }
  return out;
}

GridMax halfplane_resolvent_sup(std::span<const Complex> z, std::span<const double> w,
                                double alpha, std::span<const double> re_grid,
                                std::span<const double> im_grid) {
  GridMax best;
  best.value = -1.0;
  for (double a : re_grid) {
    const double scale = std::pow(a, 0.5 * (1.0 - alpha));
    for (double b : im_grid) {
      const double v =
          scale * std::sqrt(detail::halfplane_resolvent_sq(z.data(), w.data(), z.size(), a, b));
      if (v > best.value) best = {v, Complex(a, b)};
    }
  }
  if (best.value < 0.0) best.value = 0.0;
  return best;
}

GridMax disk_resolvent_sup(std::span<const Complex> z, std::span<const double> w, double alpha,
                           std::span<const double> radii, std::span<const double> angles) {
  GridMax best;
  best.value = -1.0;
  for (double r : radii) {
    const double scale = std::pow(1.0 - r * r, 0.5 * (1.0 - alpha));
    for (double t : angles) {
      const Complex omega = std::polar(r, t);
      const double v =
          scale * std::sqrt(detail::disk_resolvent_sq(z.data(), w.data(), z.size(), omega));
      if (v > best.value) best = {v, omega};
    }
  }
  if (best.value < 0.0) best.value = 0.0;
  return best;
}

Eigen::MatrixXd collocation_normal(std::span<const double> points, double beta, double left,
                                   double h, int cells) {
  const auto q = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(q, cells);
  for (Eigen::Index i = 0; i < q; ++i) {
    for (int c = 0; c < cells; ++c) {
      a(i, c) = riesz_cell_integral(points[i], left + c * h, left + (c + 1) * h, beta);
    }
  }
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(q, q);
  for (Eigen::Index i = 0; i < q; ++i) {
    for (Eigen::Index j = 0; j < q; ++j) {
      double s = 0.0;
      for (int c = 0; c < cells; ++c) s += a(i, c) * a(j, c);
      b(i, j) = s / h;
    }
  }
  return b;
}

GridMax green_sup(const WeightedNodes& nodes, std::span<const Complex> a_grid) {
  GridMax best;
  best.value = -std::numeric_limits<double>::infinity();
  for (const Complex a : a_grid) {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.z.size(); ++i) {
      sum += nodes.mass[i] * detail::green_node(nodes.z[i], a, nodes.cell_radius[i]);
    }
    if (sum > best.value) best = {sum, a};
  }
  if (a_grid.empty()) best.value = 0.0;
  return best;
}

}  // namespace reference
}  // namespace weisslab::kernels
