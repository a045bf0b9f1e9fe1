#include "weisslab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <fstream>
#include <istream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "weisslab/capacity.hpp"
#include "weisslab/disk.hpp"
#include "weisslab/halfplane.hpp"
#include "weisslab/measure.hpp"
#include "weisslab/shift.hpp"

namespace weisslab {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Typed access to the parameter map. Every lookup records its key and the
// value in effect, so unknown keys can be rejected and the echo is complete.
class Params {
public:
  explicit Params(const ExperimentConfig& config) : raw_(config.params) {}

  double real(const std::string& key, double fallback, double lo, double hi, bool open = true) {
    double v = fallback;
    if (auto it = raw_.find(key); it != raw_.end()) v = parse_real(key, it->second);
    const bool inside = open ? (v > lo && v < hi) : (v >= lo && v <= hi);
    if (!inside) {
      throw ConfigError(key + " = " + format_shortest(v) + " outside " + (open ? "(" : "[") +
                        format_shortest(lo) + ", " + format_shortest(hi) + (open ? ")" : "]"));
    }
    echo_[key] = format_shortest(v);
    return v;
  }

  long long integer(const std::string& key, long long fallback, long long lo, long long hi) {
    long long v = fallback;
    if (auto it = raw_.find(key); it != raw_.end()) v = parse_integer(key, it->second);
    if (v < lo || v > hi) {
      throw ConfigError(key + " = " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    }
    echo_[key] = std::to_string(v);
    return v;
  }

  std::vector<long long> integers(const std::string& key, const std::string& fallback, long long lo, long long hi) {
    const auto it = raw_.find(key);
    const std::string text = it == raw_.end() ? fallback : it->second;
    std::vector<long long> out;
    for (const auto& item : split(text)) {
      const long long v = parse_integer(key, item);
      if (v < lo || v > hi) {
        throw ConfigError(key + " entry " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
      }
      out.push_back(v);
    }
    if (out.empty()) throw ConfigError(key + " must not be empty");
    echo_[key] = text;
    return out;
  }

  std::vector<double> reals(const std::string& key, const std::string& fallback, double lo, double hi) {
    const auto it = raw_.find(key);
    const std::string text = it == raw_.end() ? fallback : it->second;
    std::vector<double> out;
    for (const auto& item : split(text)) {
      const double v = parse_real(key, item);
      if (!(v > lo && v < hi)) {
        throw ConfigError(key + " entry " + format_shortest(v) + " outside (" + format_shortest(lo) + ", " +
                          format_shortest(hi) + ")");
      }
      out.push_back(v);
    }
    if (out.empty()) throw ConfigError(key + " must not be empty");
    echo_[key] = text;
    return out;
  }

  void ignore(const std::string& key) { ignored_.insert(key); }

  bool given(const std::string& key) const { return raw_.count(key) != 0; }

  // Rejects keys nobody asked for.
  std::map<std::string, std::string> finish() const {
    for (const auto& [key, value] : raw_) {
      if (!echo_.count(key) && !ignored_.count(key)) throw ConfigError("unknown parameter '" + key + "'");
    }
    return echo_;
  }

private:
  static std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

  static double parse_real(const std::string& key, const std::string& text) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &pos);
    } catch (const std::exception&) {
      throw ConfigError(key + ": '" + text + "' is not a number");
    }
    if (pos != text.size() || !std::isfinite(v)) throw ConfigError(key + ": '" + text + "' is not a finite number");
    return v;
  }

  static long long parse_integer(const std::string& key, const std::string& text) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(text, &pos);
    } catch (const std::exception&) {
      throw ConfigError(key + ": '" + text + "' is not an integer");
    }
    if (pos != text.size()) throw ConfigError(key + ": '" + text + "' is not an integer");
    return v;
  }

  std::map<std::string, std::string> raw_;
  std::map<std::string, std::string> echo_;
  std::set<std::string> ignored_;
};

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo > 0.0 ? *hi / *lo : INFINITY;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

std::string fmt(double v) { return format_shortest(v); }

// Cantor ratio whose self-similar dimension is 1 + α.
double critical_ratio(double alpha) { return std::pow(2.0, -1.0 / (1.0 + alpha)); }

// ---------------------------------------------------------------------------

struct CapacityScaling {
  std::vector<double> betas;
  std::vector<double> lengths;
  int cells = 4096;
  double tolerance = 0.15;
  SolverOptions solver;
};

CapacityScaling parse_capacity_scaling(Params& p) {
  CapacityScaling s;
  if (p.given("alpha")) {
    s.betas = {-0.5 * p.real("alpha", -0.5, -1.0, 0.0)};
    p.ignore("betas");
  } else {
    s.betas = p.reals("betas", "0.25, 0.3", 0.0, 0.5);
  }
  s.lengths = p.reals("lengths", "0.25, 0.5, 1", 0.0, 1e6);
  s.cells = static_cast<int>(p.integer("cells", 4096, 16, 1 << 22));
  s.tolerance = p.real("tolerance", 0.15, 0.0, 10.0);
  s.solver.max_iter = static_cast<int>(p.integer("solver.max_iter", 500, 1, 1000000));
  s.solver.tol = p.real("solver.tol", 1e-8, 0.0, 1.0);
  p.integer("seed", 0, 0, std::numeric_limits<long long>::max());
  return s;
}

void run_capacity_scaling(const CapacityScaling& s, ExperimentReport& report) {
  report.columns = {"beta", "length", "capacity", "normalized", "residual", "iterations"};
  for (double beta : s.betas) {
    std::vector<double> normalized;
    for (double len : s.lengths) {
      CapacityProblem problem;
      problem.beta = beta;
      problem.target = OpenSetUnion({Interval(0.0, len)});
      // The window scales with the target so every length sees the same
      // discrete problem up to the factor ℓ^{1-2β}.
      problem.grid = Grid1D(-len, 2.0 * len, s.cells);
      problem.solver = s.solver;
      const auto result = capacity_upper(problem);
      report.converged = report.converged && result.converged;
      const double norm = result.value / std::pow(len, 1.0 - 2.0 * beta);
      normalized.push_back(norm);
      report.rows.push_back({beta, len, result.value, norm, result.residual,
                             static_cast<long long>(result.iterations)});
    }
    if (spread(normalized) > 1.0 + s.tolerance) {
      report.failures.push_back("capacity/length^(1-2beta) varies by more than " + fmt(s.tolerance) +
                                " at beta = " + fmt(beta));
    }
  }
}

// ---------------------------------------------------------------------------

struct OneBox {
  double alpha = -0.5;
  double ratio = 0.25;
  double gauge = 0.0;
  std::vector<long long> levels;
  double max_spread = 2.0;
};

OneBox parse_onebox(Params& p) {
  OneBox s;
  s.alpha = p.real("alpha", -0.5, -1.0, 0.0);
  s.ratio = p.real("ratio", critical_ratio(s.alpha), 0.0, 0.5);
  s.gauge = p.real("gauge", 0.0, 0.0, 16.0, false);
  s.levels = p.integers("levels", "6, 8, 10", 1, 16);
  s.max_spread = p.real("max_spread", 2.0, 1.0, 1e6);
  p.integer("seed", 0, 0, std::numeric_limits<long long>::max());
  return s;
}

int dyadic_depth_for(double length) { return static_cast<int>(std::ceil(std::log2(1.0 / length))) + 2; }

void run_onebox(const OneBox& s, ExperimentReport& report) {
  report.columns = {"level", "box_constant"};
  std::vector<double> values;
  for (long long level : s.levels) {
    const auto mu = cantor_measure(s.ratio, static_cast<int>(level), Ambient::half_plane, s.gauge);
    const int depth = dyadic_depth_for(cantor_length(s.ratio, static_cast<int>(level), s.gauge));
    const double box = one_box_constant(mu, 1.0 + s.alpha, depth);
    values.push_back(box);
    report.rows.push_back({level, box});
  }
  if (spread(values) >= s.max_spread) {
    report.failures.push_back("one-box constant varies by a factor >= " + fmt(s.max_spread) + " across levels");
  }
}

// ---------------------------------------------------------------------------

struct HalfPlaneCounterexample {
  double alpha = -0.5;
  double ratio = 0.25;
  double gauge = 2.0;
  double margin = 0.125;
  int base_levels = 10;
  int terms = 30;
  std::vector<long long> covers;
  int cells_per_interval = 8;
  double grid_left = -0.5;
  double grid_right = 1.5;
  int re_points_per_decade = 16;
  int im_points = 81;
  double min_growth = 3.0;
  double max_spread = 2.0;
  SolverOptions solver;
};

HalfPlaneCounterexample parse_halfplane(Params& p) {
  HalfPlaneCounterexample s;
  s.alpha = p.real("alpha", -0.5, -1.0, 0.0);
  s.ratio = p.real("ratio", critical_ratio(s.alpha), 0.0, 0.5);
  s.gauge = p.real("gauge", 1.0 / (1.0 + s.alpha), 0.0, 16.0, false);
  s.margin = p.real("margin", 0.125, 0.0, (1.0 - 2.0 * s.ratio) / (2.0 * s.ratio));
  s.base_levels = static_cast<int>(p.integer("base_levels", 10, 1, 16));
  s.terms = static_cast<int>(p.integer("terms", 30, 1, 200));
  s.covers = p.integers("covers", "2, 3, 4, 5, 6", 1, 12);
  s.cells_per_interval = static_cast<int>(p.integer("cells_per_interval", 8, 2, 1024));
  s.grid_left = p.real("grid.left", -0.5, -1e3, 0.0, false);
  s.grid_right = p.real("grid.right", 1.5, 1.0, 1e3, false);
  s.re_points_per_decade = static_cast<int>(p.integer("re_points_per_decade", 16, 1, 1000));
  s.im_points = static_cast<int>(p.integer("im_points", 81, 1, 100000));
  s.min_growth = p.real("min_growth", 3.0, 0.0, 1e6);
  s.max_spread = p.real("max_spread", 2.0, 1.0, 1e6);
  s.solver.max_iter = static_cast<int>(p.integer("solver.max_iter", 500, 1, 1000000));
  s.solver.tol = p.real("solver.tol", 1e-8, 0.0, 1.0);
  for (std::size_t i = 1; i < s.covers.size(); ++i) {
    if (s.covers[i] <= s.covers[i - 1]) throw ConfigError("covers must be increasing");
  }
  if (s.covers.back() > s.terms) throw ConfigError("covers must not exceed terms");
  p.integer("seed", 0, 0, std::numeric_limits<long long>::max());
  return s;
}

void run_halfplane(const HalfPlaneCounterexample& s, ExperimentReport& report) {
  report.columns = {"n", "box_constant", "resolvent_sup", "capacity", "mass_ratio", "embedding_ratio"};
  const auto base = cantor_measure(s.ratio, s.base_levels, Ambient::half_plane, s.gauge);
  StackParams stack{base, default_stack_heights(s.ratio, s.terms, s.margin, s.gauge), s.terms};
  const auto mu = stacked_measure(stack);
  const HalfPlaneSystem sys(mu);
  const double beta = -0.5 * s.alpha;
  std::vector<double> box, res, ratio;
  for (long long nn : s.covers) {
    const int n = static_cast<int>(nn);
    const auto cover = cantor_cover(s.ratio, n, s.margin, s.gauge);
    const double mass = measure_of(mu, Region::halfplane_union(cover));

    CapacityProblem problem;
    problem.beta = beta;
    problem.target = cover;
    const double h = cover.min_length() / s.cells_per_interval;
    problem.grid = Grid1D(s.grid_left, s.grid_right,
                          static_cast<int>(std::ceil((s.grid_right - s.grid_left) / h)));
    problem.solver = s.solver;
    const auto cap = capacity_upper(problem);
    report.converged = report.converged && cap.converged;

    const auto witness = analytic_witness(cap.density, problem.grid, s.alpha);
    const double embedding = witness_embedding_ratio(sys, witness);

    // Scan resolution follows the cover: boxes down to the cover scale and
    // Re λ down to a tenth of the lowest stack height inside R(O^(n)).
    const double box_value = one_box_constant(mu, 1.0 + s.alpha, dyadic_depth_for(cover.min_length()));
    const double re_lo = stack.heights[n - 1] / 10.0;
    const double re_hi = 1e2;
    const auto decades = static_cast<std::size_t>(std::ceil(std::log10(re_hi / re_lo)));
    std::vector<double> centres;
    for (const auto& iv : cover.intervals()) centres.push_back(0.5 * (iv.left + iv.right));
    const auto grid = make_lambda_grid(re_lo, re_hi, decades * s.re_points_per_decade + 1,
                                       static_cast<std::size_t>(s.im_points), centres);
    const double res_value = resolvent_sup(sys, s.alpha, grid).value;

    box.push_back(box_value);
    res.push_back(res_value);
    ratio.push_back(mass / cap.value);
    report.rows.push_back({nn, box_value, res_value, cap.value, mass / cap.value, embedding});
  }
  if (!strictly_increasing(ratio)) report.failures.push_back("mass_ratio is not strictly increasing in n");
  if (ratio.back() < s.min_growth * ratio.front()) {
    report.failures.push_back("mass_ratio grows by less than a factor " + fmt(s.min_growth));
  }
  if (spread(box) >= s.max_spread) report.failures.push_back("box_constant varies by a factor >= " + fmt(s.max_spread));
  if (spread(res) >= s.max_spread) report.failures.push_back("resolvent_sup varies by a factor >= " + fmt(s.max_spread));
}

// ---------------------------------------------------------------------------

struct DiskCounterexample {
  double alpha = -0.5;
  double ratio = 0.25;
  double gauge = 2.0;
  double margin = 0.125;
  std::vector<long long> levels;
  int truncation = 512;
  int omega_angles = 4096;
  int random_polys = 16;
  int poly_degree = 64;
  std::uint64_t seed = 0;
  double max_spread = 2.0;
};

DiskCounterexample parse_disk(Params& p) {
  DiskCounterexample s;
  s.alpha = p.real("alpha", -0.5, -1.0, 0.0);
  s.ratio = p.real("ratio", critical_ratio(s.alpha), 0.0, 0.5);
  s.gauge = p.real("gauge", 1.0 / (1.0 + s.alpha), 0.0, 16.0, false);
  s.margin = p.real("margin", 0.125, 0.0, (1.0 - 2.0 * s.ratio) / (2.0 * s.ratio));
  s.levels = p.integers("levels", "4, 6, 8", 1, 10);
  s.truncation = static_cast<int>(p.integer("truncation", 512, 1, 1 << 16));
  s.omega_angles = static_cast<int>(p.integer("omega_angles", 4096, 1, 1 << 20));
  s.random_polys = static_cast<int>(p.integer("random_polys", 16, 0, 100000));
  s.poly_degree = static_cast<int>(p.integer("poly_degree", 64, 0, 1 << 16));
  s.seed = static_cast<std::uint64_t>(p.integer("seed", 0, 0, std::numeric_limits<long long>::max()));
  s.max_spread = p.real("max_spread", 2.0, 1.0, 1e6);
  for (std::size_t i = 1; i < s.levels.size(); ++i) {
    if (s.levels[i] <= s.levels[i - 1]) throw ConfigError("levels must be increasing");
  }
  return s;
}

// Cell-adapted test functions: for every Cantor cell of every level j ≤ L,
// the kernel combination over the atoms above the cell, once with every
// stack term and once with the terms m ≥ j only (the atoms in its box).
double adapted_family_sup(const DiskSystem& sys, const Eigen::MatrixXcd& gram, double ratio, double gauge,
                          double margin, int level, std::size_t base_size) {
  const auto n = static_cast<Eigen::Index>(sys.size());
  std::vector<double> x(sys.size());
  for (std::size_t a = 0; a < sys.size(); ++a) {
    double th = std::arg(sys.points()[a]);
    if (th < 0.0) th += 2.0 * kPi;
    x[a] = th / (2.0 * kPi);
  }
  double best = 0.0;
  for (int j = 0; j <= level; ++j) {
    const auto cover = cantor_cover(ratio, j, margin, gauge);
    for (const auto& cell : cover.intervals()) {
      for (int restrict_terms = 0; restrict_terms < 2; ++restrict_terms) {
        Eigen::VectorXcd d = Eigen::VectorXcd::Zero(n);
        bool any = false;
        for (std::size_t a = 0; a < sys.size(); ++a) {
          const int m = static_cast<int>(a / base_size) + 1;
          if (cell.contains(x[a]) && (restrict_terms == 0 || m >= j)) {
            d[static_cast<Eigen::Index>(a)] = 1.0;
            any = true;
          }
        }
        if (any) best = std::max(best, kernel_embedding_ratio(gram, d));
      }
    }
  }
  return best;
}

void run_disk(const DiskCounterexample& s, ExperimentReport& report) {
  report.columns = {"level", "box_constant", "resolvent_sup", "admissibility_constant_N", "embedding_sup"};
  std::mt19937_64 rng(s.seed);
  std::normal_distribution<double> normal;
  std::vector<double> res, emb;
  for (long long ll : s.levels) {
    const int level = static_cast<int>(ll);
    const auto base = cantor_measure(s.ratio, level, Ambient::disk, s.gauge);
    const auto heights = default_stack_heights(s.ratio, level, s.margin, s.gauge);
    const auto mu = stacked_measure({base, heights, level});
    const DiskSystem sys(mu);

    const int depth = dyadic_depth_for(heights.back());
    const double box = one_box_constant(mu, 1.0 + s.alpha, depth);
    const double resolvent = disk_resolvent_sup(sys, s.alpha, make_omega_grid(depth, s.omega_angles)).value;
    const auto truncated = discrete_admissibility_constant(sys, s.alpha, s.truncation);

    const auto gram = limit_gram(sys, s.alpha);
    double sup = adapted_family_sup(sys, gram, s.ratio, s.gauge, s.margin, level, base.size());
    for (int k = 0; k < s.random_polys; ++k) {
      std::vector<Complex> c(static_cast<std::size_t>(s.poly_degree) + 1);
      for (auto& v : c) {
        const double re = normal(rng);
        const double im = normal(rng);
        v = Complex(re, im);
      }
      sup = std::max(sup, disk_embedding_ratio(sys, TaylorCoefficients(std::move(c)), s.alpha));
    }
    res.push_back(resolvent);
    emb.push_back(sup);
    report.rows.push_back({ll, box, resolvent, truncated.value, sup});
    report.parameters["truncation_change.level" + std::to_string(level)] = fmt(truncated.relative_change);
  }
  if (!strictly_increasing(emb)) report.failures.push_back("embedding_sup is not strictly increasing in level");
  if (spread(res) >= s.max_spread) report.failures.push_back("resolvent_sup varies by a factor >= " + fmt(s.max_spread));
}

// ---------------------------------------------------------------------------

struct ShiftCounterexample {
  double alpha = 0.5;
  std::vector<int> blocks;
  ShiftExperimentOptions options;
  double min_growth = 1.5;
  double stable = 0.10;
  double stable_beta = 0.15;
};

ShiftCounterexample parse_shift(Params& p) {
  ShiftCounterexample s;
  s.alpha = p.real("alpha", 0.5, 0.0, 1.0);
  for (long long k : p.integers("blocks", "4, 8, 16", 1, 28)) s.blocks.push_back(static_cast<int>(k));
  for (std::size_t i = 1; i < s.blocks.size(); ++i) {
    if (s.blocks[i] <= s.blocks[i - 1]) throw ConfigError("blocks must be increasing");
  }
  auto& o = s.options;
  o.truncation = static_cast<int>(p.integer("truncation", 8192, 1, 1 << 22));
  o.omega_depth = static_cast<int>(p.integer("omega_depth", 10, 0, 40));
  o.omega_angles = static_cast<int>(p.integer("omega_angles", 64, 1, 1 << 20));
  o.bloch_levels = static_cast<int>(p.integer("bloch_levels", 20, 1, 40));
  o.bloch_angles = static_cast<int>(p.integer("bloch_angles", 64, 1, 1 << 20));
  o.power_iterations = static_cast<int>(p.integer("power_iterations", 300, 50, 1000000));
  o.seed = static_cast<std::uint64_t>(p.integer("seed", 0, 0, std::numeric_limits<long long>::max()));
  s.min_growth = p.real("min_growth", 1.5, 0.0, 1e6);
  s.stable = p.real("stable", 0.10, 0.0, 1e6);
  s.stable_beta = p.real("stable_beta", 0.15, 0.0, 1e6);
  return s;
}

double relative_change(double from, double to) { return std::abs(to - from) / std::abs(from); }

void run_shift(const ShiftCounterexample& s, ExperimentReport& report) {
  report.columns = {"K", "bloch", "resolvent_sup", "hankel_alpha", "hankel_beta_half", "hankel_beta_zero"};
  const auto rows = shift_experiment(s.alpha, s.blocks, s.options);
  std::vector<double> hankel;
  for (const auto& r : rows) {
    report.rows.push_back({static_cast<long long>(r.blocks), r.bloch, r.resolvent_sup, r.hankel_alpha,
                           r.hankel_beta_half, r.hankel_beta_zero});
    hankel.push_back(r.hankel_alpha);
  }
  if (!strictly_increasing(hankel)) report.failures.push_back("hankel_alpha is not strictly increasing in K");
  if (hankel.back() < s.min_growth * hankel.front()) {
    report.failures.push_back("hankel_alpha grows by less than a factor " + fmt(s.min_growth));
  }
  if (rows.size() >= 2) {
    const auto& a = rows[rows.size() - 2];
    const auto& b = rows.back();
    if (relative_change(a.bloch, b.bloch) >= s.stable) report.failures.push_back("bloch changes by >= " + fmt(s.stable));
    if (relative_change(a.resolvent_sup, b.resolvent_sup) >= s.stable) {
      report.failures.push_back("resolvent_sup changes by >= " + fmt(s.stable));
    }
    if (relative_change(a.hankel_beta_half, b.hankel_beta_half) >= s.stable_beta) {
      report.failures.push_back("hankel_beta_half changes by >= " + fmt(s.stable_beta));
    }
  }
}

// ---------------------------------------------------------------------------

template <class Spec>
using Runner = void (*)(const Spec&, ExperimentReport&);

struct Dispatch {
  std::function<std::map<std::string, std::string>(Params&)> check;
  std::function<void(Params&, ExperimentReport&)> run;
};

template <class Spec>
Dispatch make_dispatch(Spec (*parse)(Params&), Runner<Spec> runner) {
  return {[parse](Params& p) {
            parse(p);
            return p.finish();
          },
          [parse, runner](Params& p, ExperimentReport& report) {
            const Spec spec = parse(p);
            report.parameters = p.finish();
            runner(spec, report);
          }};
}

const std::map<std::string, Dispatch>& registry() {
  static const std::map<std::string, Dispatch> table = {
      {"capacity-scaling", make_dispatch(&parse_capacity_scaling, &run_capacity_scaling)},
      {"onebox", make_dispatch(&parse_onebox, &run_onebox)},
      {"halfplane-counterexample", make_dispatch(&parse_halfplane, &run_halfplane)},
      {"disk-counterexample", make_dispatch(&parse_disk, &run_disk)},
      {"shift-counterexample", make_dispatch(&parse_shift, &run_shift)},
  };
  return table;
}

const Dispatch& lookup(const std::string& name) {
  const auto& table = registry();
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown experiment '" + name + "'");
  return it->second;
}

Params params_for(const ExperimentConfig& config) {
  Params p(config);
  p.ignore("out");
  return p;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"capacity-scaling",       "onebox",
                                                 "halfplane-counterexample", "disk-counterexample",
                                                 "shift-counterexample",   "verify"};
  return names;
}

ExitCode ExperimentReport::status() const noexcept {
  if (!converged) return ExitCode::not_converged;
  return failures.empty() ? ExitCode::pass : ExitCode::assertion_failed;
}

void validate(const ExperimentConfig& config) {
  Params p = params_for(config);
  lookup(config.experiment).check(p);
}

ExperimentReport run(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.experiment = config.experiment;
  Params p = params_for(config);
  lookup(config.experiment).run(p, report);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

std::string render(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_17g(*d);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  const auto& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string emit_csv(const ExperimentReport& report) {
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += report.columns[i];
  }
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += render(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string emit_json(const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["experiment"] = report.experiment;
  j["parameters"] = report.parameters;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) {
      std::visit([&](const auto& v) { obj[report.columns[i]] = v; }, row[i]);
    }
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  j["failures"] = report.failures;
  j["converged"] = report.converged;
  j["exit_code"] = static_cast<int>(report.status());
  j["wall_seconds"] = report.wall_seconds;
  return j.dump(2) + "\n";
}

void write_report(const ExperimentReport& report, const std::string& path) {
  const auto write = [](const std::filesystem::path& target, const std::string& text) {
    std::ofstream f(target, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + target.string() + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("write to '" + target.string() + "' failed");
  };
  const std::filesystem::path csv(path);
  auto sidecar = csv;
  sidecar.replace_extension(".json");
  if (sidecar == csv) sidecar += ".json";
  write(csv, emit_csv(report));
  write(sidecar, emit_json(report));
}

}  // namespace weisslab
