#include "weisslab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "weisslab/kernels.hpp"

namespace weisslab {

namespace {

// Atoms this close to |z| = 1 are boundary atoms of a disk measure.
constexpr double kCircleTolerance = 1e-14;

double normalize_angle(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  if (t >= 2.0 * kPi) t = 0.0;
  return t;
}

}  // namespace

std::string to_string(Ambient ambient) {
  return ambient == Ambient::half_plane ? "halfplane" : "disk";
}

Ambient parse_ambient(const std::string& text) {
  if (text == "halfplane") return Ambient::half_plane;
  if (text == "disk") return Ambient::disk;
  throw DomainError("unknown ambient '" + text + "' (expected halfplane or disk)");
}

// ---------------------------------------------------------------------------
// AtomicMeasure

AtomicMeasure::AtomicMeasure(Ambient ambient, std::vector<Atom> atoms)
    : ambient_(ambient), atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.weight) || a.weight < 0.0) {
      throw DomainError("AtomicMeasure: weights must be finite and nonnegative");
    }
    if (!std::isfinite(a.z.real()) || !std::isfinite(a.z.imag())) {
      throw DomainError("AtomicMeasure: atom locations must be finite");
    }
    if (ambient_ == Ambient::half_plane && a.z.imag() < 0.0) {
      throw DomainError("AtomicMeasure: half-plane atoms need Im z >= 0");
    }
    if (ambient_ == Ambient::disk && std::abs(a.z) > 1.0 + kCircleTolerance) {
      throw DomainError("AtomicMeasure: disk atoms need |z| <= 1");
    }
  }
}

double AtomicMeasure::total_mass() const noexcept {
  double sum = 0.0;
  for (const auto& a : atoms_) sum += a.weight;
  return sum;
}

bool AtomicMeasure::interior() const noexcept {
  return std::all_of(atoms_.begin(), atoms_.end(), [this](const Atom& a) {
    return ambient_ == Ambient::half_plane ? a.z.imag() > 0.0
                                           : std::abs(a.z) < 1.0 - kCircleTolerance;
  });
}

AtomicMeasure AtomicMeasure::scaled(double factor) const {
  if (!(factor >= 0.0)) throw DomainError("AtomicMeasure::scaled: factor must be >= 0");
  auto copy = atoms_;
  for (auto& a : copy) a.weight *= factor;
  return AtomicMeasure(ambient_, std::move(copy));
}

AtomicMeasure AtomicMeasure::rotated(double theta) const {
  if (ambient_ != Ambient::disk) throw DomainError("AtomicMeasure::rotated: disk measures only");
  const Complex phase = std::polar(1.0, theta);
  auto copy = atoms_;
  for (auto& a : copy) a.z *= phase;
  return AtomicMeasure(ambient_, std::move(copy));
}

AtomicMeasure AtomicMeasure::merged(const AtomicMeasure& other) const {
  if (other.ambient_ != ambient_ && !other.empty() && !empty()) {
    throw DomainError("AtomicMeasure::merged: ambient mismatch");
  }
  auto copy = atoms_;
  copy.insert(copy.end(), other.atoms_.begin(), other.atoms_.end());
  return AtomicMeasure(empty() ? other.ambient_ : ambient_, std::move(copy));
}

std::vector<Complex> AtomicMeasure::locations() const {
  std::vector<Complex> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(a.z);
  return out;
}

std::vector<double> AtomicMeasure::weights() const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(a.weight);
  return out;
}

// ---------------------------------------------------------------------------
// Intervals, arcs, open sets

Interval::Interval(double l, double r) : left(l), right(r) {
  if (!(l < r) || !std::isfinite(l) || !std::isfinite(r)) {
    throw DomainError("Interval: need finite left < right");
  }
}

Arc::Arc(double c, double w) : center(c), width(w) {
  if (!(w > 0.0) || w > 2.0 * kPi * (1.0 + 1e-15) || !std::isfinite(c)) {
    throw DomainError("Arc: width must lie in (0, 2π]");
  }
}

bool Arc::contains_angle(double theta) const noexcept {
  if (width >= 2.0 * kPi) return true;
  return normalize_angle(theta - (center - 0.5 * width)) < width;
}

OpenSetUnion::OpenSetUnion(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& a, const Interval& b) { return a.left < b.left; });
  for (std::size_t i = 1; i < intervals_.size(); ++i) {
    if (intervals_[i].left < intervals_[i - 1].right) {
      throw DomainError("OpenSetUnion: intervals must be pairwise disjoint");
    }
  }
}

bool OpenSetUnion::contains(double x) const noexcept {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](double v, const Interval& i) { return v < i.left; });
  if (it == intervals_.begin()) return false;
  return std::prev(it)->contains(x);
}

double OpenSetUnion::total_length() const noexcept {
  double sum = 0.0;
  for (const auto& i : intervals_) sum += i.length();
  return sum;
}

double OpenSetUnion::min_length() const noexcept {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& i : intervals_) m = std::min(m, i.length());
  return intervals_.empty() ? 0.0 : m;
}

// ---------------------------------------------------------------------------
// Regions

bool in_halfplane_box(const Interval& interval, Complex z) noexcept {
  const double y = z.imag();
  return interval.contains(z.real()) && y >= 0.0 && y < 0.5 * interval.length();
}

bool in_disk_box(const Arc& arc, Complex z) noexcept {
  const double r = std::abs(z);
  if (r > 1.0 + kCircleTolerance) return false;
  if (r < 1.0 - arc.width / (2.0 * kPi)) return false;
  if (arc.width >= 2.0 * kPi) return true;
  if (r == 0.0) return false;
  return arc.contains_angle(std::arg(z));
}

Region Region::halfplane_box(const Interval& interval) {
  Region r;
  r.ambient_ = Ambient::half_plane;
  r.intervals_.push_back(interval);
  return r;
}

Region Region::disk_box(const Arc& arc) {
  Region r;
  r.ambient_ = Ambient::disk;
  r.arcs_.push_back(arc);
  return r;
}

Region Region::halfplane_union(const OpenSetUnion& open_set) {
  Region r;
  r.ambient_ = Ambient::half_plane;
  r.intervals_.assign(open_set.intervals().begin(), open_set.intervals().end());
  return r;
}

bool Region::contains(Complex z) const noexcept {
  for (const auto& i : intervals_) {
    if (in_halfplane_box(i, z)) return true;
  }
  for (const auto& a : arcs_) {
    if (in_disk_box(a, z)) return true;
  }
  return false;
}

Region box_halfplane(const Interval& interval) { return Region::halfplane_box(interval); }
Region box_disk(const Arc& arc) { return Region::disk_box(arc); }

double measure_of(const AtomicMeasure& measure, const Region& region) {
  if (measure.empty()) return 0.0;
  if (measure.ambient() != region.ambient()) {
    throw DomainError("measure_of: measure and region live on different ambients");
  }
  double sum = 0.0;
  for (const auto& a : measure.atoms()) {
    if (region.contains(a.z)) sum += a.weight;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Dyadic family

DyadicLayout dyadic_layout(const AtomicMeasure& measure, int depth) {
  DyadicLayout layout;
  layout.ambient = measure.ambient();
  layout.depth = depth;
  if (measure.ambient() == Ambient::disk) {
    layout.base_length = 2.0 * kPi;
    layout.origin = 0.0;
    layout.span_left = 0.0;
    layout.span_right = 2.0 * kPi;
    return layout;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double top = 0.0;
  for (const auto& a : measure.atoms()) {
    lo = std::min(lo, a.z.real());
    hi = std::max(hi, a.z.real());
    top = std::max(top, a.z.imag());
  }
  if (measure.empty()) lo = hi = 0.0;
  // Generation 0 must be long enough for its box to reach the highest atom.
  const double extent = std::max(hi - lo, 2.0 * top);
  layout.base_length = extent > 0.0 ? std::ldexp(1.0, static_cast<int>(std::floor(std::log2(extent))) + 1)
                                     : 1.0;
  layout.origin = std::floor(lo / layout.base_length) * layout.base_length;
  layout.span_left = lo;
  layout.span_right = hi;
  return layout;
}

Interval dyadic_interval(const DyadicLayout& layout, int generation, int shift, long index) {
  const double len = std::ldexp(layout.base_length, -generation);
  const double start = layout.origin + (shift != 0 ? len / 3.0 : 0.0);
  return Interval(start + static_cast<double>(index) * len,
                  start + static_cast<double>(index + 1) * len);
}

Arc dyadic_arc(const DyadicLayout& layout, int generation, int shift, long index) {
  const double width = std::ldexp(layout.base_length, -generation);
  const double start = layout.origin + (shift != 0 ? width / 3.0 : 0.0);
  return Arc(start + (static_cast<double>(index) + 0.5) * width, width);
}

std::pair<long, long> dyadic_index_range(const DyadicLayout& layout, int generation, int shift) {
  const double len = std::ldexp(layout.base_length, -generation);
  if (layout.ambient == Ambient::disk) {
    return {0L, (1L << generation) - 1};
  }
  const double start = layout.origin + (shift != 0 ? len / 3.0 : 0.0);
  const auto first = static_cast<long>(std::floor((layout.span_left - start) / len)) - 1;
  const auto last = static_cast<long>(std::floor((layout.span_right - start) / len)) + 1;
  return {first, last};
}

double one_box_constant(const AtomicMeasure& measure, double exponent, int depth) {
  if (!(exponent > 0.0)) throw DomainError("one_box_constant: exponent must be positive");
  if (depth < 0) throw DomainError("one_box_constant: depth must be >= 0");
  if (measure.empty()) return 0.0;
  return kernels::omp::box_sup(measure, exponent, dyadic_layout(measure, depth));
}

// ---------------------------------------------------------------------------
// Generators

namespace {

std::vector<double> cantor_left_endpoints(double ratio, int levels, double gauge) {
  std::vector<double> points{0.0};
  for (int level = 1; level <= levels; ++level) {
    const double offset = cantor_length(ratio, level - 1, gauge) - cantor_length(ratio, level, gauge);
    std::vector<double> next;
    next.reserve(points.size() * 2);
    for (double a : points) {
      next.push_back(a);
      next.push_back(a + offset);
    }
    points = std::move(next);
  }
  return points;
}

void check_ratio(double ratio, double gauge) {
  if (!(ratio > 0.0 && ratio < 0.5)) throw DomainError("cantor: ratio must lie in (0, 1/2)");
  if (!(gauge >= 0.0) || !std::isfinite(gauge)) throw DomainError("cantor: gauge must be >= 0");
}

}  // namespace

double cantor_length(double ratio, int level, double gauge) {
  return std::pow(ratio, level) * std::pow(static_cast<double>(level) + 1.0, -gauge);
}

AtomicMeasure cantor_measure(double ratio, int levels, Ambient ambient, double gauge) {
  check_ratio(ratio, gauge);
  if (levels < 1 || levels > 26) throw DomainError("cantor_measure: levels must lie in [1, 26]");
  const auto points = cantor_left_endpoints(ratio, levels, gauge);
  const double w = std::ldexp(1.0, -levels);
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (double x : points) {
    if (ambient == Ambient::half_plane) {
      atoms.push_back({Complex(x, 0.0), w});
    } else {
      atoms.push_back({std::polar(1.0, 2.0 * kPi * x), w});
    }
  }
  return AtomicMeasure(ambient, std::move(atoms));
}

OpenSetUnion cantor_cover(double ratio, int level, double margin, double gauge) {
  check_ratio(ratio, gauge);
  if (level < 0 || level > 26) throw DomainError("cantor_cover: level must lie in [0, 26]");
  if (!(margin > 0.0) || !(margin < (1.0 - 2.0 * ratio) / (2.0 * ratio))) {
    throw DomainError("cantor_cover: margin would merge neighbouring intervals");
  }
  const double len = cantor_length(ratio, level, gauge);
  std::vector<Interval> intervals;
  for (double a : cantor_left_endpoints(ratio, level, gauge)) {
    intervals.emplace_back(a - margin * len, a + (1.0 + margin) * len);
  }
  return OpenSetUnion(std::move(intervals));
}

std::vector<double> default_stack_heights(double ratio, int terms, double margin, double gauge) {
  check_ratio(ratio, gauge);
  std::vector<double> heights;
  for (int m = 1; m <= terms; ++m) {
    heights.push_back(cantor_length(ratio, m, gauge) * (1.0 + 2.0 * margin) / 3.0);
  }
  return heights;
}

AtomicMeasure stacked_measure(const StackParams& params) {
  if (params.terms < 1) throw DomainError("stacked_measure: need at least one term");
  if (static_cast<int>(params.heights.size()) < params.terms) {
    throw DomainError("stacked_measure: fewer heights than terms");
  }
  for (int m = 0; m < params.terms; ++m) {
    if (!(params.heights[m] > 0.0)) throw DomainError("stacked_measure: heights must be positive");
    if (m > 0 && !(params.heights[m] < params.heights[m - 1])) {
      throw DomainError("stacked_measure: heights must be strictly decreasing");
    }
  }
  const bool disk = params.base.ambient() == Ambient::disk;
  if (disk && !(params.heights[0] < 1.0)) throw DomainError("stacked_measure: disk heights must be < 1");
  std::vector<Atom> atoms;
  atoms.reserve(params.base.size() * static_cast<std::size_t>(params.terms));
  for (int m = 1; m <= params.terms; ++m) {
    const double gamma = params.heights[m - 1];
    const double scale = 1.0 / (static_cast<double>(m) * static_cast<double>(m));
    for (const auto& a : params.base.atoms()) {
      const Complex z = disk ? std::polar(1.0 - gamma, std::arg(a.z)) : Complex(a.z.real(), gamma);
      atoms.push_back({z, a.weight * scale});
    }
  }
  return AtomicMeasure(params.base.ambient(), std::move(atoms));
}

// ---------------------------------------------------------------------------
// Text format

void write_measure(std::ostream& out, const AtomicMeasure& measure) {
  out << "ambient=" << to_string(measure.ambient()) << '\n';
  for (const auto& a : measure.atoms()) {
    out << format_shortest(a.z.real()) << ' ' << format_shortest(a.z.imag()) << ' '
        << format_shortest(a.weight) << '\n';
  }
}

AtomicMeasure read_measure(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("read_measure: missing header");
  const std::string prefix = "ambient=";
  if (line.rfind(prefix, 0) != 0) throw DomainError("read_measure: header must be ambient=<...>");
  const Ambient ambient = parse_ambient(line.substr(prefix.size()));
  std::vector<Atom> atoms;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    double re = 0.0;
    double im = 0.0;
    double w = 0.0;
    if (!(fields >> re >> im >> w)) {
      throw DomainError("read_measure: malformed atom on line " + std::to_string(lineno));
    }
    atoms.push_back({Complex(re, im), w});
  }
  return AtomicMeasure(ambient, std::move(atoms));
}

}  // namespace weisslab
