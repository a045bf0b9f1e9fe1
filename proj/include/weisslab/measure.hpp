#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weisslab/numerics.hpp"

namespace weisslab {

enum class Ambient { half_plane, disk };

std::string to_string(Ambient ambient);
Ambient parse_ambient(const std::string& text);

struct Atom {
  Complex z;
  double weight = 0.0;
};

/// Finitely supported positive measure on the closed upper half-plane or the
/// closed disk.
///
/// Atoms on the boundary (Im z = 0, resp. |z| = 1) are admitted so that base
/// measures ν on ℝ or 𝕋 can be represented; boxes treat them as lying at
/// height 0+ (resp. radius 1-). Operator systems reject boundary atoms.
class AtomicMeasure {
public:
  AtomicMeasure() = default;
  AtomicMeasure(Ambient ambient, std::vector<Atom> atoms);

  Ambient ambient() const noexcept { return ambient_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }

  double total_mass() const noexcept;
  /// True when no atom sits on the boundary of the ambient domain.
  bool interior() const noexcept;

  AtomicMeasure scaled(double factor) const;
  /// Disk only: rotates every atom by e^{iθ}.
  AtomicMeasure rotated(double theta) const;
  /// Disjoint union (atoms concatenated in order).
  AtomicMeasure merged(const AtomicMeasure& other) const;

  std::vector<Complex> locations() const;
  std::vector<double> weights() const;

private:
  Ambient ambient_ = Ambient::half_plane;
  std::vector<Atom> atoms_;
};

struct Interval {
  double left = 0.0;
  double right = 1.0;

  Interval() = default;
  Interval(double l, double r);
  double length() const noexcept { return right - left; }
  bool contains(double x) const noexcept { return x > left && x < right; }
};

/// Arc of 𝕋 given by a centre angle and an angular width in (0, 2π].
/// Membership is half-open: angles in [centre - width/2, centre + width/2).
struct Arc {
  double center = 0.0;
  double width = 2.0 * kPi;

  Arc() = default;
  Arc(double c, double w);
  double length() const noexcept { return width; }
  bool contains_angle(double theta) const noexcept;
};

/// Finite union of pairwise-disjoint open intervals.
class OpenSetUnion {
public:
  OpenSetUnion() = default;
  explicit OpenSetUnion(std::vector<Interval> intervals);

  std::span<const Interval> intervals() const noexcept { return intervals_; }
  bool empty() const noexcept { return intervals_.empty(); }
  bool contains(double x) const noexcept;
  double total_length() const noexcept;
  double min_length() const noexcept;

private:
  std::vector<Interval> intervals_;  // sorted by left endpoint
};

/// A Carleson box R(I), a disk box S(I), or a union of half-plane boxes R(O).
class Region {
public:
  static Region halfplane_box(const Interval& interval);
  static Region disk_box(const Arc& arc);
  static Region halfplane_union(const OpenSetUnion& open_set);

  Ambient ambient() const noexcept { return ambient_; }
  bool contains(Complex z) const noexcept;

private:
  Region() = default;
  Ambient ambient_ = Ambient::half_plane;
  std::vector<Interval> intervals_;
  std::vector<Arc> arcs_;
};

Region box_halfplane(const Interval& interval);
Region box_disk(const Arc& arc);

/// Membership in R(I): x ∈ I and 0 ≤ y < |I|/2 (y = 0 read as height 0+).
bool in_halfplane_box(const Interval& interval, Complex z) noexcept;
/// Membership in S(I): 1 - |I|/2π ≤ |z| ≤ 1 and arg z ∈ I (|z| = 1 read as 1-).
bool in_disk_box(const Arc& arc, Complex z) noexcept;

/// μ(R); throws DomainError when the ambients differ.
double measure_of(const AtomicMeasure& measure, const Region& region);

/// Placement of the dyadic family used by one_box_constant.
struct DyadicLayout {
  Ambient ambient = Ambient::half_plane;
  double base_length = 1.0;  // generation-0 length (2π for the disk)
  double origin = 0.0;       // left edge of the unshifted generation-0 grid
  double span_left = 0.0;    // support extent along the boundary
  double span_right = 0.0;
  int depth = 0;
};

DyadicLayout dyadic_layout(const AtomicMeasure& measure, int depth);

/// Box `index` of generation `generation` in the unshifted (shift = 0) or
/// third-shifted (shift = 1) family.
Interval dyadic_interval(const DyadicLayout& layout, int generation, int shift, long index);
Arc dyadic_arc(const DyadicLayout& layout, int generation, int shift, long index);
/// Inclusive index range of the boxes that can meet the support.
std::pair<long, long> dyadic_index_range(const DyadicLayout& layout, int generation, int shift);

/// Lower estimate of sup_I μ(box(I)) / |I|^exponent over dyadic boxes of
/// generations 0..depth, on the dyadic grid and on a copy shifted by a third
/// of the box length. Nondecreasing in depth.
double one_box_constant(const AtomicMeasure& measure, double exponent, int depth);

/// Length of a level-k interval of the generalised Cantor construction:
/// ratio^k·(k+1)^{-gauge}. gauge = 0 is the self-similar set of dimension
/// d = log 2/log(1/ratio); gauge > 0 keeps d but thins the set by a
/// logarithmic factor (gauge = 1/d makes the critical capacity of the level-n
/// cover decay like 1/n²).
double cantor_length(double ratio, int level, double gauge = 0.0);

/// Generalised Cantor set on [0,1] (or on 𝕋 via θ = 2πx): the 2^levels left
/// endpoints of the level-`levels` intervals, each of mass 2^{-levels}.
AtomicMeasure cantor_measure(double ratio, int levels, Ambient ambient, double gauge = 0.0);

/// Level-n Cantor intervals as an open cover: each interval is widened by
/// `margin` times its length on both sides so that it contains its left
/// endpoint. Covers are nested in n; intervals stay disjoint while
/// margin < (1 - 2·ratio)/(2·ratio).
OpenSetUnion cantor_cover(double ratio, int level, double margin = 0.125, double gauge = 0.0);

struct StackParams {
  AtomicMeasure base;
  std::vector<double> heights;  // γ_1 > γ_2 > ... > 0
  int terms = 1;                 // M
};

/// γ_m = (1/3)·(interval length of the level-m cover), m = 1..terms. The
/// level-n cover box R(O^(n)) then holds exactly the stack terms m ≥ n.
std::vector<double> default_stack_heights(double ratio, int terms, double margin = 0.125,
                                          double gauge = 0.0);

/// Σ_{m=1}^{M} m^{-2} (ν × δ_{γ_m}). Half-plane: (x, w) -> (x + iγ_m, w/m²).
/// Disk: e^{iθ} -> (1 - γ_m)e^{iθ}.
AtomicMeasure stacked_measure(const StackParams& params);

/// Text format: header `ambient=<halfplane|disk>`, then one `re im weight`
/// line per atom, shortest round-trip decimals.
void write_measure(std::ostream& out, const AtomicMeasure& measure);
AtomicMeasure read_measure(std::istream& in);

}  // namespace weisslab
