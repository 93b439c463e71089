#pragma once

// Discrete, exactly checkable versions of the lower-bound machinery: the
// reflection-chain inequality on one-dimensional section pairs, the
// special-cylinder density checker, and the special-cube mass predicate with
// its empirical energy floor.

#include <string>
#include <vector>

#include "nlpt/geometry.hpp"
#include "nlpt/kernel_exact.hpp"
#include "nlpt/kernel_quad.hpp"

namespace nlpt {

enum class CellLabel : std::uint8_t { A, B, Neither };

// Two vertical sections of a cylinder S' x (-l/2, l/2) at lateral positions
// a' + w' ("plus") and a' - w' ("minus"), discretized into m cells of equal
// width.  Labels are disjoint by construction (one label per cell).
struct SectionPair {
  double extent = 0;  // l
  std::vector<CellLabel> plus;
  std::vector<CellLabel> minus;

  SectionPair(double l, std::vector<CellLabel> plus_, std::vector<CellLabel> minus_)
      : extent(l), plus(std::move(plus_)), minus(std::move(minus_)) {
    if (!(extent > 0)) throw std::invalid_argument("SectionPair: l > 0 required");
    if (plus.size() != minus.size() || plus.size() < 4 || plus.size() % 2 != 0)
      throw std::invalid_argument("SectionPair: resolution must be even and >= 4");
  }

  long resolution() const { return static_cast<long>(plus.size()); }
  double cell_width() const { return extent / resolution(); }

  double neither_measure(const std::vector<CellLabel>& s) const {
    long n = 0;
    for (CellLabel c : s) n += c == CellLabel::Neither;
    return n * cell_width();
  }
};

struct ChainCheckResult {
  double lhs = 0;       // chain overlap integral, exact cell counting
  double rhs = 0;       // recentered overlap minus 2d
  double overlap = 0;   // recentered overlap integral alone
  bool holds = false;
};

// Discrete reflection-chain inequality.  Blocks of height 2v are laid out on
// the two sections; the chain from block index i to i+2j alternates sections
// level by level (consecutive levels share their meeting point).  The check
// counts, exactly:
//   lhs  = sum over chain levels of |{bottom cell in B} ∩ {top cell in A}|
//   rhs  = |recentered(R_i ∩ B) ∩ recentered(L_{i+2j} ∩ A)| - 2 d
// and reports lhs >= rhs, which holds for every admissible input whose
// per-section defect measure is below d.
inline ChainCheckResult reflection_chain_check(const SectionPair& pair, double v, long i,
                                               long j, double defect_bound) {
  const long m = pair.resolution();
  const double delta = pair.cell_width();
  const double p_real = v / delta;
  const long p = static_cast<long>(std::llround(p_real));
  if (p < 1 || std::abs(p_real - p) > 1e-9)
    throw std::invalid_argument(
        "reflection_chain_check: v must be a positive integer multiple of the cell width");
  if (j < 0) throw std::invalid_argument("reflection_chain_check: j >= 0 required");

  // admissible index range (1/2 - l/(4v), l/(4v) - 1/2), plus block containment
  const double range = pair.extent / (4.0 * v);
  const auto admissible = [&](long h) {
    return h > 0.5 - range && h < range - 0.5;
  };
  if (!admissible(i) || !admissible(i + 2 * j))
    throw std::invalid_argument("reflection_chain_check: block indices out of admissible range");
  const long half = m / 2;
  if (half + (i - 1) * 2 * p < 0 || half + (i + 2 * j) * 2 * p + 2 * p > m)
    throw std::invalid_argument("reflection_chain_check: chain blocks leave the section");

  const double defect_plus = pair.neither_measure(pair.plus);
  const double defect_minus = pair.neither_measure(pair.minus);
  if (!(defect_plus < defect_bound && defect_minus < defect_bound))
    throw std::invalid_argument(
        "reflection_chain_check: section defect measure must stay below d");

  long lhs_count = 0;
  for (long h = i; h <= i + 2 * j; ++h) {
    const bool even = ((h - i) % 2) == 0;
    const auto& bottom = even ? pair.minus : pair.plus;
    const auto& top = even ? pair.plus : pair.minus;
    for (long t = 0; t < 2 * p; ++t) {
      const long b = half + (h - 1) * 2 * p + t;
      const long q = half + h * 2 * p + t;
      if (bottom[b] == CellLabel::B && top[q] == CellLabel::A) ++lhs_count;
    }
  }

  long overlap_count = 0;
  for (long t = 0; t < 2 * p; ++t) {
    const long b = half + (i - 1) * 2 * p + t;
    const long q = half + (i + 2 * j) * 2 * p + t;
    if (pair.minus[b] == CellLabel::B && pair.plus[q] == CellLabel::A) ++overlap_count;
  }

  ChainCheckResult out;
  out.lhs = lhs_count * delta;
  out.overlap = overlap_count * delta;
  out.rhs = out.overlap - 2.0 * defect_bound;
  out.holds = out.lhs >= out.rhs - 1e-12 * pair.extent;
  return out;
}

// ---------------------------------------------------------------------------
// Special-cylinder density checker

// Sections of a cylinder S' x (-L/2, L/2): one label array per sampled
// lateral position, plus the (N-1)-measure of S' they represent.
struct CylinderSections {
  double length = 0;  // L
  double area = 0;    // H^{N-1}(S')
  std::vector<std::vector<CellLabel>> sections;

  CylinderSections(double length_, double area_, std::vector<std::vector<CellLabel>> s)
      : length(length_), area(area_), sections(std::move(s)) {
    if (!(length > 0 && area > 0))
      throw std::invalid_argument("CylinderSections: L > 0 and |S'| > 0 required");
    if (sections.empty()) throw std::invalid_argument("CylinderSections: no sections");
    for (const auto& sec : sections)
      if (sec.size() != sections.front().size() || sec.size() < 4)
        throw std::invalid_argument("CylinderSections: equal resolutions >= 4 required");
  }

  long resolution() const { return static_cast<long>(sections.front().size()); }
  double cell_width() const { return length / resolution(); }
};

struct SpecialCylinderCheck {
  double bound = 0;  // (3 Lambda - 2) * per-area slab energy * |S'|
  bool satisfied = false;
  std::string failed_hypothesis;  // empty when satisfied
};

namespace detail {

// Measure of label `want` within (w_lo, w_hi) on a section over (-L/2, L/2).
inline double label_measure(const std::vector<CellLabel>& sec, double length, CellLabel want,
                            double w_lo, double w_hi) {
  const long m = static_cast<long>(sec.size());
  const double delta = length / m;
  double acc = 0.0;
  for (long c = 0; c < m; ++c) {
    if (sec[c] != want) continue;
    const double lo = -0.5 * length + c * delta;
    const double hi = lo + delta;
    acc += std::max(0.0, std::min(hi, w_hi) - std::max(lo, w_lo));
  }
  return acc;
}

}  // namespace detail

// Checks the density and defect hypotheses of the special-cylinder lower
// bound on every section and evaluates the bound (3Λ-2) G_slab |S'|.
inline SpecialCylinderCheck special_cylinder_check_i(const CylinderSections& sections,
                                                     double density_level, double d, double l,
                                                     double r, int dim) {
  if (!(l < 3.0 * r))
    throw std::invalid_argument("special_cylinder_check_i: l < 3r required");
  if (!(density_level > 0))
    throw std::invalid_argument("special_cylinder_check_i: Lambda > 0 required");
  const SlabPairConfig cfg(d, l, dim);
  const double needed = density_level + 2.0 * l / r;
  const double defect_cap = 0.5 * (3.0 * density_level - 2.0) * d;
  const double half_len = 0.5 * sections.length;

  SpecialCylinderCheck out;
  out.bound = (3.0 * density_level - 2.0) * slab_energy_per_area(cfg) * sections.area;
  for (std::size_t s = 0; s < sections.sections.size(); ++s) {
    const auto& sec = sections.sections[s];
    const double a_top =
        detail::label_measure(sec, sections.length, CellLabel::A, half_len - r, half_len);
    if (!(a_top / r > needed)) {
      out.failed_hypothesis = "section " + std::to_string(s) +
                              ": A-density on the top segment <= Lambda + 2l/r";
      return out;
    }
    const double b_bottom =
        detail::label_measure(sec, sections.length, CellLabel::B, -half_len, -half_len + r);
    if (!(b_bottom / r > needed)) {
      out.failed_hypothesis = "section " + std::to_string(s) +
                              ": B-density on the bottom segment <= Lambda + 2l/r";
      return out;
    }
    const double defect =
        detail::label_measure(sec, sections.length, CellLabel::Neither, -half_len, half_len);
    if (!(defect < defect_cap)) {
      out.failed_hypothesis = "section " + std::to_string(s) +
                              ": defect measure >= (3 Lambda - 2) d / 2";
      return out;
    }
  }
  out.satisfied = true;
  return out;
}

// ---------------------------------------------------------------------------
// Special-cube predicate and empirical energy floor

// True iff |A ∩ Q| > a |Q| and |B ∩ Q| > a |Q| (strict).
inline bool special_cube_predicate(const GridSet& a, const GridSet& b, const Box& cube,
                                   double mass_fraction) {
  if (!(mass_fraction > 0 && mass_fraction < 0.5))
    throw std::invalid_argument("special_cube_predicate: mass fraction in (0, 1/2) required");
  const double tol = 1e-9 * cube.max_extent();
  if (!a.geom.box.contains_box(cube, tol) || !b.geom.box.contains_box(cube, tol))
    throw std::domain_error("special_cube_predicate: cube outside grid domain");
  const double q = cube.measure();
  return a.overlap(cube) > mass_fraction * q && b.overlap(cube) > mass_fraction * q;
}

struct CubeFloorResult {
  double energy = 0;  // eps * G(A, B, Q) estimate
  double ratio = 0;   // energy / R^{N-1}; tracked empirically, C(a) is never claimed
  EnergyEstimate estimate;
};

// Localized nonlocal energy eps * G(A,B,Q) of the indicator pair, reported as
// a ratio against R^{N-1} for floor tracking across scales.
inline CubeFloorResult cube_energy_floor(const GridSet& a, const GridSet& b, const Box& cube,
                                         double eps, const QuadSpec& spec,
                                         double mass_fraction = 0.25) {
  if (!special_cube_predicate(a, b, cube, mass_fraction))
    throw std::invalid_argument("cube_energy_floor: mass predicate fails on the cube");
  double side = cube.extent(0);
  for (int i = 1; i < cube.dim; ++i)
    if (std::abs(cube.extent(i) - side) > 1e-9 * side)
      throw std::invalid_argument("cube_energy_floor: Q must be a cube");
  CubeFloorResult out;
  out.estimate = midpoint_pair_energy(a, b, Region(cube), spec);
  out.energy = eps * out.estimate.value;
  out.ratio = out.energy / std::pow(side, cube.dim - 1);
  return out;
}

}  // namespace nlpt
