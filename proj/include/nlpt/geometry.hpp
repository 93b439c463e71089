#pragma once

// Axis-aligned geometry, uniform grids, indicator sets, lattice cube families
// and the cube-census machinery for finite-perimeter diagnostics.
//
// All types are immutable after construction and all operations are pure.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "nlpt/common.hpp"

namespace nlpt {

// ---------------------------------------------------------------------------
// Primitive regions

struct Box {
  int dim = 0;
  Vec lo{0, 0, 0};
  Vec hi{0, 0, 0};

  Box() = default;
  Box(int dim_, Vec lo_, Vec hi_) : dim(dim_), lo(lo_), hi(hi_) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Box: dim must be 1..3");
    for (int i = 0; i < dim; ++i)
      if (!(lo[i] < hi[i])) throw std::invalid_argument("Box: lower < upper required");
  }

  double measure() const {
    double m = 1.0;
    for (int i = 0; i < dim; ++i) m *= hi[i] - lo[i];
    return m;
  }

  Vec center() const {
    Vec c{0, 0, 0};
    for (int i = 0; i < dim; ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
  }

  double extent(int axis) const { return hi[axis] - lo[axis]; }

  double max_extent() const {
    double m = 0.0;
    for (int i = 0; i < dim; ++i) m = std::max(m, extent(i));
    return m;
  }

  bool contains(const Vec& x) const {
    for (int i = 0; i < dim; ++i)
      if (x[i] < lo[i] || x[i] >= hi[i]) return false;
    return true;
  }

  bool contains_box(const Box& inner, double tol = 0.0) const {
    for (int i = 0; i < dim; ++i)
      if (inner.lo[i] < lo[i] - tol || inner.hi[i] > hi[i] + tol) return false;
    return true;
  }
};

// Overlap volume of two boxes of equal dimension; 0 when disjoint.
inline double box_overlap(const Box& a, const Box& b) {
  double v = 1.0;
  for (int i = 0; i < a.dim; ++i) {
    const double w = std::min(a.hi[i], b.hi[i]) - std::max(a.lo[i], b.lo[i]);
    if (w <= 0.0) return 0.0;
    v *= w;
  }
  return v;
}

// Base box in R^{dim-1} crossed with an interval on the last coordinate.
struct Cylinder {
  Box base;  // dimension dim-1
  double axis_lo = 0, axis_hi = 0;

  Cylinder() = default;
  Cylinder(Box base_, double a, double b) : base(base_), axis_lo(a), axis_hi(b) {
    if (base.dim + 1 > kMaxDim) throw std::invalid_argument("Cylinder: dim must be <= 3");
    if (!(axis_hi > axis_lo)) throw std::invalid_argument("Cylinder: b > a required");
  }

  int dim() const { return base.dim + 1; }
  double measure() const { return base.measure() * (axis_hi - axis_lo); }

  Box as_box() const {
    Vec lo = base.lo, hi = base.hi;
    lo[base.dim] = axis_lo;
    hi[base.dim] = axis_hi;
    return Box(dim(), lo, hi);
  }
};

// R^{dim-1} x (lo, hi) on the last coordinate.
struct Slab {
  int dim = 0;
  double lo = 0, hi = 0;

  Slab() = default;
  Slab(int dim_, double lo_, double hi_) : dim(dim_), lo(lo_), hi(hi_) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Slab: dim must be 1..3");
    if (!(hi > lo)) throw std::invalid_argument("Slab: b > a required");
  }
};

// Open half-space {x : n.x < c}.  The normal may be any nonzero vector;
// fractions against boxes stay exact via a corner inclusion-exclusion formula.
struct HalfSpace {
  int dim = 0;
  Vec normal{0, 0, 0};
  double offset = 0;

  HalfSpace() = default;
  HalfSpace(int dim_, Vec n, double c) : dim(dim_), normal(n), offset(c) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("HalfSpace: dim must be 1..3");
    double norm2 = 0;
    for (int i = 0; i < dim; ++i) norm2 += n[i] * n[i];
    if (norm2 == 0.0) throw std::invalid_argument("HalfSpace: zero normal");
  }

  // Axis-aligned lower half-space {x_axis < c}, axis 0-based.
  static HalfSpace below(int dim, int axis, double c) {
    if (axis < 0 || axis >= dim) throw std::invalid_argument("HalfSpace::below: axis out of range");
    Vec n{0, 0, 0};
    n[axis] = 1.0;
    return HalfSpace(dim, n, c);
  }
};

struct Ball {
  int dim = 0;
  Vec center{0, 0, 0};
  double radius = 0;

  Ball() = default;
  Ball(int dim_, Vec c, double r) : dim(dim_), center(c), radius(r) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Ball: dim must be 1..3");
    if (!(r > 0)) throw std::invalid_argument("Ball: radius > 0 required");
  }
};

// Finite union of pairwise-disjoint boxes.  May be empty.
struct BoxUnion {
  int dim = 0;
  std::vector<Box> boxes;

  BoxUnion() = default;
  BoxUnion(int dim_, std::vector<Box> bs) : dim(dim_), boxes(std::move(bs)) {
    for (const Box& b : boxes)
      if (b.dim != dim) throw std::invalid_argument("BoxUnion: mixed dimensions");
    for (std::size_t i = 0; i < boxes.size(); ++i)
      for (std::size_t j = i + 1; j < boxes.size(); ++j)
        if (box_overlap(boxes[i], boxes[j]) > 0.0)
          throw std::invalid_argument("BoxUnion: boxes must be pairwise disjoint");
  }
};

using Region = std::variant<Box, Cylinder, Slab, HalfSpace, Ball, BoxUnion>;

inline int region_dim(const Region& r) {
  return std::visit(
      [](const auto& g) -> int {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Cylinder>)
          return g.dim();
        else
          return g.dim;
      },
      r);
}

inline bool region_contains(const Region& r, const Vec& x) {
  return std::visit(
      [&x](const auto& g) -> bool {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Box>) {
          return g.contains(x);
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          if (x[g.base.dim] < g.axis_lo || x[g.base.dim] >= g.axis_hi) return false;
          return g.base.contains(x);
        } else if constexpr (std::is_same_v<T, Slab>) {
          return x[g.dim - 1] >= g.lo && x[g.dim - 1] < g.hi;
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          return dot(g.normal, x) < g.offset;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return distance(x, g.center) < g.radius;
        } else {
          for (const Box& b : g.boxes)
            if (b.contains(x)) return true;
          return false;
        }
      },
      r);
}

// Exact Lebesgue measure; +infinity for unbounded regions.
inline double measure(const Region& r) {
  return std::visit(
      [](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Box>) {
          return g.measure();
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          return g.measure();
        } else if constexpr (std::is_same_v<T, Slab>) {
          // a slab in R^1 is just an interval
          return g.dim == 1 ? g.hi - g.lo : std::numeric_limits<double>::infinity();
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          return std::numeric_limits<double>::infinity();
        } else if constexpr (std::is_same_v<T, Ball>) {
          // ball volume pi^{m/2}/Gamma(m/2+1) * r^m
          const double m = g.dim;
          const double unit = std::pow(kPi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
          return unit * std::pow(g.radius, m);
        } else {
          double s = 0.0;
          for (const Box& b : g.boxes) s += b.measure();
          return s;
        }
      },
      r);
}

inline std::optional<Box> region_bounds(const Region& r) {
  return std::visit(
      [](const auto& g) -> std::optional<Box> {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Box>) {
          return g;
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          return g.as_box();
        } else if constexpr (std::is_same_v<T, Ball>) {
          Vec lo{0, 0, 0}, hi{0, 0, 0};
          for (int i = 0; i < g.dim; ++i) {
            lo[i] = g.center[i] - g.radius;
            hi[i] = g.center[i] + g.radius;
          }
          return Box(g.dim, lo, hi);
        } else if constexpr (std::is_same_v<T, BoxUnion>) {
          if (g.boxes.empty()) return std::nullopt;
          Vec lo = g.boxes[0].lo, hi = g.boxes[0].hi;
          for (const Box& b : g.boxes)
            for (int i = 0; i < g.dim; ++i) {
              lo[i] = std::min(lo[i], b.lo[i]);
              hi[i] = std::max(hi[i], b.hi[i]);
            }
          return Box(g.dim, lo, hi);
        } else if constexpr (std::is_same_v<T, Slab>) {
          if (g.dim == 1) return Box(1, make_vec({g.lo}), make_vec({g.hi}));
          return std::nullopt;
        } else {
          return std::nullopt;  // half-space: unbounded
        }
      },
      r);
}

namespace detail {

// Volume of box `cell` below the plane {n.x <= c}, all normal components of
// the reduced problem strictly positive.  Corner inclusion-exclusion:
//   vol = sum_v (-1)^{|v|} ((c - n.q_v)_+)^K / (K! prod n_i).
inline double box_halfspace_volume(const Box& cell, const HalfSpace& hs) {
  double widths = 1.0;
  std::array<double, kMaxDim> n{};
  std::array<double, kMaxDim> a{}, b{};
  int k = 0;
  double c = hs.offset;
  for (int i = 0; i < cell.dim; ++i) {
    double ni = hs.normal[i];
    double lo = cell.lo[i], hi = cell.hi[i];
    if (ni == 0.0) {
      widths *= hi - lo;
      continue;
    }
    if (ni < 0.0) {
      // substitute x_i -> lo + hi - x_i to flip the sign
      c -= ni * (lo + hi);
      ni = -ni;
    }
    n[k] = ni;
    a[k] = lo;
    b[k] = hi;
    ++k;
  }
  if (k == 0) return c > 0.0 ? cell.measure() : 0.0;
  double fact = 1.0, nprod = 1.0, reduced = 1.0;
  for (int i = 0; i < k; ++i) {
    fact *= i + 1;
    nprod *= n[i];
    reduced *= b[i] - a[i];
  }
  double vol = 0.0;
  for (int v = 0; v < (1 << k); ++v) {
    double t = c;
    int bits = 0;
    for (int i = 0; i < k; ++i) {
      const bool hi_corner = (v >> i) & 1;
      bits += hi_corner;
      t -= n[i] * (hi_corner ? b[i] : a[i]);
    }
    if (t <= 0.0) continue;
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= t;
    vol += (bits % 2 == 0 ? 1.0 : -1.0) * p / (fact * nprod);
  }
  return std::clamp(vol, 0.0, reduced) * widths;
}

// Deterministic midpoint subsampling of `cell` at s^dim points.
template <class Pred>
double subsampled_volume(const Box& cell, int s, Pred&& inside) {
  long counts[kMaxDim] = {1, 1, 1};
  for (int i = 0; i < cell.dim; ++i) counts[i] = s;
  long total = 1;
  for (int i = 0; i < cell.dim; ++i) total *= counts[i];
  long in = 0;
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    Vec x{0, 0, 0};
    for (int i = 0; i < cell.dim; ++i) {
      const long q = rem % counts[i];
      rem /= counts[i];
      x[i] = cell.lo[i] + (q + 0.5) * (cell.hi[i] - cell.lo[i]) / counts[i];
    }
    if (inside(x)) ++in;
  }
  return cell.measure() * static_cast<double>(in) / static_cast<double>(total);
}

}  // namespace detail

// Volume of region ∩ cell.  Exact for all primitives except Ball, which uses
// deterministic midpoint subsampling at `subsample`^dim points per cell.
inline double overlap_volume(const Region& r, const Box& cell, int subsample = 8) {
  return std::visit(
      [&](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Box>) {
          return box_overlap(g, cell);
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          return box_overlap(g.as_box(), cell);
        } else if constexpr (std::is_same_v<T, Slab>) {
          const int ax = g.dim - 1;
          const double w = std::min(cell.hi[ax], g.hi) - std::max(cell.lo[ax], g.lo);
          if (w <= 0.0) return 0.0;
          double lateral = 1.0;
          for (int i = 0; i < cell.dim; ++i)
            if (i != ax) lateral *= cell.extent(i);
          return lateral * w;
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          return detail::box_halfspace_volume(cell, g);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return detail::subsampled_volume(
              cell, subsample, [&g](const Vec& x) { return distance(x, g.center) < g.radius; });
        } else {
          double s = 0.0;
          for (const Box& b : g.boxes) s += box_overlap(b, cell);
          return s;
        }
      },
      r);
}

// ---------------------------------------------------------------------------
// Uniform grids

struct GridGeometry {
  Box box;
  std::array<long, kMaxDim> counts{1, 1, 1};

  GridGeometry() = default;
  GridGeometry(Box box_, std::array<long, kMaxDim> counts_) : box(box_), counts(counts_) {
    for (int i = 0; i < box.dim; ++i)
      if (counts[i] < 1) throw std::invalid_argument("GridGeometry: cell count >= 1 per axis");
    for (int i = box.dim; i < kMaxDim; ++i) counts[i] = 1;
  }

  static GridGeometry uniform(const Box& box, long cells_per_axis) {
    std::array<long, kMaxDim> c{1, 1, 1};
    for (int i = 0; i < box.dim; ++i) c[i] = cells_per_axis;
    return GridGeometry(box, c);
  }

  int dim() const { return box.dim; }

  long size() const {
    long n = 1;
    for (int i = 0; i < box.dim; ++i) n *= counts[i];
    return n;
  }

  double spacing(int axis) const { return box.extent(axis) / counts[axis]; }

  double max_spacing() const {
    double h = 0.0;
    for (int i = 0; i < box.dim; ++i) h = std::max(h, spacing(i));
    return h;
  }

  double cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < box.dim; ++i) v *= spacing(i);
    return v;
  }

  std::array<long, kMaxDim> unflatten(long idx) const {
    std::array<long, kMaxDim> c{0, 0, 0};
    for (int i = 0; i < box.dim; ++i) {
      c[i] = idx % counts[i];
      idx /= counts[i];
    }
    return c;
  }

  long flatten(const std::array<long, kMaxDim>& c) const {
    long idx = 0;
    for (int i = box.dim - 1; i >= 0; --i) idx = idx * counts[i] + c[i];
    return idx;
  }

  Vec cell_center(long idx) const {
    const auto c = unflatten(idx);
    Vec x{0, 0, 0};
    for (int i = 0; i < box.dim; ++i) x[i] = box.lo[i] + (c[i] + 0.5) * spacing(i);
    return x;
  }

  Box cell_box(long idx) const {
    const auto c = unflatten(idx);
    Vec lo{0, 0, 0}, hi{0, 0, 0};
    for (int i = 0; i < box.dim; ++i) {
      lo[i] = box.lo[i] + c[i] * spacing(i);
      hi[i] = box.lo[i] + (c[i] + 1) * spacing(i);
    }
    return Box(box.dim, lo, hi);
  }

  // Index of the cell containing x, or -1 when outside the box.
  long locate(const Vec& x) const {
    std::array<long, kMaxDim> c{0, 0, 0};
    for (int i = 0; i < box.dim; ++i) {
      const double t = (x[i] - box.lo[i]) / spacing(i);
      const long q = static_cast<long>(std::floor(t));
      if (q < 0 || q >= counts[i]) return -1;
      c[i] = q;
    }
    return flatten(c);
  }
};

struct Grid {
  GridGeometry geom;
  std::vector<double> values;

  Grid() = default;
  Grid(GridGeometry g, std::vector<double> v) : geom(g), values(std::move(v)) {
    if (static_cast<long>(values.size()) != geom.size())
      throw std::invalid_argument("Grid: value storage length must equal cell count");
  }
};

struct GridSet {
  GridGeometry geom;
  std::vector<std::uint8_t> member;

  GridSet() = default;
  GridSet(GridGeometry g, std::vector<std::uint8_t> m) : geom(g), member(std::move(m)) {
    if (static_cast<long>(member.size()) != geom.size())
      throw std::invalid_argument("GridSet: membership length must equal cell count");
  }

  static GridSet from_predicate(const GridGeometry& g,
                                const std::function<bool(const Vec&)>& pred) {
    std::vector<std::uint8_t> m(g.size());
    for (long i = 0; i < g.size(); ++i) m[i] = pred(g.cell_center(i)) ? 1 : 0;
    return GridSet(g, std::move(m));
  }

  double measure() const {
    long n = 0;
    for (auto b : member) n += b;
    return n * geom.cell_volume();
  }

  bool contains(const Vec& x) const {
    const long idx = geom.locate(x);
    return idx >= 0 && member[idx];
  }

  // Exact volume of (this set) ∩ cell; the set is empty outside its grid box.
  double overlap(const Box& cell) const {
    // restrict to the index range of cells touching `cell`
    std::array<long, kMaxDim> lo{0, 0, 0}, hi{0, 0, 0};
    const int d = geom.dim();
    for (int i = 0; i < d; ++i) {
      const double h = geom.spacing(i);
      lo[i] = std::max(0L, static_cast<long>(std::floor((cell.lo[i] - geom.box.lo[i]) / h)));
      hi[i] = std::min(geom.counts[i] - 1,
                       static_cast<long>(std::ceil((cell.hi[i] - geom.box.lo[i]) / h)));
      if (lo[i] > hi[i]) return 0.0;
    }
    double vol = 0.0;
    std::array<long, kMaxDim> c = lo;
    while (true) {
      const long idx = geom.flatten(c);
      if (member[idx]) vol += box_overlap(geom.cell_box(idx), cell);
      int axis = 0;
      while (axis < d) {
        if (++c[axis] <= hi[axis]) break;
        c[axis] = lo[axis];
        ++axis;
      }
      if (axis == d) break;
    }
    return vol;
  }
};

// ---------------------------------------------------------------------------
// A non-owning view of "GridSet-or-Region" for the set-valued operations.

class SetRef {
 public:
  SetRef(const Region& r) : region_(&r) {}  // NOLINT: implicit by design
  SetRef(const GridSet& g) : grid_(&g) {}   // NOLINT

  bool is_grid() const { return grid_ != nullptr; }
  const GridSet* grid() const { return grid_; }
  const Region* region() const { return region_; }

  int dim() const { return grid_ ? grid_->geom.dim() : region_dim(*region_); }

  bool contains(const Vec& x) const {
    return grid_ ? grid_->contains(x) : region_contains(*region_, x);
  }

  double overlap(const Box& cell, int subsample = 8) const {
    return grid_ ? grid_->overlap(cell) : overlap_volume(*region_, cell, subsample);
  }

  std::optional<Box> bounds() const {
    return grid_ ? std::optional<Box>(grid_->geom.box) : region_bounds(*region_);
  }

 private:
  const Region* region_ = nullptr;
  const GridSet* grid_ = nullptr;
};

// ---------------------------------------------------------------------------
// Lattice cube families Q_r^i

struct LatticeFamily {
  double r = 0;       // cube side
  int shift = 0;      // 0: centers on r.Z^N, i>=1: centers shifted by r e_i/2
  int dim = 0;

  LatticeFamily(double r_, int shift_, int dim_) : r(r_), shift(shift_), dim(dim_) {
    if (!(r > 0)) throw std::invalid_argument("LatticeFamily: r > 0 required");
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("LatticeFamily: dim must be 1..3");
    if (shift < 0 || shift > dim)
      throw std::invalid_argument("LatticeFamily: shift index in {0,..,N}");
  }

  Vec center(const std::array<long, kMaxDim>& h) const {
    Vec c{0, 0, 0};
    for (int i = 0; i < dim; ++i) c[i] = r * h[i];
    if (shift >= 1) c[shift - 1] += 0.5 * r;
    return c;
  }

  Box cube(const std::array<long, kMaxDim>& h) const {
    const Vec c = center(h);
    Vec lo{0, 0, 0}, hi{0, 0, 0};
    for (int i = 0; i < dim; ++i) {
      lo[i] = c[i] - 0.5 * r;
      hi[i] = c[i] + 0.5 * r;
    }
    return Box(dim, lo, hi);
  }
};

// ---------------------------------------------------------------------------
// Fractions and censuses

// |set ∩ cube| / |cube|.  Exact for region primitives (subsampled for balls),
// cell-resolved for grid sets.  For grid sets the cube must lie inside the
// grid bounding box.
inline double cell_fraction(SetRef set, const Box& cube, int subsample = 8) {
  if (set.is_grid()) {
    const double tol = 1e-9 * cube.max_extent();
    if (!set.grid()->geom.box.contains_box(cube, tol))
      throw std::domain_error("cell_fraction: cube outside grid domain");
  }
  return set.overlap(cube, subsample) / cube.measure();
}

namespace detail {

// Integer index ranges of family cubes fully contained in `window`.
inline bool family_index_range(const LatticeFamily& fam, const Box& window,
                               std::array<long, kMaxDim>& lo, std::array<long, kMaxDim>& hi) {
  const double eps = 1e-9 * fam.r;
  for (int i = 0; i < fam.dim; ++i) {
    const double s = (fam.shift == i + 1) ? 0.5 : 0.0;
    // need r(h+s) - r/2 >= window.lo and r(h+s) + r/2 <= window.hi
    lo[i] = static_cast<long>(std::ceil((window.lo[i] + 0.5 * fam.r) / fam.r - s - eps));
    hi[i] = static_cast<long>(std::floor((window.hi[i] - 0.5 * fam.r) / fam.r - s + eps));
    if (lo[i] > hi[i]) return false;
  }
  return true;
}

template <class Fn>
void for_each_index(const std::array<long, kMaxDim>& lo, const std::array<long, kMaxDim>& hi,
                    int dim, Fn&& fn) {
  std::array<long, kMaxDim> h = lo;
  while (true) {
    fn(h);
    int axis = 0;
    while (axis < dim) {
      if (++h[axis] <= hi[axis]) break;
      h[axis] = lo[axis];
      ++axis;
    }
    if (axis == dim) break;
  }
}

}  // namespace detail

// Number of family cubes fully contained in `window` whose set fraction lies
// strictly inside (a, 1-a).  Lattice cubes straddling the window border are
// excluded.
inline long cube_census(SetRef set, const LatticeFamily& fam, double a, const Box& window,
                        int subsample = 8) {
  if (!(a > 0.0 && a < 0.25))
    throw std::invalid_argument("cube_census: threshold a must lie in (0, 1/4)");
  std::array<long, kMaxDim> lo{}, hi{};
  if (!detail::family_index_range(fam, window, lo, hi)) return 0;
  long count = 0;
  detail::for_each_index(lo, hi, fam.dim, [&](const std::array<long, kMaxDim>& h) {
    const Box q = fam.cube(h);
    const double f = set.overlap(q, subsample) / q.measure();
    if (f > a && f < 1.0 - a) ++count;
  });
  return count;
}

// Union of shift-0 lattice cubes with fraction >= 1-a, realized as a GridSet
// on the lattice-aligned grid of all cubes meeting `window`, together with
// the exact perimeter of that union (boundary faces clipped to the window;
// faces on the window boundary do not count).
struct CensusApproximation {
  GridSet set;
  double perimeter = 0;
};

inline CensusApproximation census_approximation(SetRef set, double r, double a,
                                                const Box& window, int subsample = 8) {
  if (!(a > 0.0 && a < 0.25))
    throw std::invalid_argument("census_approximation: threshold a must lie in (0, 1/4)");
  const LatticeFamily fam(r, 0, window.dim);
  const double eps = 1e-9 * r;
  // all cubes whose interior meets the window
  std::array<long, kMaxDim> lo{0, 0, 0}, hi{0, 0, 0};
  for (int i = 0; i < window.dim; ++i) {
    lo[i] = static_cast<long>(std::floor(window.lo[i] / r + 0.5 - eps));
    hi[i] = static_cast<long>(std::ceil(window.hi[i] / r - 0.5 + eps));
  }

  Vec glo{0, 0, 0}, ghi{0, 0, 0};
  std::array<long, kMaxDim> counts{1, 1, 1};
  for (int i = 0; i < window.dim; ++i) {
    glo[i] = (lo[i] - 0.5) * r;
    ghi[i] = (hi[i] + 0.5) * r;
    counts[i] = hi[i] - lo[i] + 1;
  }
  GridGeometry geom(Box(window.dim, glo, ghi), counts);

  const auto member_of = [&](const std::array<long, kMaxDim>& h) {
    const Box q = fam.cube(h);
    return set.overlap(q, subsample) / q.measure() >= 1.0 - a;
  };

  std::vector<std::uint8_t> member(geom.size(), 0);
  detail::for_each_index(lo, hi, window.dim, [&](const std::array<long, kMaxDim>& h) {
    std::array<long, kMaxDim> c{0, 0, 0};
    for (int i = 0; i < window.dim; ++i) c[i] = h[i] - lo[i];
    member[geom.flatten(c)] = member_of(h) ? 1 : 0;
  });

  // exposed faces: member cube vs non-member neighbour, clipped to the window
  double perimeter = 0.0;
  detail::for_each_index(lo, hi, window.dim, [&](const std::array<long, kMaxDim>& h) {
    std::array<long, kMaxDim> c{0, 0, 0};
    for (int i = 0; i < window.dim; ++i) c[i] = h[i] - lo[i];
    if (!member[geom.flatten(c)]) return;
    const Box q = fam.cube(h);
    for (int axis = 0; axis < window.dim; ++axis) {
      for (int side = -1; side <= 1; side += 2) {
        std::array<long, kMaxDim> nb = h;
        nb[axis] += side;
        bool neighbour_member;
        if (nb[axis] >= lo[axis] && nb[axis] <= hi[axis]) {
          std::array<long, kMaxDim> nc = c;
          nc[axis] += side;
          neighbour_member = member[geom.flatten(nc)] != 0;
        } else {
          neighbour_member = member_of(nb);
        }
        if (neighbour_member) continue;
        const double plane = side < 0 ? q.lo[axis] : q.hi[axis];
        if (plane <= window.lo[axis] || plane >= window.hi[axis]) continue;
        double area = 1.0;
        for (int i = 0; i < window.dim; ++i) {
          if (i == axis) continue;
          const double w = std::min(q.hi[i], window.hi[i]) - std::max(q.lo[i], window.lo[i]);
          area *= std::max(0.0, w);
        }
        perimeter += area;
      }
    }
  });

  return CensusApproximation{GridSet(geom, std::move(member)), perimeter};
}

}  // namespace nlpt
