#pragma once

// Independent numerical estimators of the pair energy
//   G(A,B,S) = ∬_{(A∩S) x (B∩S)} |y-x|^{-(N+1)} d(y,x)
// for disjoint Regions / GridSets: deterministic cell-midpoint quadrature with
// recursive refinement of near cell pairs, and an unbiased Monte Carlo
// estimator on counter-based random streams.

#include <atomic>
#include <cmath>
#include <optional>
#include <thread>
#include <vector>

#include "nlpt/geometry.hpp"
#include "nlpt/kernel_exact.hpp"

namespace nlpt {

enum class QuadScheme { CellMidpoint, MonteCarlo };

struct QuadSpec {
  QuadScheme scheme = QuadScheme::CellMidpoint;
  int resolution = 64;        // cells across the largest extent of A's domain
  long samples = 200000;      // Monte Carlo pair samples
  int depth = 6;              // recursive refinement depth for near cell pairs
  double near_factor = 3.0;   // refine pairs closer than near_factor * cell size
  std::uint64_t seed = 1;
  int threads = 1;

  void validate() const {
    if (resolution < 2) throw std::invalid_argument("QuadSpec: resolution >= 2 required");
    if (samples < 2) throw std::invalid_argument("QuadSpec: samples >= 2 required");
    if (depth < 0) throw std::invalid_argument("QuadSpec: depth >= 0 required");
    if (!(near_factor > 0)) throw std::invalid_argument("QuadSpec: near_factor > 0 required");
    if (threads < 1) throw std::invalid_argument("QuadSpec: threads >= 1 required");
  }
};

struct EnergyEstimate {
  double value = 0;
  double error = 0;       // discretization (midpoint) or standard error (MC)
  double tail_bound = 0;  // caller-supplied analytic truncation bound
  long evals = 0;
  bool unreliable = false;  // separation below resolution at exhausted depth
};

namespace detail {

// Localization domains are restricted to box-like regions so that clipping a
// box by S is again a box.
inline std::optional<Box> localizer_box(const std::optional<Region>& s, int dim) {
  if (!s) return std::nullopt;
  if (region_dim(*s) != dim)
    throw std::invalid_argument("pair energy: localization dimension mismatch");
  if (const Box* b = std::get_if<Box>(&*s)) return *b;
  if (const Cylinder* c = std::get_if<Cylinder>(&*s)) return c->as_box();
  if (const Slab* sl = std::get_if<Slab>(&*s)) {
    if (sl->dim == 1) return Box(1, make_vec({sl->lo}), make_vec({sl->hi}));
    return std::nullopt;  // lateral clipping happens against the set bounds
  }
  throw std::invalid_argument("pair energy: localization region must be box-like");
}

inline Box quad_domain(SetRef set, const std::optional<Region>& s) {
  auto bounds = set.bounds();
  auto clip = localizer_box(s, set.dim());
  const Slab* slab = s ? std::get_if<Slab>(&*s) : nullptr;

  if (!bounds && !clip)
    throw std::invalid_argument("pair energy: set unbounded after intersection with S");
  Box domain = bounds ? *bounds : *clip;
  if (bounds && clip) {
    Vec lo = domain.lo, hi = domain.hi;
    for (int i = 0; i < domain.dim; ++i) {
      lo[i] = std::max(lo[i], clip->lo[i]);
      hi[i] = std::min(hi[i], clip->hi[i]);
      if (!(lo[i] < hi[i]))
        throw std::invalid_argument("pair energy: empty domain after intersection with S");
    }
    domain = Box(domain.dim, lo, hi);
  }
  if (slab && slab->dim >= 2) {
    if (!bounds)
      throw std::invalid_argument("pair energy: set unbounded after intersection with S");
    const int ax = domain.dim - 1;
    Vec lo = domain.lo, hi = domain.hi;
    lo[ax] = std::max(lo[ax], slab->lo);
    hi[ax] = std::min(hi[ax], slab->hi);
    if (!(lo[ax] < hi[ax]))
      throw std::invalid_argument("pair energy: empty domain after intersection with S");
    domain = Box(domain.dim, lo, hi);
  }
  return domain;
}

struct QuadCell {
  Box box;
  Vec center;
  double weight;  // vol(cell ∩ set ∩ S)
};

inline std::vector<QuadCell> build_cells(SetRef set, const Box& domain, double target_h) {
  const int d = domain.dim;
  std::array<long, kMaxDim> counts{1, 1, 1};
  for (int i = 0; i < d; ++i)
    counts[i] = std::max(1L, static_cast<long>(std::ceil(domain.extent(i) / target_h - 1e-12)));
  GridGeometry part(domain, counts);
  std::vector<QuadCell> cells;
  cells.reserve(part.size());
  for (long idx = 0; idx < part.size(); ++idx) {
    const Box cb = part.cell_box(idx);
    const double w = set.overlap(cb);
    if (w > 0.0) cells.push_back(QuadCell{cb, cb.center(), w});
  }
  return cells;
}

inline double max_half_extent(const Box& b) { return 0.5 * b.max_extent(); }

// Recursive near-pair contribution.  Both cells are split dyadically until the
// centers separate relative to the cell size or the depth budget runs out.
inline double refined_pair(SetRef a, const Box& ca, double wa, SetRef b, const Box& cb,
                           double wb, int depth, double near_factor, long& evals,
                           bool& unreliable) {
  if (wa <= 0.0 || wb <= 0.0) return 0.0;
  const int dim = ca.dim;
  const double dist = distance(ca.center(), cb.center());
  const double size = 2.0 * std::max(max_half_extent(ca), max_half_extent(cb));
  if (dist >= near_factor * size || depth == 0) {
    ++evals;
    if (dist < 0.5 * size) {
      unreliable = true;
      return pair_kernel(std::max(dist, 0.25 * size), dim) * wa * wb;
    }
    return pair_kernel(dist, dim) * wa * wb;
  }
  // split both cells into 2^dim children
  double sum = 0.0;
  const long parts = 1L << dim;
  for (long ia = 0; ia < parts; ++ia) {
    Vec alo = ca.lo, ahi = ca.hi;
    for (int k = 0; k < dim; ++k) {
      const double mid = 0.5 * (ca.lo[k] + ca.hi[k]);
      if ((ia >> k) & 1)
        alo[k] = mid;
      else
        ahi[k] = mid;
    }
    const Box sub_a(dim, alo, ahi);
    const double swa = a.overlap(sub_a);
    if (swa <= 0.0) continue;
    for (long ib = 0; ib < parts; ++ib) {
      Vec blo = cb.lo, bhi = cb.hi;
      for (int k = 0; k < dim; ++k) {
        const double mid = 0.5 * (cb.lo[k] + cb.hi[k]);
        if ((ib >> k) & 1)
          blo[k] = mid;
        else
          bhi[k] = mid;
      }
      const Box sub_b(dim, blo, bhi);
      const double swb = b.overlap(sub_b);
      if (swb <= 0.0) continue;
      sum += refined_pair(a, sub_a, swa, b, sub_b, swb, depth - 1, near_factor, evals,
                          unreliable);
    }
  }
  return sum;
}

// Cheap disjointness probe: grid sets sharing a geometry are checked exactly,
// everything else by deterministic midpoint sampling of the overlap box.
inline void check_disjoint(SetRef a, SetRef b, const std::optional<Region>& s) {
  if (a.is_grid() && b.is_grid() && a.grid()->geom.size() == b.grid()->geom.size() &&
      a.grid()->geom.box.dim == b.grid()->geom.box.dim) {
    const auto& ga = *a.grid();
    const auto& gb = *b.grid();
    bool same_geom = true;
    for (int i = 0; i < ga.geom.dim(); ++i)
      same_geom = same_geom && ga.geom.counts[i] == gb.geom.counts[i] &&
                  ga.geom.box.lo[i] == gb.geom.box.lo[i] && ga.geom.box.hi[i] == gb.geom.box.hi[i];
    if (same_geom) {
      for (long i = 0; i < ga.geom.size(); ++i)
        if (ga.member[i] && gb.member[i])
          throw std::invalid_argument("pair energy: sets must be disjoint");
      return;
    }
  }
  std::optional<Box> ba, bb;
  try {
    ba = quad_domain(a, s);
    bb = quad_domain(b, s);
  } catch (const std::invalid_argument&) {
    return;  // unbounded cases are vetted later
  }
  Vec lo = ba->lo, hi = ba->hi;
  for (int i = 0; i < ba->dim; ++i) {
    lo[i] = std::max(lo[i], bb->lo[i]);
    hi[i] = std::min(hi[i], bb->hi[i]);
    if (!(lo[i] < hi[i])) return;  // bounding boxes disjoint
  }
  const Box common(ba->dim, lo, hi);
  GridGeometry probe = GridGeometry::uniform(common, 8);
  for (long i = 0; i < probe.size(); ++i) {
    const Vec x = probe.cell_center(i);
    if (a.contains(x) && b.contains(x))
      throw std::invalid_argument("pair energy: sets must be disjoint");
  }
}

// Lexicographic key on the quadrature domains; the kernel is symmetric, so
// evaluating on a canonical argument order makes G(A,B) and G(B,A) run the
// exact same computation.
inline bool domain_precedes(const Box& a, const Box& b) {
  for (int i = 0; i < a.dim; ++i) {
    if (a.lo[i] != b.lo[i]) return a.lo[i] < b.lo[i];
    if (a.hi[i] != b.hi[i]) return a.hi[i] < b.hi[i];
  }
  return false;
}

inline double midpoint_value(SetRef a, SetRef b, const std::optional<Region>& s,
                             const QuadSpec& spec, int resolution, long& evals,
                             bool& unreliable) {
  Box dom_a = quad_domain(a, s);
  Box dom_b = quad_domain(b, s);
  if (domain_precedes(dom_b, dom_a)) {
    std::swap(dom_a, dom_b);
    std::swap(a, b);
  }
  // resolution counts cells across the smaller of the two domains, so a wide
  // truncated slab paired with a unit cylinder still gets fine cells
  const double target_h = std::min(dom_a.max_extent(), dom_b.max_extent()) / resolution;
  const auto cells_a = build_cells(a, dom_a, target_h);
  const auto cells_b = build_cells(b, dom_b, target_h);
  if (cells_a.empty() || cells_b.empty()) return 0.0;

  const int dim = dom_a.dim;
  const double near_factor = spec.near_factor;
  std::vector<double> rows(cells_a.size(), 0.0);
  std::atomic<long> eval_count{0};
  std::atomic<bool> flag{false};

  const auto run_rows = [&](std::size_t begin, std::size_t end) {
    long local_evals = 0;
    bool local_flag = false;
    for (std::size_t i = begin; i < end; ++i) {
      const QuadCell& pa = cells_a[i];
      const double size_a = 2.0 * max_half_extent(pa.box);
      double row = 0.0;
      for (const QuadCell& pb : cells_b) {
        const double dist = distance(pa.center, pb.center);
        const double size = std::max(size_a, 2.0 * max_half_extent(pb.box));
        if (dist >= near_factor * size) {
          row += pair_kernel(dist, dim) * pa.weight * pb.weight;
          ++local_evals;
        } else {
          row += refined_pair(a, pa.box, pa.weight, b, pb.box, pb.weight, spec.depth,
                              near_factor, local_evals, local_flag);
        }
      }
      rows[i] = row;
    }
    eval_count += local_evals;
    if (local_flag) flag = true;
  };

  const int threads = std::min<long>(spec.threads, static_cast<long>(cells_a.size()));
  if (threads <= 1) {
    run_rows(0, cells_a.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (cells_a.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(cells_a.size(), begin + chunk);
      if (begin < end) pool.emplace_back(run_rows, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  evals += eval_count.load();
  if (flag) unreliable = true;
  return pairwise_sum(rows);
}

}  // namespace detail

// Deterministic midpoint estimate of G(A,B,S).  The reported error is a
// Richardson estimate from a half-resolution companion run.
inline EnergyEstimate midpoint_pair_energy(SetRef a, SetRef b,
                                           const std::optional<Region>& s,
                                           const QuadSpec& spec) {
  spec.validate();
  if (a.dim() != b.dim()) throw std::invalid_argument("pair energy: dimension mismatch");
  detail::check_disjoint(a, b, s);
  EnergyEstimate est;
  est.value = detail::midpoint_value(a, b, s, spec, spec.resolution, est.evals, est.unreliable);
  bool coarse_flag = false;
  long coarse_evals = 0;
  const double coarse = detail::midpoint_value(a, b, s, spec, std::max(2, spec.resolution / 2),
                                               coarse_evals, coarse_flag);
  est.evals += coarse_evals;
  est.error = std::abs(est.value - coarse) / 3.0;
  return est;
}

// Unbiased Monte Carlo estimate: uniform pair samples on the two domain boxes,
// indicator-weighted, reproducible from (seed, sample index).
inline EnergyEstimate mc_pair_energy(SetRef a, SetRef b, const std::optional<Region>& s,
                                     const QuadSpec& spec) {
  spec.validate();
  if (a.dim() != b.dim()) throw std::invalid_argument("pair energy: dimension mismatch");
  detail::check_disjoint(a, b, s);

  Box dom_a = detail::quad_domain(a, s);
  Box dom_b = detail::quad_domain(b, s);
  if (detail::domain_precedes(dom_b, dom_a)) {
    std::swap(dom_a, dom_b);
    std::swap(a, b);
  }
  EnergyEstimate est;
  if (a.overlap(dom_a) == 0.0 || b.overlap(dom_b) == 0.0) return est;  // empty set: exact zero

  const int dim = dom_a.dim;
  const double box_vol = dom_a.measure() * dom_b.measure();
  CounterRng rng_a(spec.seed, 0x41);
  CounterRng rng_b(spec.seed, 0x42);

  std::vector<double> values(spec.samples);
  long accept_a = 0, accept_b = 0;
  for (long i = 0; i < spec.samples; ++i) {
    Vec x{0, 0, 0}, y{0, 0, 0};
    for (int k = 0; k < dim; ++k) x[k] = rng_a.uniform(dom_a.lo[k], dom_a.hi[k]);
    for (int k = 0; k < dim; ++k) y[k] = rng_b.uniform(dom_b.lo[k], dom_b.hi[k]);
    const bool in_a = a.contains(x) && (!s || region_contains(*s, x));
    const bool in_b = b.contains(y) && (!s || region_contains(*s, y));
    accept_a += in_a;
    accept_b += in_b;
    values[i] = (in_a && in_b) ? pair_kernel(distance(x, y), dim) * box_vol : 0.0;
  }
  est.evals = spec.samples;
  const double n = static_cast<double>(spec.samples);
  if (static_cast<double>(accept_a) / n < 1e-3 || static_cast<double>(accept_b) / n < 1e-3)
    throw std::runtime_error("mc_pair_energy: rejection acceptance rate below 1e-3");

  est.value = pairwise_sum(values) / n;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - est.value;
    sq[i] = d * d;
  }
  est.error = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
  return est;
}

// Analytic upper bound on the energy lost by truncating the infinite slab B
// to lateral extent |y'| <= r_trunc when paired with the cylinder of side
// `cylinder_side`.  Uses |y-x| >= |y'| - |x'| and integrates the lateral tail.
inline double slab_truncation_tail(double r_trunc, const SlabPairConfig& cfg,
                                   double cylinder_side = 1.0) {
  if (!(r_trunc > cfg.l))
    throw std::invalid_argument("slab_truncation_tail: R_trunc > l required");
  const int n = cfg.dim;
  if (n == 1) return 0.0;
  const double c = 0.5 * cylinder_side * std::sqrt(static_cast<double>(n - 1));
  if (!(r_trunc > c))
    throw std::invalid_argument("slab_truncation_tail: R_trunc must exceed the cylinder radius");
  const double strip = 0.5 * (cfg.l - cfg.d);
  const double vol_a = std::pow(cylinder_side, n - 1) * strip;
  const double u = r_trunc - c;
  double lateral;
  if (n == 2) {
    lateral = 1.0 / (u * u);  // 2 * int_T^inf (rho - c)^{-3} drho
  } else {
    // 2 pi * int_T^inf (rho - c)^{-4} rho drho
    lateral = 2.0 * kPi * (0.5 / (u * u) + c / (3.0 * u * u * u));
  }
  return vol_a * strip * lateral;
}

}  // namespace nlpt
