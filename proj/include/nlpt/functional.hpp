#pragma once

// The discrete energy
//   F_eps(u, A) = lambda_eps * sum_{cells in A} W(u_i) h^N
//               + eps * sum_{ordered pairs i != j in A} (u_i - u_j)^2 K_ij
// with K_ij the pair weight of cells i and j (midpoint kernel value times
// squared cell volume, refined for near pairs), plus the scaling schedule,
// the energy gradient, a backtracking-descent minimizer and the limit
// functional.

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "nlpt/geometry.hpp"
#include "nlpt/kernel_exact.hpp"

namespace nlpt {

// Double-well potential: W >= 0, vanishing exactly at the wells.
struct DoubleWell {
  double alpha = 0.0;
  double beta = 1.0;
  std::function<double(double)> w;
  std::function<double(double)> dw;

  static DoubleWell quartic(double alpha = 0.0, double beta = 1.0) {
    if (!(alpha < beta)) throw std::invalid_argument("DoubleWell: alpha < beta required");
    DoubleWell out;
    out.alpha = alpha;
    out.beta = beta;
    out.w = [alpha, beta](double t) {
      const double a = t - alpha, b = t - beta;
      return a * a * b * b;
    };
    out.dw = [alpha, beta](double t) {
      const double a = t - alpha, b = t - beta;
      return 2.0 * a * b * (a + b);
    };
    return out;
  }

  // max W on (alpha, beta), by dense sampling including the midpoint (where
  // the default quartic attains its maximum ((beta-alpha)/2)^4 exactly).
  double max_between() const {
    double best = w(0.5 * (alpha + beta));
    const int n = 1024;
    for (int i = 1; i < n; ++i) best = std::max(best, w(alpha + (beta - alpha) * i / n));
    return best;
  }
};

// eps -> lambda_eps with eps * ln(lambda_eps) -> k.  The default rule
// exp(k/eps) satisfies the identity exactly for every eps.  log_rule carries
// ln(lambda_eps) directly; lambda_eps itself overflows double already at
// eps = k/709, so the small-eps closed forms work from the logarithm.
struct ScalingSchedule {
  double k = 1.0;
  std::function<double(double)> rule;
  std::function<double(double)> log_rule;

  static ScalingSchedule exponential(double k) {
    if (!(k > 0)) throw std::invalid_argument("ScalingSchedule: k > 0 required");
    ScalingSchedule s;
    s.k = k;
    s.rule = [k](double eps) { return std::exp(k / eps); };
    s.log_rule = [k](double eps) { return k / eps; };
    return s;
  }
};

inline double lambda_of_eps(const ScalingSchedule& schedule, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("lambda_of_eps: eps > 0 required");
  const double lambda = schedule.rule(eps);
  if (!(lambda > 0)) throw std::invalid_argument("lambda_of_eps: lambda_eps > 0 required");
  return lambda;
}

inline double log_lambda_of_eps(const ScalingSchedule& schedule, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("log_lambda_of_eps: eps > 0 required");
  return schedule.log_rule ? schedule.log_rule(eps) : std::log(lambda_of_eps(schedule, eps));
}

// A grid-valued candidate function u on its bounding box.
using PhaseField = Grid;

struct EnergyBreakdown {
  double potential = 0;
  double nonlocal = 0;
  double total = 0;
  std::string region_tag;
};

struct EnergyEvalOptions {
  int depth = 6;             // near-pair refinement depth for the pair weights
  double near_factor = 3.0;  // refine pairs closer than near_factor * cell size
};

namespace detail {

// Geometric pair weight of two congruent cells: midpoint kernel value times
// the product of volumes, with dyadic refinement while the centers are close
// relative to the cell size.
inline double geometric_pair_weight(const Box& ca, const Box& cb, int depth,
                                    double near_factor) {
  const int dim = ca.dim;
  const double dist = distance(ca.center(), cb.center());
  const double size = std::max(ca.max_extent(), cb.max_extent());
  if (dist >= near_factor * size || depth == 0)
    return pair_kernel(dist, dim) * ca.measure() * cb.measure();
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
    for (long ib = 0; ib < parts; ++ib) {
      Vec blo = cb.lo, bhi = cb.hi;
      for (int k = 0; k < dim; ++k) {
        const double mid = 0.5 * (cb.lo[k] + cb.hi[k]);
        if ((ib >> k) & 1)
          blo[k] = mid;
        else
          bhi[k] = mid;
      }
      sum += geometric_pair_weight(Box(dim, alo, ahi), Box(dim, blo, bhi), depth - 1,
                                   near_factor);
    }
  }
  return sum;
}

}  // namespace detail

// Pair weights by cell-index offset; translation invariance of the uniform
// grid makes the table one-dimensional in the offset.
class PairKernelTable {
 public:
  PairKernelTable(const GridGeometry& geom, const EnergyEvalOptions& opts = {})
      : geom_(geom) {
    const int d = geom.dim();
    long size = 1;
    for (int i = 0; i < d; ++i) {
      span_[i] = 2 * geom.counts[i] - 1;
      size *= span_[i];
    }
    weights_.assign(size, 0.0);
    const Box cell0 = geom.cell_box(0);
    std::array<long, kMaxDim> off{0, 0, 0};
    for (long flat = 0; flat < size; ++flat) {
      long rem = flat;
      bool zero = true;
      for (int i = 0; i < d; ++i) {
        off[i] = rem % span_[i] - (geom.counts[i] - 1);
        rem /= span_[i];
        zero = zero && off[i] == 0;
      }
      if (zero) continue;  // diagonal excluded
      Vec lo = cell0.lo, hi = cell0.hi;
      for (int i = 0; i < d; ++i) {
        lo[i] += off[i] * geom.spacing(i);
        hi[i] += off[i] * geom.spacing(i);
      }
      weights_[flat] =
          detail::geometric_pair_weight(cell0, Box(d, lo, hi), opts.depth, opts.near_factor);
    }
  }

  double weight(const std::array<long, kMaxDim>& ci, const std::array<long, kMaxDim>& cj) const {
    long flat = 0;
    for (int i = geom_.dim() - 1; i >= 0; --i)
      flat = flat * span_[i] + (cj[i] - ci[i] + geom_.counts[i] - 1);
    return weights_[flat];
  }

  const GridGeometry& geometry() const { return geom_; }

 private:
  GridGeometry geom_;
  std::array<long, kMaxDim> span_{1, 1, 1};
  std::vector<double> weights_;
};

namespace detail {

inline std::vector<long> selected_cells(const GridGeometry& geom,
                                        const std::optional<Region>& region) {
  std::vector<long> idx;
  idx.reserve(geom.size());
  for (long i = 0; i < geom.size(); ++i)
    if (!region || region_contains(*region, geom.cell_center(i))) idx.push_back(i);
  return idx;
}

}  // namespace detail

// lambda_eps * sum_{cells in region} W(u_i) * cell volume
inline double eval_potential_term(const PhaseField& u, double eps,
                                  const ScalingSchedule& schedule, const DoubleWell& well,
                                  const std::optional<Region>& region = {}) {
  const double lambda = lambda_of_eps(schedule, eps);
  const double vol = u.geom.cell_volume();
  std::vector<double> terms;
  for (long i : detail::selected_cells(u.geom, region)) terms.push_back(well.w(u.values[i]));
  return lambda * vol * pairwise_sum(terms);
}

// eps * sum over ordered cell pairs (x != y) of (u(y)-u(x))^2 * pair weight
inline double eval_nonlocal_term(const PhaseField& u, double eps, const PairKernelTable& table,
                                 const std::optional<Region>& region = {}) {
  const auto idx = detail::selected_cells(u.geom, region);
  std::vector<double> rows(idx.size(), 0.0);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const auto ca = u.geom.unflatten(idx[a]);
    const double ua = u.values[idx[a]];
    double row = 0.0;
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const double diff = u.values[idx[b]] - ua;
      if (diff == 0.0) continue;
      row += diff * diff * table.weight(ca, u.geom.unflatten(idx[b]));
    }
    rows[a] = row;
  }
  // ordered pairs count (x,y) and (y,x) separately
  return 2.0 * eps * pairwise_sum(rows);
}

inline EnergyBreakdown eval_f(const PhaseField& u, double eps, const ScalingSchedule& schedule,
                              const DoubleWell& well, const PairKernelTable& table,
                              const std::optional<Region>& region = {},
                              std::string region_tag = {}) {
  EnergyBreakdown out;
  out.potential = eval_potential_term(u, eps, schedule, well, region);
  out.nonlocal = eval_nonlocal_term(u, eps, table, region);
  out.total = out.potential + out.nonlocal;
  out.region_tag = std::move(region_tag);
  return out;
}

// dF/du_i = lambda_eps W'(u_i) h^N + 4 eps sum_{j != i} (u_i - u_j) K_ij
inline std::vector<double> grad_f(const PhaseField& u, double eps,
                                  const ScalingSchedule& schedule, const DoubleWell& well,
                                  const PairKernelTable& table) {
  const double lambda = lambda_of_eps(schedule, eps);
  const double vol = u.geom.cell_volume();
  const long n = u.geom.size();
  std::vector<double> g(n, 0.0);
  for (long i = 0; i < n; ++i) {
    const auto ci = u.geom.unflatten(i);
    double acc = 0.0;
    for (long j = 0; j < n; ++j) {
      if (j == i) continue;
      acc += (u.values[i] - u.values[j]) * table.weight(ci, u.geom.unflatten(j));
    }
    g[i] = lambda * well.dw(u.values[i]) * vol + 4.0 * eps * acc;
  }
  return g;
}

struct MinimizeOptions {
  long max_iterations = 500;
  double initial_step = 1.0;
  double armijo = 1e-4;
  double gradient_tolerance = 1e-8;
};

struct MinimizeResult {
  PhaseField field;
  std::vector<double> energy_log;  // nonincreasing by construction
  long iterations = 0;
  bool converged = false;
};

// Gradient descent with backtracking line search.  Refuses configurations
// whose interface width eps/lambda_eps is below two grid cells: the schedule
// shrinks widths far below any resolution very quickly, and silently
// under-resolving would report meaningless minimizers.
inline MinimizeResult minimize_f(const PhaseField& u0, double eps,
                                 const ScalingSchedule& schedule, const DoubleWell& well,
                                 const PairKernelTable& table, const MinimizeOptions& opts = {}) {
  const double lambda = lambda_of_eps(schedule, eps);
  const double width = eps / lambda;
  if (width < 2.0 * u0.geom.max_spacing())
    throw std::invalid_argument(
        "minimize_f: interface width eps/lambda_eps = " + std::to_string(width) +
        " is below two grid cells (" + std::to_string(2.0 * u0.geom.max_spacing()) +
        "); refine the grid or increase eps");

  MinimizeResult res;
  res.field = u0;
  double energy = eval_f(res.field, eps, schedule, well, table).total;
  res.energy_log.push_back(energy);

  double step = opts.initial_step;
  for (long iter = 0; iter < opts.max_iterations; ++iter) {
    const auto g = grad_f(res.field, eps, schedule, well, table);
    double gnorm2 = 0.0, gmax = 0.0;
    for (double gi : g) {
      gnorm2 += gi * gi;
      gmax = std::max(gmax, std::abs(gi));
    }
    if (gmax <= opts.gradient_tolerance * (1.0 + std::abs(energy))) {
      res.converged = true;
      break;
    }
    PhaseField trial = res.field;
    bool accepted = false;
    double t = step;
    for (int back = 0; back < 60; ++back) {
      for (long i = 0; i < res.field.geom.size(); ++i)
        trial.values[i] = res.field.values[i] - t * g[i];
      const double trial_energy = eval_f(trial, eps, schedule, well, table).total;
      if (trial_energy <= energy - opts.armijo * t * gnorm2) {
        res.field.values = trial.values;
        energy = trial_energy;
        res.energy_log.push_back(energy);
        step = std::min(t * 2.0, 1e6);
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    ++res.iterations;
    if (!accepted) {
      res.converged = true;  // no descent direction at line-search resolution
      break;
    }
  }
  return res;
}

// Limit functional on two-valued BV fields: 2 (beta-alpha)^2 omega_{N-1} k * area.
inline double gamma_limit_f(double interface_area, double alpha, double beta, double k,
                            int dim) {
  if (!(interface_area >= 0))
    throw std::invalid_argument("gamma_limit_f: interface area >= 0 required");
  const double jump = beta - alpha;
  return 2.0 * jump * jump * unit_ball_area(dim - 1) * k * interface_area;
}

}  // namespace nlpt
