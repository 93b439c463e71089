#pragma once

// Recovery-sequence construction on a cylinder Q'_R x (-l/2, l/2): the linear
// ramp of width eps/lambda_eps between the wells, its sharp two-valued limit,
// and the semi-analytic evaluation of its energy.

#include <cmath>

#include "nlpt/functional.hpp"
#include "nlpt/geometry.hpp"
#include "nlpt/kernel_exact.hpp"

namespace nlpt {

struct RecoveryConfig {
  double side = 1.0;    // R
  double height = 1.0;  // l
  double eps = 0.1;
  ScalingSchedule schedule = ScalingSchedule::exponential(1.0);
  DoubleWell well = DoubleWell::quartic();
  int dim = 2;

  void validate() const {
    if (!(side > 0 && height > 0)) throw std::invalid_argument("RecoveryConfig: R, l > 0");
    if (!(eps > 0)) throw std::invalid_argument("RecoveryConfig: eps > 0");
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("RecoveryConfig: dim in 1..3");
    if (!(interface_width() < height))
      throw std::invalid_argument("RecoveryConfig: interface width eps/lambda_eps must fit in l");
  }

  // eps / lambda_eps, evaluated from the log to survive huge lambda_eps
  // (underflows to zero far below any grid scale, which is the point).
  double interface_width() const { return eps * std::exp(-log_lambda_of_eps(schedule, eps)); }

  Box domain() const {
    Vec lo{0, 0, 0}, hi{0, 0, 0};
    for (int i = 0; i < dim - 1; ++i) {
      lo[i] = -0.5 * side;
      hi[i] = 0.5 * side;
    }
    lo[dim - 1] = -0.5 * height;
    hi[dim - 1] = 0.5 * height;
    return Box(dim, lo, hi);
  }
};

// beta below the ramp, alpha above, affine across (-w/2, w/2), w = eps/lambda_eps.
inline double recovery_profile_value(const RecoveryConfig& cfg, double y_n) {
  cfg.validate();
  if (!(y_n > -0.5 * cfg.height && y_n < 0.5 * cfg.height))
    throw std::domain_error("recovery_profile_value: y_N outside (-l/2, l/2)");
  const double half_w = 0.5 * cfg.interface_width();
  const double alpha = cfg.well.alpha, beta = cfg.well.beta;
  if (y_n <= -half_w) return beta;
  if (y_n >= half_w) return alpha;
  return beta + (alpha - beta) * (y_n + half_w) / (2.0 * half_w);
}

// Cell-center sampling of the recovery profile on the cylinder.  When the
// ramp is narrower than a cell the field degenerates to the sharp step.
inline PhaseField recovery_field(const RecoveryConfig& cfg, long cells_per_axis) {
  cfg.validate();
  const GridGeometry geom = GridGeometry::uniform(cfg.domain(), cells_per_axis);
  std::vector<double> values(geom.size());
  for (long i = 0; i < geom.size(); ++i)
    values[i] = recovery_profile_value(cfg, geom.cell_center(i)[cfg.dim - 1]);
  return PhaseField(geom, std::move(values));
}

// Two-valued field: beta below the interface height, alpha above.
inline PhaseField sharp_interface_field(double interface_height, const GridGeometry& geom,
                                        const DoubleWell& well) {
  const int ax = geom.dim() - 1;
  if (!(interface_height >= geom.box.lo[ax] && interface_height <= geom.box.hi[ax]))
    throw std::invalid_argument("sharp_interface_field: height outside the box");
  std::vector<double> values(geom.size());
  for (long i = 0; i < geom.size(); ++i)
    values[i] = geom.cell_center(i)[ax] < interface_height ? well.beta : well.alpha;
  return PhaseField(geom, std::move(values));
}

// Interface area of an axis-aligned flat cut: the base measure of the box.
inline double flat_interface_area(const GridGeometry& geom) {
  double a = 1.0;
  for (int i = 0; i < geom.dim() - 1; ++i) a *= geom.box.extent(i);
  return a;
}

// Semi-analytic upper estimate of F_eps for the recovery profile.  The ramp
// width eps e^{-k/eps} sits far below any grid resolution already at moderate
// eps, so the nonlocal main term is evaluated through the closed slab form at
// gap d(eps) = eps/lambda_eps; the ramp cross terms enter as the proof's
// O(eps) bounds with an explicit constant, reported separately.
struct RecoveryEnergy {
  double nonlocal_main = 0;     // 2 eps (beta-alpha)^2 R^{N-1} omega phi(d(eps), l)
  double potential_bound = 0;   // lambda_eps maxW R^{N-1} d(eps) = eps maxW R^{N-1}
  double ramp_cross_bound = 0;  // eps C (beta-alpha)^2 R^{2(N-1)}
  double ramp_local_bound = 0;  // eps C (beta-alpha)^2 R^{N-1}
  double total = 0;
};

inline RecoveryEnergy recovery_energy_semianalytic(const RecoveryConfig& cfg,
                                                   double ramp_constant = 10.0) {
  cfg.validate();
  if (!(ramp_constant >= 0))
    throw std::invalid_argument("recovery_energy_semianalytic: ramp constant >= 0");
  const double d_eps = cfg.interface_width();
  const double jump = cfg.well.beta - cfg.well.alpha;
  const double rn = std::pow(cfg.side, cfg.dim - 1);
  const double omega = unit_ball_area(cfg.dim - 1);

  // phi(d(eps), l) with ln(d/2) expanded through ln(lambda_eps): the width
  // itself underflows long before the logarithms lose accuracy.
  const double log_half_d =
      std::log(cfg.eps) - std::log(2.0) - log_lambda_of_eps(cfg.schedule, cfg.eps);
  const double phi = 2.0 * std::log(0.25 * (cfg.height + d_eps)) - log_half_d -
                     std::log(0.5 * cfg.height);

  RecoveryEnergy out;
  out.nonlocal_main = 2.0 * cfg.eps * jump * jump * rn * omega * phi;
  // lambda_eps * maxW * R^{N-1} * d(eps) collapses to eps * maxW * R^{N-1}
  out.potential_bound = cfg.eps * cfg.well.max_between() * rn;
  out.ramp_cross_bound =
      cfg.eps * ramp_constant * jump * jump * std::pow(cfg.side, 2 * (cfg.dim - 1));
  out.ramp_local_bound = cfg.eps * ramp_constant * jump * jump * rn;
  out.total =
      out.nonlocal_main + out.potential_bound + out.ramp_cross_bound + out.ramp_local_bound;
  return out;
}

// Exact L1 distance between the recovery profile and its sharp limit on the
// cylinder: (beta-alpha) R^{N-1} w/4 with w = eps/lambda_eps.
inline double recovery_sharp_l1_distance(const RecoveryConfig& cfg) {
  cfg.validate();
  const double jump = cfg.well.beta - cfg.well.alpha;
  return 0.25 * jump * std::pow(cfg.side, cfg.dim - 1) * cfg.interface_width();
}

// Grid-sampled L1 distance between two fields on the same geometry.
inline double field_l1_distance(const PhaseField& a, const PhaseField& b) {
  if (a.geom.size() != b.geom.size())
    throw std::invalid_argument("field_l1_distance: geometry mismatch");
  std::vector<double> terms(a.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i)
    terms[i] = std::abs(a.values[i] - b.values[i]);
  return a.geom.cell_volume() * pairwise_sum(terms);
}

// Volume bound on the edge-interpolation region of the polyhedral recovery
// assembly: C eps^2 / lambda_eps^2.  The interpolant itself only matters
// through this vanishing bound.
inline double interpolation_region_volume_bound(const RecoveryConfig& cfg,
                                                double constant = 10.0) {
  const double w = cfg.interface_width();
  return constant * w * w;
}

}  // namespace nlpt
