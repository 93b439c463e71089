#pragma once

// Prebuilt experiment drivers emitting machine-readable tables: the
// Gamma-limit eps-scan, closed-form vs quadrature agreement sweeps, and
// census scaling studies.  Outputs are bit-identical across runs for a fixed
// spec and seed.

#include <ostream>
#include <vector>

#include "nlpt/bounds_lab.hpp"
#include "nlpt/io.hpp"
#include "nlpt/kernel_quad.hpp"
#include "nlpt/profiles.hpp"

namespace nlpt {

// ---------------------------------------------------------------------------
// Gamma-limit eps-scan

struct GammaScanSpec {
  std::vector<double> eps = default_eps_grid();
  double k = 1.0;
  double alpha = 0.0;
  double beta = 1.0;
  int dim = 2;
  double side = 1.0;    // R
  double height = 1.0;  // l
  double ramp_constant = 10.0;

  // geometric grid 10^-1, 10^-1.5, ..., 10^-4
  static std::vector<double> default_eps_grid() {
    std::vector<double> eps;
    for (int i = 0; i <= 6; ++i) eps.push_back(std::pow(10.0, -1.0 - 0.5 * i));
    return eps;
  }

  void validate() const {
    if (eps.empty()) throw std::invalid_argument("GammaScanSpec: eps list empty");
    for (std::size_t i = 0; i < eps.size(); ++i) {
      if (!(eps[i] > 0)) throw std::invalid_argument("GammaScanSpec: eps must be positive");
      if (i > 0 && !(eps[i] < eps[i - 1]))
        throw std::invalid_argument("GammaScanSpec: eps list must be strictly decreasing");
    }
    if (dim < 1 || dim > 3) throw std::invalid_argument("GammaScanSpec: N in {1,2,3}");
    if (!(alpha < beta)) throw std::invalid_argument("GammaScanSpec: alpha < beta");
    if (!(k > 0 && side > 0 && height > 0))
      throw std::invalid_argument("GammaScanSpec: k, R, l > 0");
  }
};

struct ScanRow {
  double eps = 0;
  double log_lambda = 0;
  double lambda = 0;  // overflows to inf for tiny eps; log_lambda stays exact
  double nonlocal_main = 0;
  double potential = 0;
  double ramp_cross = 0;
  double ramp_local = 0;
  double total = 0;
  double limit = 0;
  double deviation = 0;  // |total - limit| / limit
};

inline std::vector<ScanRow> gamma_scan(const GammaScanSpec& spec) {
  spec.validate();
  const ScalingSchedule schedule = ScalingSchedule::exponential(spec.k);
  const DoubleWell well = DoubleWell::quartic(spec.alpha, spec.beta);
  const double area = std::pow(spec.side, spec.dim - 1);  // flat axis-aligned interface
  const double limit = gamma_limit_f(area, spec.alpha, spec.beta, spec.k, spec.dim);

  std::vector<ScanRow> rows;
  rows.reserve(spec.eps.size());
  for (double eps : spec.eps) {
    RecoveryConfig cfg;
    cfg.side = spec.side;
    cfg.height = spec.height;
    cfg.eps = eps;
    cfg.schedule = schedule;
    cfg.well = well;
    cfg.dim = spec.dim;
    const RecoveryEnergy e = recovery_energy_semianalytic(cfg, spec.ramp_constant);
    ScanRow row;
    row.eps = eps;
    row.log_lambda = log_lambda_of_eps(schedule, eps);
    row.lambda = std::exp(row.log_lambda);
    row.nonlocal_main = e.nonlocal_main;
    row.potential = e.potential_bound;
    row.ramp_cross = e.ramp_cross_bound;
    row.ramp_local = e.ramp_local_bound;
    row.total = e.total;
    row.limit = limit;
    row.deviation = limit > 0 ? std::abs(e.total - limit) / limit : std::abs(e.total);
    rows.push_back(row);
  }
  return rows;
}

inline void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "eps,log_lambda,lambda,nonlocal_main,potential,ramp_cross,ramp_local,total,limit,"
        "deviation\n";
  for (const ScanRow& r : rows)
    os << format_double(r.eps) << ',' << format_double(r.log_lambda) << ','
       << format_double(r.lambda) << ',' << format_double(r.nonlocal_main) << ','
       << format_double(r.potential) << ',' << format_double(r.ramp_cross) << ','
       << format_double(r.ramp_local) << ',' << format_double(r.total) << ','
       << format_double(r.limit) << ',' << format_double(r.deviation) << '\n';
}

inline Json to_json(const std::vector<ScanRow>& rows) {
  Json out = Json::array();
  for (const ScanRow& r : rows)
    out.push_back(Json{{"eps", r.eps},
                       {"log_lambda", r.log_lambda},
                       {"lambda", r.lambda},
                       {"nonlocal_main", r.nonlocal_main},
                       {"potential", r.potential},
                       {"ramp_cross", r.ramp_cross},
                       {"ramp_local", r.ramp_local},
                       {"total", r.total},
                       {"limit", r.limit},
                       {"deviation", r.deviation}});
  return out;
}

// ---------------------------------------------------------------------------
// Closed form vs quadrature agreement sweep on random slab/cylinder configs

struct OracleSweepSpec {
  int count = 50;
  int dim = 2;
  std::uint64_t seed = 7;
  int resolution = 64;
  long samples = 200000;
  double trunc_factor = 8.0;  // lateral truncation at trunc_factor * l
  double rel_slack = 0.005;
  int threads = 1;

  void validate() const {
    if (count < 1) throw std::invalid_argument("OracleSweepSpec: count >= 1");
    if (dim != 2) throw std::invalid_argument("OracleSweepSpec: the sweep geometry is 2-D");
  }
};

struct SweepRow {
  double d = 0, l = 0, side = 0;
  double closed = 0;
  double midpoint = 0, midpoint_error = 0, tail = 0;
  double mc = 0, mc_error = 0;
  bool midpoint_ok = false, mc_ok = false;
};

inline std::vector<SweepRow> oracle_sweep(const OracleSweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.count);
  for (int trial = 0; trial < spec.count; ++trial) {
    CounterRng rng(spec.seed, 0x5000 + trial);
    SweepRow row;
    row.l = rng.uniform(0.5, 1.2);
    row.d = rng.uniform(0.08, 0.7) * row.l;
    row.side = rng.uniform(0.5, 1.5);
    const SlabPairConfig cfg(row.d, row.l, spec.dim);
    row.closed = cylinder_slab_energy(row.side, cfg);

    const double trunc = spec.trunc_factor * row.l;
    const Box a(2, make_vec({-0.5 * row.side, 0.5 * row.d}),
                make_vec({0.5 * row.side, 0.5 * row.l}));
    const Box b(2, make_vec({-trunc, -0.5 * row.l}), make_vec({trunc, -0.5 * row.d}));
    row.tail = slab_truncation_tail(trunc, cfg, row.side);

    QuadSpec qs;
    qs.resolution = spec.resolution;
    qs.samples = spec.samples;
    qs.seed = spec.seed + trial;
    qs.threads = spec.threads;
    const Region ra(a), rb(b);
    const EnergyEstimate mid = midpoint_pair_energy(ra, rb, std::nullopt, qs);
    row.midpoint = mid.value;
    row.midpoint_error = mid.error;
    qs.scheme = QuadScheme::MonteCarlo;
    const EnergyEstimate mc = mc_pair_energy(ra, rb, std::nullopt, qs);
    row.mc = mc.value;
    row.mc_error = mc.error;

    const double slack = spec.rel_slack * row.closed;
    row.midpoint_ok =
        std::abs(row.closed - row.midpoint) <= row.midpoint_error + row.tail + slack;
    row.mc_ok = std::abs(row.closed - row.mc) <= 3.0 * row.mc_error + row.tail + slack;
    rows.push_back(row);
  }
  return rows;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "d,l,side,closed,midpoint,midpoint_error,tail,mc,mc_error,midpoint_ok,mc_ok\n";
  for (const SweepRow& r : rows)
    os << format_double(r.d) << ',' << format_double(r.l) << ',' << format_double(r.side)
       << ',' << format_double(r.closed) << ',' << format_double(r.midpoint) << ','
       << format_double(r.midpoint_error) << ',' << format_double(r.tail) << ','
       << format_double(r.mc) << ',' << format_double(r.mc_error) << ','
       << (r.midpoint_ok ? 1 : 0) << ',' << (r.mc_ok ? 1 : 0) << '\n';
}

// ---------------------------------------------------------------------------
// Census scaling study: count * r^{N-1} across a range of cube sides

struct CensusRow {
  double r = 0;
  std::vector<long> counts;  // one per shift family 0..N
  double max_scaled = 0;     // max over shifts of count * r^{N-1}
};

inline std::vector<CensusRow> census_scaling(SetRef set, const Box& window,
                                             const std::vector<double>& sides, double a,
                                             int subsample = 8) {
  std::vector<CensusRow> rows;
  rows.reserve(sides.size());
  const int dim = window.dim;
  for (double r : sides) {
    CensusRow row;
    row.r = r;
    for (int shift = 0; shift <= dim; ++shift) {
      const long c = cube_census(set, LatticeFamily(r, shift, dim), a, window, subsample);
      row.counts.push_back(c);
      row.max_scaled = std::max(row.max_scaled, c * std::pow(r, dim - 1));
    }
    rows.push_back(row);
  }
  return rows;
}

inline void write_census_csv(std::ostream& os, const std::vector<CensusRow>& rows) {
  os << "r,max_scaled";
  if (!rows.empty())
    for (std::size_t i = 0; i < rows.front().counts.size(); ++i) os << ",count_shift" << i;
  os << '\n';
  for (const CensusRow& r : rows) {
    os << format_double(r.r) << ',' << format_double(r.max_scaled);
    for (long c : r.counts) os << ',' << c;
    os << '\n';
  }
}

}  // namespace nlpt
