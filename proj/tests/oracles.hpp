#pragma once

// Test-only oracles, independent of the library's evaluation paths: plain
// tensor-midpoint quadrature of the pair energy and a few direct-counting
// helpers.  These take no shortcuts on purpose.

#include <cmath>
#include <vector>

#include "nlpt/geometry.hpp"

namespace nlpt::testing {

// Brute-force midpoint quadrature of the pair energy of two boxes under the
// kernel |y-x|^{-(dim+1)}, with n cells per axis on each box.  No adaptivity,
// no refinement: an independent route for cross-checks.
inline double brute_force_box_pair_energy(const Box& a, const Box& b, long n) {
  const int dim = a.dim;
  std::vector<Vec> xa, xb;
  std::vector<double> wa, wb;
  const auto tabulate = [&](const Box& box, std::vector<Vec>& xs, std::vector<double>& ws) {
    std::array<long, kMaxDim> counts{1, 1, 1};
    for (int i = 0; i < dim; ++i) counts[i] = n;
    GridGeometry g(box, counts);
    for (long i = 0; i < g.size(); ++i) xs.push_back(g.cell_center(i));
    ws.assign(xs.size(), g.cell_volume());
  };
  tabulate(a, xa, wa);
  tabulate(b, xb, wb);
  std::vector<double> rows(xa.size(), 0.0);
  for (std::size_t i = 0; i < xa.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < xb.size(); ++j)
      row += pair_kernel(distance(xa[i], xb[j]), dim) * wa[i] * wb[j];
    rows[i] = row;
  }
  return pairwise_sum(rows);
}

// 1-D pair energy of two intervals under |y-x|^{-2} by plain midpoint rule.
inline double brute_force_interval_pair_energy(double a_lo, double a_hi, double b_lo,
                                               double b_hi, long n) {
  const double ha = (a_hi - a_lo) / n, hb = (b_hi - b_lo) / n;
  std::vector<double> rows(n, 0.0);
  for (long i = 0; i < n; ++i) {
    const double x = a_lo + (i + 0.5) * ha;
    double row = 0.0;
    for (long j = 0; j < n; ++j) {
      const double y = b_lo + (j + 0.5) * hb;
      row += 1.0 / ((x - y) * (x - y)) * ha * hb;
    }
    rows[i] = row;
  }
  return pairwise_sum(rows);
}

}  // namespace nlpt::testing
