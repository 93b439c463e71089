#include <catch2/catch_amalgamated.hpp>

#include "nlpt/geometry.hpp"

using namespace nlpt;

namespace {

GridSet checkerboard(int cells, const Box& box) {
  GridGeometry geom = GridGeometry::uniform(box, cells);
  std::vector<std::uint8_t> member(geom.size());
  for (long i = 0; i < geom.size(); ++i) {
    const auto c = geom.unflatten(i);
    long parity = 0;
    for (int k = 0; k < geom.dim(); ++k) parity += c[k];
    member[i] = parity % 2 == 0;
  }
  return GridSet(geom, std::move(member));
}

}  // namespace

TEST_CASE("measures of primitives") {
  const Box unit(2, make_vec({0, 0}), make_vec({1, 1}));
  CHECK(measure(Region(unit)) == 1.0);

  const Cylinder cyl(Box(1, make_vec({0}), make_vec({1})), 0.0, 0.5);
  CHECK(measure(Region(cyl)) == 0.5);

  const BoxUnion two(2, {Box(2, make_vec({0, 0}), make_vec({1, 1})),
                         Box(2, make_vec({2, 0}), make_vec({3, 1}))});
  CHECK(measure(Region(two)) == 2.0);

  CHECK(std::isinf(measure(Region(Slab(2, 0.0, 1.0)))));
  CHECK(measure(Region(Slab(1, 0.25, 0.75))) == 0.5);
  CHECK(std::isinf(measure(Region(HalfSpace::below(2, 1, 0.0)))));

  SECTION("additivity on disjoint unions is exact") {
    CounterRng rng(99, 0);
    for (int t = 0; t < 25; ++t) {
      const double w1 = rng.uniform(0.1, 2.0), h1 = rng.uniform(0.1, 2.0);
      const double w2 = rng.uniform(0.1, 2.0), h2 = rng.uniform(0.1, 2.0);
      const Box b1(2, make_vec({0, 0}), make_vec({w1, h1}));
      const Box b2(2, make_vec({w1 + 0.5, 0}), make_vec({w1 + 0.5 + w2, h2}));
      CHECK(measure(Region(BoxUnion(2, {b1, b2}))) == b1.measure() + b2.measure());
    }
  }

  SECTION("overlapping unions are rejected") {
    CHECK_THROWS_AS(BoxUnion(2, {Box(2, make_vec({0, 0}), make_vec({1, 1})),
                                 Box(2, make_vec({0.5, 0.5}), make_vec({2, 2}))}),
                    std::invalid_argument);
  }
}

TEST_CASE("cell fractions") {
  const Box cube(2, make_vec({-0.5, -0.5}), make_vec({0.5, 0.5}));

  SECTION("half-space through the cube center") {
    const Region hs(HalfSpace::below(2, 1, 0.0));
    CHECK(cell_fraction(hs, cube) == 0.5);
  }

  SECTION("cube fully inside") {
    const Region big(Box(2, make_vec({-2, -2}), make_vec({2, 2})));
    CHECK(cell_fraction(big, cube) == 1.0);
  }

  SECTION("diagonal half-plane x2 < x1 against (0,r)^2 is exactly one half") {
    const double r = 0.3;
    const Region diag(HalfSpace(2, make_vec({-1, 1}), 0.0));
    const Box q(2, make_vec({0, 0}), make_vec({r, r}));
    CHECK(cell_fraction(diag, q) == Catch::Approx(0.5).epsilon(1e-14));
  }

  SECTION("half-space fractions are exact in 3-D too") {
    const Region hs(HalfSpace(3, make_vec({1, 1, 1}), 1.5));
    const Box q(3, make_vec({0, 0, 0}), make_vec({1, 1, 1}));
    CHECK(cell_fraction(hs, q) == Catch::Approx(0.5).epsilon(1e-13));
  }

  SECTION("grid sets demand containment") {
    GridSet gs = GridSet::from_predicate(
        GridGeometry::uniform(Box(2, make_vec({0, 0}), make_vec({1, 1})), 8),
        [](const Vec& x) { return x[1] < 0.5; });
    CHECK(cell_fraction(gs, Box(2, make_vec({0.25, 0.25}), make_vec({0.75, 0.75}))) == 0.5);
    CHECK_THROWS_AS(cell_fraction(gs, Box(2, make_vec({0.5, 0.5}), make_vec({1.5, 1.5}))),
                    std::domain_error);
  }
}

TEST_CASE("cube census") {
  const Box window(2, make_vec({0, 0}), make_vec({1, 1}));
  const long m = 8;
  const double r = 1.0 / m;
  // boundary at r/2: on the faces of the shift-0 family, on the centers of the
  // e_N-shifted family
  const Region hs(HalfSpace::below(2, 1, 0.5 * r));

  SECTION("face-aligned half-space: no intermediate fractions at shift 0") {
    CHECK(cube_census(hs, LatticeFamily(r, 0, 2), 0.1, window) == 0);
  }

  SECTION("half-cell shift along e_N: a full straddling row") {
    const LatticeFamily fam(r, 2, 2);
    CHECK(cube_census(hs, fam, 0.1, window) == m - 1);
    // each straddling cube sits exactly half inside
    std::array<long, kMaxDim> h{1, 0, 0};
    CHECK(cell_fraction(hs, fam.cube(h)) == 0.5);
  }

  SECTION("full-window set") {
    const Region all(Box(2, make_vec({-1, -1}), make_vec({2, 2})));
    CHECK(cube_census(all, LatticeFamily(r, 0, 2), 0.1, window) == 0);
  }

  SECTION("threshold domain") {
    CHECK_THROWS_AS(cube_census(hs, LatticeFamily(r, 0, 2), 0.3, window),
                    std::invalid_argument);
    CHECK_THROWS_AS(cube_census(hs, LatticeFamily(r, 0, 2), 0.0, window),
                    std::invalid_argument);
  }

  SECTION("monotone nonincreasing in a") {
    const Region ball(Ball(2, make_vec({0.5, 0.5}), 0.25));
    long prev = cube_census(ball, LatticeFamily(1.0 / 16, 0, 2), 0.02, window);
    for (double a : {0.05, 0.1, 0.2, 0.24}) {
      const long c = cube_census(ball, LatticeFamily(1.0 / 16, 0, 2), a, window);
      CHECK(c <= prev);
      prev = c;
    }
  }
}

TEST_CASE("census approximation") {
  const Box window(2, make_vec({0, 0}), make_vec({1, 1}));

  SECTION("half-space at r = 1/8: lower half, interior perimeter 1") {
    const Region hs(HalfSpace::below(2, 1, 0.5));
    const auto approx = census_approximation(hs, 1.0 / 8, 0.1, window);
    CHECK(approx.perimeter == Catch::Approx(1.0).epsilon(1e-12));
    // A_r is the half-space below the last full row of cubes: x2 < 7/16
    CHECK(approx.set.overlap(window) == Catch::Approx(7.0 / 16.0).epsilon(1e-12));
  }

  SECTION("empty set") {
    const Region none(BoxUnion(2, {}));
    const auto approx = census_approximation(none, 1.0 / 8, 0.1, window);
    CHECK(approx.perimeter == 0.0);
    CHECK(approx.set.measure() == 0.0);
  }

  SECTION("ball staircase perimeter approaches the taxicab length 8R") {
    const Region ball(Ball(2, make_vec({0.5, 0.5}), 0.25));
    const auto approx = census_approximation(ball, 1.0 / 64, 0.1, window);
    // the boundary of a union of axis-aligned cubes around a disc carries the
    // taxicab length 2 = 8 * 0.25, not the Euclidean circumference pi/2
    CHECK(approx.perimeter == Catch::Approx(2.0).epsilon(0.06));
  }

  SECTION("perimeter against the face-mapping census bound") {
    const Region ball(Ball(2, make_vec({0.5, 0.5}), 0.25));
    const double a = 0.1;
    for (double r : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
      const auto approx = census_approximation(ball, r, a, window);
      long censuses = 0;
      for (int shift = 0; shift <= 2; ++shift)
        censuses += cube_census(ball, LatticeFamily(r, shift, 2), a, window);
      const double bound = 2.0 * 4.0 * 3.0 * r * censuses;  // 2 * 2^N * (N+1) * r^{N-1} * sum
      CHECK(approx.perimeter <= bound);
    }
  }

  SECTION("approximation converges in measure") {
    const Region ball(Ball(2, make_vec({0.5, 0.5}), 0.25));
    const Region hs(HalfSpace::below(2, 1, 0.5));
    for (const Region* set : {&ball, &hs}) {
      double prev = 1e9;
      for (double r : {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64}) {
        const auto approx = census_approximation(*set, r, 0.1, window);
        // |A Δ A_r| within the window
        const double a_meas = overlap_volume(*set, window, 32);
        const double ar_meas = approx.set.overlap(window);
        // intersect by summing overlap of A with every member cube clipped
        double both = 0.0;
        for (long i = 0; i < approx.set.geom.size(); ++i) {
          if (!approx.set.member[i]) continue;
          Box cell = approx.set.geom.cell_box(i);
          Vec lo = cell.lo, hi = cell.hi;
          bool empty = false;
          for (int k = 0; k < 2; ++k) {
            lo[k] = std::max(lo[k], window.lo[k]);
            hi[k] = std::min(hi[k], window.hi[k]);
            if (!(lo[k] < hi[k])) empty = true;
          }
          if (!empty) both += overlap_volume(*set, Box(2, lo, hi), 32);
        }
        const double sym_diff = a_meas + ar_meas - 2.0 * both;
        CHECK(sym_diff < prev);
        prev = sym_diff;
      }
      CHECK(prev < 0.02);
    }
  }
}

TEST_CASE("checkerboard census blows up as expected") {
  const Box window(2, make_vec({0, 0}), make_vec({1, 1}));
  const GridSet board = checkerboard(128, window);
  double prev = 0.0;
  for (double r : {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    const long c = cube_census(board, LatticeFamily(r, 0, 2), 0.1, window);
    const double scaled = c * r;
    CHECK(scaled > prev);  // grows as r drops toward the pattern scale
    prev = scaled;
  }
}

TEST_CASE("lattice family shifts") {
  const LatticeFamily f0(0.5, 0, 2);
  std::array<long, kMaxDim> h{1, 1, 0};
  CHECK(f0.center(h)[0] == 0.5);
  const LatticeFamily f1(0.5, 1, 2);
  CHECK(f1.center(h)[0] == 0.75);
  CHECK(f1.center(h)[1] == 0.5);
  CHECK_THROWS_AS(LatticeFamily(0.5, 3, 2), std::invalid_argument);
}
