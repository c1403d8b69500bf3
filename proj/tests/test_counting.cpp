#include "assouad/counting.hpp"
#include "assouad/predicates.hpp"
#include "assouad/rng.hpp"
#include "random_geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace assouad;
using namespace random_geometry;

namespace {

// Independent cover-count oracle: every lattice cell near the ball, every segment.
std::int64_t brute_force_cover(const Graph2D& g, Point2 c, double R, double r) {
  const auto lo_i = static_cast<std::int64_t>(std::floor((c.x - R) / r)) - 1;
  const auto hi_i = static_cast<std::int64_t>(std::floor((c.x + R) / r)) + 1;
  const auto lo_j = static_cast<std::int64_t>(std::floor((c.y - R) / r)) - 1;
  const auto hi_j = static_cast<std::int64_t>(std::floor((c.y + R) / r)) + 1;
  std::int64_t count = 0;
  for (auto i = lo_i; i <= hi_i; ++i) {
    for (auto j = lo_j; j <= hi_j; ++j) {
      const std::array<double, 2> lo{r * static_cast<double>(i), r * static_cast<double>(j)};
      const std::array<double, 2> hi{r * static_cast<double>(i + 1), r * static_cast<double>(j + 1)};
      const double dx = std::max({lo[0] - c.x, 0.0, c.x - hi[0]});
      const double dy = std::max({lo[1] - c.y, 0.0, c.y - hi[1]});
      if (dx * dx + dy * dy >= R * R) continue;
      for (std::size_t s = 0; s + 1 < g.vertex_count(); ++s) {
        const std::array<double, 2> p{g.vertex(s).x, g.vertex(s).y};
        const std::array<double, 2> q{g.vertex(s + 1).x, g.vertex(s + 1).y};
        if (segment_meets_box(p, q, lo, hi)) {
          ++count;
          break;
        }
      }
    }
  }
  return count;
}

} // namespace

// ---------------------------------------------------------------------------
// count_window examples

TEST(CountWindow, ConstantFixtureHitsBottomRow) {
  for (std::int64_t n : {1, 2, 3, 7, 16}) {
    const CountResult res = count_window(fixtures::constant(), Window::square({0.0, 0.0}, 1.0, n));
    EXPECT_EQ(res.count, n);
    for (std::int64_t i = 0; i < n; ++i) {
      const std::array<std::int64_t, 2> idx{i, 0};
      EXPECT_TRUE(res.occupied(idx));
    }
  }
}

TEST(CountWindow, DiagonalIsThreeNMinusTwo) {
  const Graph2D diag = fixtures::line(1.0, 1);
  EXPECT_EQ(count_window(diag, Window::square({0.0, 0.0}, 1.0, 3)).count, 7);
  EXPECT_EQ(brute_force_count(diag, Window::square({0.0, 0.0}, 1.0, 3)).count, 7);
  for (std::int64_t n = 1; n <= 12; ++n) {
    EXPECT_EQ(count_window(diag, Window::square({0.0, 0.0}, 1.0, n)).count, 3 * n - 2) << n;
  }
}

TEST(CountWindow, ZigzagFillsWindow) {
  const Window w = Window::square({0.0, 0.0}, 1.0, 6);
  EXPECT_EQ(count_window(fixtures::zigzag(w), w).count, 36);
}

TEST(CountWindow, MaskMatchesCount) {
  RandomStream rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph2D g = random_graph(rng);
    const Window w = random_window(rng);
    const CountResult res = count_window(g, w);
    EXPECT_EQ(res.count, std::count(res.mask.begin(), res.mask.end(), 1));
    EXPECT_LE(res.count, w.cell_count());
  }
}

TEST(BruteForceCount, AgreesWithSweepOnRandomPolylines) {
  RandomStream rng(2024);
  int disagreements = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Graph2D g = random_graph(rng);
    const Window w = random_window(rng);
    const CountResult fast = count_window(g, w);
    const CountResult slow = brute_force_count(g, w);
    if (fast.mask != slow.mask) {
      ++disagreements;
      ADD_FAILURE() << "trial " << trial << ": sweep " << fast.count << " vs brute force " << slow.count;
    }
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(BruteForceCount, GraphBelowWindowIsZero) {
  EXPECT_EQ(brute_force_count(fixtures::constant(), Window::square({0.0, 0.5}, 1.0, 4)).count, 0);
  EXPECT_EQ(count_window(fixtures::constant(), Window::square({0.0, 0.5}, 1.0, 4)).count, 0);
}

TEST(BruteForceCount, SharedEdgeCountsBothCells) {
  const Graph2D g({{0.0, 0.5}, {1.0, 0.5}});
  EXPECT_EQ(brute_force_count(g, Window::square({0.0, 0.0}, 1.0, 2)).count, 4);
  EXPECT_EQ(count_window(g, Window::square({0.0, 0.0}, 1.0, 2)).count, 4);
}

TEST(BruteForceCount, OversizeRejected) {
  EXPECT_THROW(brute_force_count(fixtures::line(), Window::square({0.0, 0.0}, 1.0, 101)), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Properties

TEST(CountWindow, RefinementNeverDecreases) {
  RandomStream rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph2D g = random_graph(rng);
    Window w = random_window(rng);
    w.sides = {0.5, 1.0};
    w.anchor = {std::round(w.anchor[0] * 8) / 8, std::round(w.anchor[1] * 8) / 8};
    w.subdivisions = {4, 4};
    Window fine = w;
    fine.subdivisions = {8, 8};
    EXPECT_LE(count_window(g, w).count, count_window(g, fine).count);
  }
}

TEST(CountWindow, AffineCovariance) {
  // Dyadic path, window and subdivisions keep the affine map exact.
  RandomStream rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> values(65);
    for (std::size_t k = 1; k < values.size(); ++k) {
      values[k] = values[k - 1] + std::round((rng.uniform() - 0.5) * 16.0) / 64.0;
    }
    const SamplePath path(ProcessSpec::deterministic(), 1.0 / 64, 1, values, 0);
    const Graph2D g = build_graph(path);
    const double a = 0.25;
    const double b = 0.75;
    for (double beta : {1.0, 0.5}) {
      const Window w = Window::rect({0.25 + std::round(rng.uniform() * 8) / 32, std::round(rng.uniform() * 8 - 4) / 16},
                                    0.25, 0.5, std::int64_t{1} << static_cast<int>(rng.uniform() * 4),
                                    std::int64_t{1} << static_cast<int>(rng.uniform() * 4));
      const Graph2D mapped = apply_scaling_map(g, a, b, beta);
      const Window mw = map_window(w, a, g.value_at(a), b - a, beta);
      EXPECT_EQ(count_window(g, w).mask, count_window(mapped, mw).mask) << "trial " << trial;
    }
  }
}

TEST(CountWindow, FunctionSpanningWindowHitsEveryColumn) {
  RandomStream rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph2D g = build_graph(gen_wiener(512, derive_seed(7, trial, 0)));
    const Box2 box = g.bbox();
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng.uniform() * 30);
    const Window w = Window::rect(box.lo, box.hi.x - box.lo.x, box.hi.y - box.lo.y, n, n);
    const std::int64_t count = count_window(g, w).count;
    EXPECT_GE(count, n);
    EXPECT_LE(count, n * n);
  }
}

// ---------------------------------------------------------------------------
// Polylines in 1-3 dimensions

TEST(CountPolyline, AgreesWithBruteForce) {
  RandomStream rng(8);
  for (std::size_t dim : {1u, 2u, 3u}) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto coords = random_polyline(rng, dim);
      const PolylineView line{coords, dim};
      const Window w = random_window(rng, dim, dim == 3 ? 6 : 8);
      EXPECT_EQ(count_polyline(line, w).mask, brute_force_polyline(line, w).mask) << "dim " << dim << " trial " << trial;
    }
  }
}

TEST(CountPolyline, GraphPolylineMatchesSweep) {
  RandomStream rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph2D g = random_graph(rng);
    std::vector<double> coords;
    for (const auto& v : g.vertices()) {
      coords.push_back(v.x);
      coords.push_back(v.y);
    }
    const Window w = random_window(rng);
    EXPECT_EQ(count_polyline({coords, 2}, w).mask, count_window(g, w).mask);
  }
}

TEST(CountPolyline, DimensionChecks) {
  const std::vector<double> coords(8, 0.0);
  EXPECT_THROW(count_polyline({coords, 4}, Window{{0, 0, 0, 0}, {1, 1, 1, 1}, {1, 1, 1, 1}}), UnsupportedError);
  EXPECT_THROW(count_polyline({coords, 2}, Window{{0, 0, 0}, {1, 1, 1}, {1, 1, 1}}), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Lattice counts

TEST(LatticeCount, GraphMatchesAlignedWindow) {
  RandomStream rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph2D g = random_graph(rng);
    const double r = std::ldexp(1.0, -static_cast<int>(2 + rng.uniform() * 3));
    const Box2 box = g.bbox();
    const double x0 = (std::floor(box.lo.x / r) - 1) * r;
    const double y0 = (std::floor(box.lo.y / r) - 1) * r;
    // Power-of-two subdivisions keep window edges on the lattice.
    std::int64_t n = 1;
    while (x0 + static_cast<double>(n) * r <= box.hi.x + r || y0 + static_cast<double>(n) * r <= box.hi.y + r) n *= 2;
    const Window w = Window::square({x0, y0}, static_cast<double>(n) * r, n);
    EXPECT_EQ(lattice_count(g, r), count_window(g, w).count) << "trial " << trial;
  }
}

TEST(LatticeCount, PolylineViewMatchesGraph) {
  RandomStream rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph2D g = random_graph(rng);
    std::vector<double> coords;
    for (const auto& v : g.vertices()) {
      coords.push_back(v.x);
      coords.push_back(v.y);
    }
    const double r = std::ldexp(1.0, -static_cast<int>(1 + rng.uniform() * 5));
    EXPECT_EQ(lattice_count(PolylineView{coords, 2}, r), lattice_count(g, r));
  }
}

TEST(LatticeCount, PointsOnLatticeCornersTouchFourCells) {
  EXPECT_EQ(lattice_count(PointSet{{0.0, 0.0}}, 1.0), 4);
  EXPECT_EQ(lattice_count(PointSet{{0.5, 0.5}}, 1.0), 1);
  EXPECT_EQ(lattice_count(PointSet{{0.5, 0.5}, {0.25, 0.75}}, 1.0), 1);
  EXPECT_EQ(lattice_count(PointSet{{0.5, 0.0}}, 1.0), 2);
}

// ---------------------------------------------------------------------------
// Cover counts

TEST(CountCover, PointAtOrigin) { EXPECT_EQ(count_cover(PointSet{{0.0, 0.0}}, {0.0, 0.0}, 1.0, 1.0), 4); }

TEST(CountCover, HorizontalUnitSegment) {
  const Graph2D g({{0.0, 0.0}, {1.0, 0.0}});
  EXPECT_EQ(count_cover(g, {0.5, 0.0}, 0.5, 0.25), 8);
  EXPECT_EQ(brute_force_cover(g, {0.5, 0.0}, 0.5, 0.25), 8);
}

TEST(CountCover, EmptyGeometry) { EXPECT_EQ(count_cover(PointSet{}, {0.0, 0.0}, 1.0, 0.5), 0); }

TEST(CountCover, InnerScaleAboveOuterRejected) {
  EXPECT_THROW(count_cover(fixtures::line(), {0.0, 0.0}, 0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(count_cover(PointSet{}, {0.0, 0.0}, 0.5, 1.0), std::invalid_argument);
}

TEST(CountCover, AgreesWithBruteForce) {
  RandomStream rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph2D g = random_graph(rng);
    const Point2 c = g.vertex(static_cast<std::size_t>(rng.uniform() * static_cast<double>(g.vertex_count())));
    const double R = std::ldexp(1.0, -static_cast<int>(rng.uniform() * 3));
    const double r = R * std::ldexp(1.0, -static_cast<int>(rng.uniform() * 5));
    EXPECT_EQ(count_cover(g, c, R, r), brute_force_cover(g, c, R, r)) << "trial " << trial;
  }
}

TEST(CoverSeries, EachLevelMatchesCountCover) {
  RandomStream rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph2D g = build_graph(gen_wiener(4096, derive_seed(13, trial, 0)));
    const Point2 c = g.vertex(static_cast<std::size_t>(rng.uniform() * 4096));
    const double R = std::ldexp(1.0, -static_cast<int>(2 + rng.uniform() * 4));
    std::vector<std::int64_t> capacity;
    const auto series = cover_series(g, c, R, R / 64, 5, &capacity);
    for (int m = 0; m < 5; ++m) {
      const double r = std::ldexp(R / 64, m);
      EXPECT_EQ(series[m], count_cover(g, c, R, r)) << "trial " << trial << " level " << m;
      EXPECT_LE(series[m], capacity[m]);
    }
  }
}
