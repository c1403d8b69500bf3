#pragma once

#include "assouad/geometry.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace assouad {

/// Sampling plan for local cover counts.
///
/// Outer scales are R = 2^-(first_outer + i), i < depth. For each anchor and
/// R the inner scales are r = R / ratio for every power-of-two ratio in
/// [min_ratio, max_ratio].
struct AssouadPlan {
  double anchor_spacing = 0x1p-10;
  bool exhaustive = false; // every vertex is an anchor
  int first_outer = 3;
  int depth = 4;
  int min_ratio = 16;
  int max_ratio = 256;

  void validate() const;
  std::vector<double> outer_scales() const;
  std::vector<int> ratios() const;
};

/// One local count N(B(anchor, R) ∩ G, r).
///
/// `exponent` is the least-squares slope of log N against log(R/r) over the
/// record's (anchor, R) series, shared by all records of the series. Because
/// the lattices are nested, consecutive counts grow by at most a factor 4
/// per halving of r, which keeps the slope at or below 2.
struct AssouadRecord {
  double anchor_t = 0.0;
  double anchor_x = 0.0;
  double R = 0.0;
  double r = 0.0;
  std::int64_t N = 0;
  std::int64_t capacity = 0; // lattice cells meeting the ball
  double exponent = 0.0;
};

struct AssouadProfile {
  std::vector<AssouadRecord> records;
  double max_exponent = 0.0;
  /// Finest record of the series attaining max_exponent. N / capacity is
  /// its occupancy fraction, the empirical counterpart of the constant A.
  AssouadRecord witness;
};

/// Anchors on the graph: (t, g(t)) for t on the spacing grid within the
/// graph's range, or every vertex when exhaustive.
std::vector<Point2> plan_anchors(const Graph2D& g, const AssouadPlan& plan);

AssouadProfile assouad_profile(const Graph2D& g, const AssouadPlan& plan = {});
AssouadProfile assouad_profile(const Graph2D& g, std::span<const Point2> anchors, const AssouadPlan& plan);

} // namespace assouad
