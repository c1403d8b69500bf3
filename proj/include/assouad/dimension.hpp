#pragma once

#include "assouad/counting.hpp"
#include "assouad/geometry.hpp"
#include "assouad/process.hpp"

#include <cstdint>
#include <vector>

namespace assouad {

/// Least-squares fit of log N(r) against log(1/r) over dyadic scales.
/// `intercept` is log C in N(r) ~ C r^(-slope).
struct DimensionFit {
  std::vector<double> scales;
  std::vector<std::int64_t> counts;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Scales r = 2^-j for j = j0..j1.
struct ScaleRange {
  int j0 = 0;
  int j1 = 0;
};

/// Default fit range for a path with n_steps samples: the finest scale sits
/// six octaves above the time resolution and the range spans eight octaves,
/// so 2^20 steps give j = 6..14.
ScaleRange default_scale_range(std::size_t n_steps);

/// Fits counts that were already measured. Needs >= 4 scales and positive
/// counts.
DimensionFit fit_dimension(std::vector<double> scales, std::vector<std::int64_t> counts);

DimensionFit box_dimension(const Graph2D& g, ScaleRange range);
DimensionFit box_dimension(const PointSet& points, ScaleRange range);
DimensionFit box_dimension(const PolylineView& line, ScaleRange range);

/// Occupancy of a d-dimensional window (d = 1..3) by the trail of a path,
/// i.e. its image set joined by straight segments.
CountResult trail_count(const SamplePath& path, const Window& w);

/// Box dimension of the trail of a path.
DimensionFit trail_box_dimension(const SamplePath& path, ScaleRange range);

} // namespace assouad
