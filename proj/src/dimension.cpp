#include "assouad/dimension.hpp"

#include "assouad/parallel.hpp"
#include "assouad/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace assouad {

namespace {

std::vector<double> dyadic_scales(ScaleRange range) {
  if (range.j1 - range.j0 < 3) {
    throw std::invalid_argument("box dimension needs at least 4 scales (j1 - j0 >= 3)");
  }
  std::vector<double> scales;
  for (int j = range.j0; j <= range.j1; ++j) {
    scales.push_back(std::ldexp(1.0, -j));
  }
  return scales;
}

template <class Count>
DimensionFit measure(ScaleRange range, Count&& count) {
  auto scales = dyadic_scales(range);
  std::vector<std::int64_t> counts(scales.size());
  parallel_for(static_cast<std::int64_t>(scales.size()),
               [&](std::int64_t i) { counts[static_cast<std::size_t>(i)] = count(scales[static_cast<std::size_t>(i)]); });
  return fit_dimension(std::move(scales), std::move(counts));
}

} // namespace

ScaleRange default_scale_range(std::size_t n_steps) {
  const int octaves = static_cast<int>(std::floor(std::log2(static_cast<double>(n_steps))));
  const int j1 = octaves - 6;
  if (j1 < 3) {
    throw std::invalid_argument("default_scale_range: need at least 2^9 steps");
  }
  return {std::max(0, j1 - 8), j1};
}

DimensionFit fit_dimension(std::vector<double> scales, std::vector<std::int64_t> counts) {
  if (scales.size() != counts.size()) {
    throw std::invalid_argument("fit_dimension: scales and counts differ in length");
  }
  if (scales.size() < 4) {
    throw std::invalid_argument("fit_dimension: need at least 4 scales");
  }
  std::vector<double> x(scales.size());
  std::vector<double> y(scales.size());
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0) || counts[i] <= 0) {
      throw std::invalid_argument("fit_dimension: scales and counts must be positive");
    }
    x[i] = std::log(1.0 / scales[i]);
    y[i] = std::log(static_cast<double>(counts[i]));
  }
  const LinearFit line = fit_line(x, y);
  return {std::move(scales), std::move(counts), line.slope, line.intercept, line.r_squared};
}

DimensionFit box_dimension(const Graph2D& g, ScaleRange range) {
  return measure(range, [&](double r) { return lattice_count(g, r); });
}

DimensionFit box_dimension(const PointSet& points, ScaleRange range) {
  if (points.empty()) {
    throw std::invalid_argument("box_dimension: empty point set");
  }
  return measure(range, [&](double r) { return lattice_count(points, r); });
}

DimensionFit box_dimension(const PolylineView& line, ScaleRange range) {
  if (line.vertex_count() == 0) {
    throw std::invalid_argument("box_dimension: empty polyline");
  }
  return measure(range, [&](double r) { return lattice_count(line, r); });
}

CountResult trail_count(const SamplePath& path, const Window& w) {
  if (path.dim() > 3) {
    throw UnsupportedError("trail_count: trails above three dimensions are not supported");
  }
  return count_polyline(PolylineView{path.values(), path.dim()}, w);
}

DimensionFit trail_box_dimension(const SamplePath& path, ScaleRange range) {
  if (path.dim() > 3) {
    throw UnsupportedError("trail_box_dimension: trails above three dimensions are not supported");
  }
  return box_dimension(PolylineView{path.values(), path.dim()}, range);
}

} // namespace assouad
