#pragma once

#include "assouad/process.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace assouad {

struct Point2 {
  double x = 0.0; // time for graphs
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

struct Box2 {
  Point2 lo;
  Point2 hi;
  bool operator==(const Box2&) const = default;
};

/// Polyline graph of a path: consecutive vertices are joined by segments, so
/// the chain is connected by construction. Abscissae are nondecreasing; two
/// vertices sharing an abscissa form a vertical segment (a jump join).
class Graph2D {
public:
  explicit Graph2D(std::vector<Point2> vertices);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t segment_count() const { return vertices_.size() - 1; }
  const std::vector<Point2>& vertices() const { return vertices_; }
  const Point2& vertex(std::size_t i) const { return vertices_[i]; }
  const Box2& bbox() const { return bbox_; }

  /// Graph value at abscissa t: the first vertex at t if one exists,
  /// otherwise linear interpolation on the segment containing t.
  double value_at(double t) const;

private:
  std::vector<Point2> vertices_;
  Box2 bbox_;
};

/// Finite set of points (e.g. the origin fixture of count_cover).
using PointSet = std::vector<Point2>;

/// Polyline graph through the samples (time, coordinate) of `path`.
Graph2D build_graph(const SamplePath& path, std::size_t coordinate = 0);

/// Uniform partition of one coordinate axis. Cell k is the closed interval
/// [edge(k), edge(k+1)] with edge(k) = origin + span * (k / n); edge(0) and
/// edge(n) are exactly origin and origin + span. A lattice of step r is the
/// axis {0, r, 1} with unbounded cell indices.
struct Axis {
  double origin = 0.0;
  double span = 1.0;
  std::int64_t n = 1;
  bool bounded = true;

  static Axis lattice(double step) { return Axis{0.0, step, 1, false}; }

  double edge(std::int64_t k) const {
    return origin + span * (static_cast<double>(k) / static_cast<double>(n));
  }
  /// Smallest cell index whose closed cell reaches up to v (edge(k+1) >= v).
  std::int64_t first_reaching(double v) const;
  /// Largest cell index whose closed cell starts at or below v (edge(k) <= v).
  std::int64_t last_reaching(double v) const;
  /// Cells meeting [a, b], clamped to [0, n) when bounded; empty if last < first.
  std::pair<std::int64_t, std::int64_t> cells_meeting(double a, double b) const;
};

/// Anchor a, sides R_1..R_d and subdivisions n_1..n_d of a window partition.
struct Window {
  std::vector<double> anchor;
  std::vector<double> sides;
  std::vector<std::int64_t> subdivisions;

  static Window square(Point2 anchor, double side, std::int64_t n);
  static Window rect(Point2 anchor, double side_x, double side_y, std::int64_t nx, std::int64_t ny);

  std::size_t dim() const { return anchor.size(); }
  std::int64_t cell_count() const;
  Axis axis(std::size_t k) const;
  /// Throws std::invalid_argument unless sides > 0 and subdivisions >= 1.
  void validate() const;

  bool operator==(const Window&) const = default;
};

/// Occupancy of a window partition. mask is row-major over
/// (i_1, ..., i_d) with i_1 slowest.
struct CountResult {
  std::int64_t count = 0;
  std::vector<std::int64_t> shape;
  std::vector<std::uint8_t> mask;

  std::int64_t flat_index(std::span<const std::int64_t> idx) const;
  bool occupied(std::span<const std::int64_t> idx) const { return mask[static_cast<std::size_t>(flat_index(idx))] != 0; }
};

/// The n_1 * n_2 closed cells of a planar window, cell (i, j) at index i * n_2 + j.
std::vector<Box2> window_cells(const Window& w);

/// Restricts g to [a, b] and maps (t, y) -> ((t - a) / |I|, (y - g(a)) / |I|^(1/beta)).
Graph2D apply_scaling_map(const Graph2D& g, double a, double b, double beta);

/// Image of a window under the same affine map (for covariance checks).
Window map_window(const Window& w, double a, double origin_value, double length, double beta);

namespace fixtures {

/// Straight line y = slope * t on [0, 1] with `segments` equal pieces.
Graph2D line(double slope = 1.0, std::size_t segments = 1);

/// y = 0 on [0, 1] with `segments` pieces.
Graph2D constant(std::size_t segments = 1);

/// Zigzag that fills every cell of the n x n partition of `w`: it sweeps
/// bottom-to-top and back once per column.
Graph2D zigzag(const Window& w);

/// Graph on [0, 1] that, on each I_i = [1 - 2^(1-i), 1 - 2^(-i)], i = 1..levels,
/// is a zigzag filling the |I_i| x |I_i| square above the axis with n columns.
Graph2D nested_zigzags(int levels, std::int64_t n);

} // namespace fixtures

} // namespace assouad
