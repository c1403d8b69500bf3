#pragma once

#include "assouad/geometry.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace assouad {

/// Polyline in R^d stored as consecutive rows of `coords` (row-major, d per
/// vertex). Used for trails, which unlike graphs need not be monotone in
/// any coordinate.
struct PolylineView {
  std::span<const double> coords;
  std::size_t dim = 2;

  std::size_t vertex_count() const { return coords.size() / dim; }
  std::span<const double> vertex(std::size_t i) const { return coords.subspan(i * dim, dim); }
};

/// Cells of the n_1 x n_2 partition of `w` met by the graph (closed cells;
/// touching a boundary counts).
///
/// Sweeps the window column by column. Within a closed column strip the
/// graph is connected, so the rows it meets are those meeting its vertical
/// extent there. Vertices inside the strip bound that extent exactly; only
/// the two segments cut by the strip edges need interpolation, and the rows
/// they alone could add are confirmed with the exact segment/box predicate.
CountResult count_window(const Graph2D& g, const Window& w);

/// Exhaustive oracle for count_window: every cell against every segment
/// with the exact predicate. Requires cell_count() <= 10^4.
CountResult brute_force_count(const Graph2D& g, const Window& w);

/// Cells of a d-dimensional window (d = 1..3) met by a polyline: each
/// segment proposes candidate cells by slab clipping with a safety margin,
/// and each candidate is confirmed with the exact predicate.
CountResult count_polyline(const PolylineView& line, const Window& w);

/// Oracle counterpart of count_polyline; requires cell_count() <= 10^4.
CountResult brute_force_polyline(const PolylineView& line, const Window& w);

/// Number of cells of the origin-aligned lattice with step r met by the graph.
std::int64_t lattice_count(const Graph2D& g, double r);

/// Number of cells of the origin-aligned cubic lattice with step r met by
/// the polyline (any dimension 1..3).
std::int64_t lattice_count(const PolylineView& line, double r);

/// Number of lattice cells (closed, step r) containing at least one point.
std::int64_t lattice_count(const PointSet& points, double r);

/// N(B(x, R) ∩ F, r): cells of the origin-aligned r-lattice that meet the
/// geometry and the open ball B(center, R).
std::int64_t count_cover(const Graph2D& g, Point2 center, double R, double r);
std::int64_t count_cover(const PointSet& points, Point2 center, double R, double r);

/// Cover counts at the nested lattice steps r_fine * 2^m, m = 0..levels-1,
/// from one sweep at the finest step; entry m equals
/// count_cover(g, center, R, r_fine * 2^m) when r_fine is dyadic.
/// `capacity` (if non-null) receives, per level, the number of lattice cells
/// meeting the open ball.
std::vector<std::int64_t> cover_series(const Graph2D& g, Point2 center, double R, double r_fine,
                                       int levels, std::vector<std::int64_t>* capacity = nullptr);

} // namespace assouad
