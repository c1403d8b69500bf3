#pragma once

#include <span>

namespace assouad {

/// Sign of the orientation determinant of (a, b, c): +1 counter-clockwise,
/// -1 clockwise, 0 collinear. Exact for all finite inputs (floating-point
/// filter with a rational fallback).
int orient2d(double ax, double ay, double bx, double by, double cx, double cy);

/// True iff the closed segment p-q meets the closed axis-aligned box
/// [lo, hi]. Exact; supports 1 to 3 dimensions.
bool segment_meets_box(std::span<const double> p, std::span<const double> q,
                       std::span<const double> lo, std::span<const double> hi);

} // namespace assouad
