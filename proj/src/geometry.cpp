#include "assouad/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace assouad {

// ---------------------------------------------------------------------------
// Graph2D

Graph2D::Graph2D(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) {
    throw std::invalid_argument("Graph2D: need at least two vertices");
  }
  bbox_ = {vertices_.front(), vertices_.front()};
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Point2& p = vertices_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("Graph2D: vertices must be finite");
    }
    if (i > 0 && p.x < vertices_[i - 1].x) {
      throw std::invalid_argument("Graph2D: abscissae must be nondecreasing");
    }
    bbox_.lo.x = std::min(bbox_.lo.x, p.x);
    bbox_.lo.y = std::min(bbox_.lo.y, p.y);
    bbox_.hi.x = std::max(bbox_.hi.x, p.x);
    bbox_.hi.y = std::max(bbox_.hi.y, p.y);
  }
}

namespace {

double interpolate(const Point2& p, const Point2& q, double t) {
  if (q.x == p.x) {
    return p.y;
  }
  return p.y + (q.y - p.y) * ((t - p.x) / (q.x - p.x));
}

} // namespace

double Graph2D::value_at(double t) const {
  if (t < bbox_.lo.x || t > bbox_.hi.x) {
    throw std::invalid_argument("Graph2D::value_at: abscissa outside the graph");
  }
  const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), t,
                                   [](const Point2& p, double v) { return p.x < v; });
  if (it->x == t) {
    return it->y;
  }
  return interpolate(*(it - 1), *it, t);
}

Graph2D build_graph(const SamplePath& path, std::size_t coordinate) {
  if (path.points() < 2) {
    throw std::invalid_argument("build_graph: need at least two grid points");
  }
  if (coordinate >= path.dim()) {
    throw std::invalid_argument("build_graph: coordinate out of range");
  }
  std::vector<Point2> v(path.points());
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = {path.time(k), path.value(k, coordinate)};
  }
  return Graph2D(std::move(v));
}

// ---------------------------------------------------------------------------
// Axis

namespace {

std::int64_t estimate_index(const Axis& axis, double v) {
  const double raw = std::floor((v - axis.origin) / axis.span * static_cast<double>(axis.n));
  constexpr double limit = 0x1.0p60;
  if (!(raw > -limit)) {
    return -static_cast<std::int64_t>(limit);
  }
  if (!(raw < limit)) {
    return static_cast<std::int64_t>(limit);
  }
  return static_cast<std::int64_t>(raw);
}

} // namespace

std::int64_t Axis::first_reaching(double v) const {
  std::int64_t k = estimate_index(*this, v);
  while (edge(k) >= v) {
    --k;
  }
  while (edge(k + 1) < v) {
    ++k;
  }
  return k;
}

std::int64_t Axis::last_reaching(double v) const {
  std::int64_t k = estimate_index(*this, v);
  while (edge(k) > v) {
    --k;
  }
  while (edge(k + 1) <= v) {
    ++k;
  }
  return k;
}

std::pair<std::int64_t, std::int64_t> Axis::cells_meeting(double a, double b) const {
  if (b < a) {
    return {0, -1};
  }
  std::int64_t first = first_reaching(a);
  std::int64_t last = last_reaching(b);
  if (bounded) {
    first = std::max<std::int64_t>(first, 0);
    last = std::min<std::int64_t>(last, n - 1);
  }
  return {first, last};
}

// ---------------------------------------------------------------------------
// Window

Window Window::square(Point2 anchor, double side, std::int64_t n) {
  return rect(anchor, side, side, n, n);
}

Window Window::rect(Point2 anchor, double side_x, double side_y, std::int64_t nx, std::int64_t ny) {
  Window w{{anchor.x, anchor.y}, {side_x, side_y}, {nx, ny}};
  w.validate();
  return w;
}

std::int64_t Window::cell_count() const {
  std::int64_t total = 1;
  for (auto n : subdivisions) {
    total *= n;
  }
  return total;
}

Axis Window::axis(std::size_t k) const { return Axis{anchor[k], sides[k], subdivisions[k], true}; }

void Window::validate() const {
  if (anchor.empty() || sides.size() != anchor.size() || subdivisions.size() != anchor.size()) {
    throw std::invalid_argument("Window: anchor, sides and subdivisions must share a dimension");
  }
  for (std::size_t k = 0; k < anchor.size(); ++k) {
    if (!std::isfinite(anchor[k]) || !(sides[k] > 0.0) || !std::isfinite(sides[k])) {
      throw std::invalid_argument("Window: sides must be positive and finite");
    }
    if (subdivisions[k] < 1) {
      throw std::invalid_argument("Window: subdivisions must be at least 1");
    }
  }
}

std::int64_t CountResult::flat_index(std::span<const std::int64_t> idx) const {
  std::int64_t flat = 0;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    flat = flat * shape[k] + idx[k];
  }
  return flat;
}

std::vector<Box2> window_cells(const Window& w) {
  w.validate();
  if (w.dim() != 2) {
    throw std::invalid_argument("window_cells: planar window expected");
  }
  const Axis ax = w.axis(0);
  const Axis ay = w.axis(1);
  std::vector<Box2> cells;
  cells.reserve(static_cast<std::size_t>(w.cell_count()));
  for (std::int64_t i = 0; i < ax.n; ++i) {
    for (std::int64_t j = 0; j < ay.n; ++j) {
      cells.push_back({{ax.edge(i), ay.edge(j)}, {ax.edge(i + 1), ay.edge(j + 1)}});
    }
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Scaling map

Graph2D apply_scaling_map(const Graph2D& g, double a, double b, double beta) {
  if (!(b > a)) {
    throw std::invalid_argument("apply_scaling_map: interval must have b > a");
  }
  if (!(beta > 0.0)) {
    throw std::invalid_argument("apply_scaling_map: beta must be positive");
  }
  if (a < g.bbox().lo.x || b > g.bbox().hi.x) {
    throw std::invalid_argument("apply_scaling_map: interval outside the graph's time range");
  }
  const double length = b - a;
  const double height = std::pow(length, 1.0 / beta);
  const double origin_value = g.value_at(a);
  const auto& v = g.vertices();
  auto first = std::lower_bound(v.begin(), v.end(), a, [](const Point2& p, double t) { return p.x < t; });
  auto last = std::upper_bound(v.begin(), v.end(), b, [](double t, const Point2& p) { return t < p.x; });

  std::vector<Point2> kept;
  kept.reserve(static_cast<std::size_t>(last - first) + 2);
  if (first->x > a) {
    kept.push_back({a, interpolate(*(first - 1), *first, a)});
  }
  kept.insert(kept.end(), first, last);
  if (kept.back().x < b) {
    kept.push_back({b, interpolate(*(last - 1), *last, b)});
  }
  for (Point2& p : kept) {
    p = {(p.x - a) / length, (p.y - origin_value) / height};
  }
  return Graph2D(std::move(kept));
}

Window map_window(const Window& w, double a, double origin_value, double length, double beta) {
  if (w.dim() != 2) {
    throw std::invalid_argument("map_window: planar window expected");
  }
  const double height = std::pow(length, 1.0 / beta);
  Window out = w;
  out.anchor = {(w.anchor[0] - a) / length, (w.anchor[1] - origin_value) / height};
  out.sides = {w.sides[0] / length, w.sides[1] / height};
  return out;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace fixtures {

Graph2D line(double slope, std::size_t segments) {
  std::vector<Point2> v(segments + 1);
  for (std::size_t k = 0; k <= segments; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(segments);
    v[k] = {t, slope * t};
  }
  return Graph2D(std::move(v));
}

Graph2D constant(std::size_t segments) { return line(0.0, segments); }

Graph2D zigzag(const Window& w) {
  w.validate();
  const Axis ax = w.axis(0);
  const double lo = w.anchor[1];
  const double hi = w.anchor[1] + w.sides[1];
  std::vector<Point2> v;
  v.reserve(static_cast<std::size_t>(ax.n) + 1);
  for (std::int64_t c = 0; c <= ax.n; ++c) {
    v.push_back({ax.edge(c), c % 2 == 0 ? lo : hi});
  }
  return Graph2D(std::move(v));
}

Graph2D nested_zigzags(int levels, std::int64_t n) {
  if (levels < 1 || n < 2 || n % 2 != 0) {
    throw std::invalid_argument("nested_zigzags: need levels >= 1 and an even n >= 2");
  }
  std::vector<Point2> v;
  double start = 0.0;
  for (int i = 1; i <= levels; ++i) {
    const double length = std::ldexp(1.0, -i);
    const auto piece = zigzag(Window::square({start, 0.0}, length, n));
    const auto& pv = piece.vertices();
    v.insert(v.end(), pv.begin() + (v.empty() ? 0 : 1), pv.end());
    start += length;
  }
  if (v.back().x < 1.0) {
    v.push_back({1.0, 0.0});
  }
  return Graph2D(std::move(v));
}

} // namespace fixtures

} // namespace assouad
