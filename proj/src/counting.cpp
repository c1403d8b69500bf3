#include "assouad/counting.hpp"

#include "assouad/predicates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace assouad {

namespace {

constexpr std::int64_t kBruteForceLimit = 10000;
constexpr double kRelativeSlack = 1e-12;
constexpr double kParamSlack = 1e-9;

using Range = std::pair<std::int64_t, std::int64_t>;

constexpr Range kAll{std::numeric_limits<std::int64_t>::min() / 4, std::numeric_limits<std::int64_t>::max() / 4};

double slack_for(double a, double b) {
  return kRelativeSlack * (std::abs(a) + std::abs(b)) + std::numeric_limits<double>::denorm_min();
}

double interpolate_y(const Point2& p, const Point2& q, double t) {
  if (q.x == p.x) {
    return p.y;
  }
  return p.y + (q.y - p.y) * ((t - p.x) / (q.x - p.x));
}

bool segment_meets_cell(const Point2& p, const Point2& q, double x0, double x1, double y0, double y1) {
  const std::array<double, 2> pp{p.x, p.y};
  const std::array<double, 2> qq{q.x, q.y};
  const std::array<double, 2> lo{x0, y0};
  const std::array<double, 2> hi{x1, y1};
  return segment_meets_box(pp, qq, lo, hi);
}

Range clamp_range(Range r, Range limit) {
  return {std::max(r.first, limit.first), std::min(r.second, limit.second)};
}

/// Column sweep over a t-monotone chain. emit(column, first_row, last_row)
/// receives disjoint row ranges per column.
template <class Emit>
void sweep_graph(const Graph2D& g, const Axis& cols, const Axis& rows, Range col_limit, Range row_limit,
                 Emit&& emit) {
  const auto& v = g.vertices();
  const auto m = static_cast<std::int64_t>(v.size());
  const auto [c0, c1] = clamp_range(cols.cells_meeting(v.front().x, v.back().x), col_limit);
  const auto by_x = [](const Point2& p, double t) { return p.x < t; };
  const auto x_by = [](double t, const Point2& p) { return t < p.x; };

  for (std::int64_t c = c0; c <= c1; ++c) {
    const double left = cols.edge(c);
    const double right = cols.edge(c + 1);
    const auto lo = static_cast<std::int64_t>(std::lower_bound(v.begin(), v.end(), left, by_x) - v.begin());
    const auto hi = static_cast<std::int64_t>(std::upper_bound(v.begin(), v.end(), right, x_by) - v.begin()) - 1;

    double inner_lo = std::numeric_limits<double>::infinity();
    double inner_hi = -inner_lo;
    for (std::int64_t i = lo; i <= hi; ++i) {
      inner_lo = std::min(inner_lo, v[static_cast<std::size_t>(i)].y);
      inner_hi = std::max(inner_hi, v[static_cast<std::size_t>(i)].y);
    }
    double outer_lo = inner_lo;
    double outer_hi = inner_hi;

    // Segments cut by the strip edges, as vertex index pairs.
    std::array<std::int64_t, 2> cut{-1, -1};
    const auto widen = [&](std::int64_t i, double t) {
      const Point2& p = v[static_cast<std::size_t>(i)];
      const Point2& q = v[static_cast<std::size_t>(i + 1)];
      const double y = interpolate_y(p, q, t);
      const double s = slack_for(p.y, q.y);
      outer_lo = std::min(outer_lo, y - s);
      outer_hi = std::max(outer_hi, y + s);
    };
    const bool has_inner = lo <= hi;
    if (has_inner) {
      if (lo > 0) {
        cut[0] = lo - 1;
        widen(lo - 1, left);
      }
      if (hi < m - 1) {
        cut[1] = hi;
        widen(hi, right);
      }
    } else {
      if (lo == 0 || lo >= m) {
        continue;
      }
      cut[0] = lo - 1;
      widen(lo - 1, left);
      widen(lo - 1, right);
    }

    const auto candidates = clamp_range(rows.cells_meeting(outer_lo, outer_hi), row_limit);
    Range certain{0, -1};
    if (has_inner) {
      certain = clamp_range(rows.cells_meeting(inner_lo, inner_hi), row_limit);
      if (certain.first <= certain.second) {
        emit(c, certain.first, certain.second);
      }
    }
    const auto verify = [&](std::int64_t r) {
      for (std::int64_t i : cut) {
        if (i < 0) {
          continue;
        }
        if (segment_meets_cell(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i + 1)], left,
                               right, rows.edge(r), rows.edge(r + 1))) {
          emit(c, r, r);
          return;
        }
      }
    };
    if (certain.first > certain.second) {
      for (std::int64_t r = candidates.first; r <= candidates.second; ++r) {
        verify(r);
      }
    } else {
      for (std::int64_t r = candidates.first; r < certain.first; ++r) {
        verify(r);
      }
      for (std::int64_t r = certain.second + 1; r <= candidates.second; ++r) {
        verify(r);
      }
    }
  }
}

/// Calls visit(idx) for each cell (within `limits`) that the closed segment
/// p-q meets. Candidates come from clipping against column slabs of axis 0
/// with a margin; each is confirmed with the exact predicate.
template <class Visit>
void rasterize_segment(std::span<const double> p, std::span<const double> q, std::span<const Axis> axes,
                       std::span<const Range> limits, Visit&& visit) {
  const std::size_t d = p.size();
  std::array<double, 3> lo_box{};
  std::array<double, 3> hi_box{};
  std::array<std::int64_t, 3> idx{};
  std::array<Range, 3> ranges{};

  const double s0 = slack_for(p[0], q[0]);
  const auto cols = clamp_range(axes[0].cells_meeting(std::min(p[0], q[0]) - s0, std::max(p[0], q[0]) + s0), limits[0]);
  for (std::int64_t c = cols.first; c <= cols.second; ++c) {
    const double left = axes[0].edge(c);
    const double right = axes[0].edge(c + 1);
    double sa = 0.0;
    double sb = 1.0;
    if (q[0] != p[0]) {
      double s1 = (left - p[0]) / (q[0] - p[0]);
      double s2 = (right - p[0]) / (q[0] - p[0]);
      if (s1 > s2) {
        std::swap(s1, s2);
      }
      sa = std::max(0.0, s1 - kParamSlack);
      sb = std::min(1.0, s2 + kParamSlack);
      if (sa > sb) {
        continue;
      }
    }
    ranges[0] = {c, c};
    lo_box[0] = left;
    hi_box[0] = right;
    bool empty = false;
    for (std::size_t k = 1; k < d; ++k) {
      const double dk = q[k] - p[k];
      const double va = p[k] + sa * dk;
      const double vb = p[k] + sb * dk;
      const double s = slack_for(p[k], q[k]) + kParamSlack * std::abs(dk);
      ranges[k] = clamp_range(axes[k].cells_meeting(std::min(va, vb) - s, std::max(va, vb) + s), limits[k]);
      if (ranges[k].first > ranges[k].second) {
        empty = true;
        break;
      }
    }
    if (empty) {
      continue;
    }
    // odometer over the candidate block
    for (std::size_t k = 1; k < d; ++k) {
      idx[k] = ranges[k].first;
    }
    idx[0] = c;
    while (true) {
      for (std::size_t k = 1; k < d; ++k) {
        lo_box[k] = axes[k].edge(idx[k]);
        hi_box[k] = axes[k].edge(idx[k] + 1);
      }
      if (segment_meets_box(p, q, std::span<const double>(lo_box.data(), d),
                            std::span<const double>(hi_box.data(), d))) {
        visit(std::span<const std::int64_t>(idx.data(), d));
      }
      std::size_t k = d;
      while (k > 1) {
        --k;
        if (idx[k] < ranges[k].second) {
          ++idx[k];
          break;
        }
        idx[k] = ranges[k].first;
        if (k == 1) {
          k = 0;
          break;
        }
      }
      if (k == 0 || d == 1) {
        break;
      }
    }
  }
}

CountResult empty_result(const Window& w) {
  CountResult out;
  out.shape = w.subdivisions;
  out.mask.assign(static_cast<std::size_t>(w.cell_count()), 0);
  return out;
}

void require_planar(const Window& w, const char* what) {
  w.validate();
  if (w.dim() != 2) {
    throw std::invalid_argument(std::string(what) + ": planar window expected");
  }
}

void require_polyline(const PolylineView& line, const Window& w) {
  w.validate();
  if (line.dim == 0 || line.dim > 3) {
    throw UnsupportedError("polyline counting supports dimensions 1 to 3");
  }
  if (line.dim != w.dim()) {
    throw std::invalid_argument("polyline and window dimensions differ");
  }
  if (line.coords.size() % line.dim != 0 || line.vertex_count() < 1) {
    throw std::invalid_argument("polyline coordinates do not form whole vertices");
  }
}

template <class Visit>
void for_each_segment(const PolylineView& line, Visit&& visit) {
  const std::size_t n = line.vertex_count();
  if (n == 1) {
    visit(line.vertex(0), line.vertex(0));
    return;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    visit(line.vertex(i), line.vertex(i + 1));
  }
}

std::int64_t count_unique(std::vector<std::uint64_t>& keys) {
  std::sort(keys.begin(), keys.end());
  return static_cast<std::int64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

double cell_distance_sq(Point2 c, double x0, double x1, double y0, double y1) {
  const double dx = std::max({x0 - c.x, 0.0, c.x - x1});
  const double dy = std::max({y0 - c.y, 0.0, c.y - y1});
  return dx * dx + dy * dy;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) {
    --q;
  }
  return q;
}

void check_cover_args(double R, double r) {
  if (!(R > 0.0) || !(r > 0.0) || !std::isfinite(R) || !std::isfinite(r)) {
    throw std::invalid_argument("count_cover: radii must be positive and finite");
  }
  if (r > R) {
    throw std::invalid_argument("count_cover: need r <= R");
  }
}

} // namespace

// ---------------------------------------------------------------------------

CountResult count_window(const Graph2D& g, const Window& w) {
  require_planar(w, "count_window");
  CountResult out = empty_result(w);
  const std::int64_t n2 = w.subdivisions[1];
  sweep_graph(g, w.axis(0), w.axis(1), kAll, kAll, [&](std::int64_t c, std::int64_t r0, std::int64_t r1) {
    for (std::int64_t r = r0; r <= r1; ++r) {
      out.mask[static_cast<std::size_t>(c * n2 + r)] = 1;
    }
  });
  out.count = std::count(out.mask.begin(), out.mask.end(), std::uint8_t{1});
  return out;
}

CountResult brute_force_count(const Graph2D& g, const Window& w) {
  require_planar(w, "brute_force_count");
  if (w.cell_count() > kBruteForceLimit) {
    throw std::invalid_argument("brute_force_count: window has more than 10^4 cells");
  }
  CountResult out = empty_result(w);
  const auto cells = window_cells(w);
  const auto& v = g.vertices();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (segment_meets_cell(v[i], v[i + 1], cells[c].lo.x, cells[c].hi.x, cells[c].lo.y, cells[c].hi.y)) {
        out.mask[c] = 1;
        ++out.count;
        break;
      }
    }
  }
  return out;
}

CountResult count_polyline(const PolylineView& line, const Window& w) {
  require_polyline(line, w);
  CountResult out = empty_result(w);
  const std::size_t d = w.dim();
  std::array<Axis, 3> axes{};
  std::array<Range, 3> limits{};
  for (std::size_t k = 0; k < d; ++k) {
    axes[k] = w.axis(k);
    limits[k] = {0, w.subdivisions[k] - 1};
  }
  for_each_segment(line, [&](std::span<const double> p, std::span<const double> q) {
    rasterize_segment(p, q, std::span<const Axis>(axes.data(), d), std::span<const Range>(limits.data(), d),
                      [&](std::span<const std::int64_t> idx) {
                        out.mask[static_cast<std::size_t>(out.flat_index(idx))] = 1;
                      });
  });
  out.count = std::count(out.mask.begin(), out.mask.end(), std::uint8_t{1});
  return out;
}

CountResult brute_force_polyline(const PolylineView& line, const Window& w) {
  require_polyline(line, w);
  if (w.cell_count() > kBruteForceLimit) {
    throw std::invalid_argument("brute_force_polyline: window has more than 10^4 cells");
  }
  CountResult out = empty_result(w);
  const std::size_t d = w.dim();
  std::array<std::int64_t, 3> idx{};
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
  for (std::int64_t flat = 0; flat < w.cell_count(); ++flat) {
    std::int64_t rest = flat;
    for (std::size_t k = d; k-- > 0;) {
      idx[k] = rest % w.subdivisions[k];
      rest /= w.subdivisions[k];
      const Axis axis = w.axis(k);
      lo[k] = axis.edge(idx[k]);
      hi[k] = axis.edge(idx[k] + 1);
    }
    bool hit = false;
    for_each_segment(line, [&](std::span<const double> p, std::span<const double> q) {
      if (!hit && segment_meets_box(p, q, std::span<const double>(lo.data(), d),
                                    std::span<const double>(hi.data(), d))) {
        hit = true;
      }
    });
    if (hit) {
      out.mask[static_cast<std::size_t>(flat)] = 1;
      ++out.count;
    }
  }
  return out;
}

std::int64_t lattice_count(const Graph2D& g, double r) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("lattice_count: step must be positive");
  }
  std::int64_t total = 0;
  const Axis lattice = Axis::lattice(r);
  sweep_graph(g, lattice, lattice, kAll, kAll, [&](std::int64_t, std::int64_t r0, std::int64_t r1) { total += r1 - r0 + 1; });
  return total;
}

std::int64_t lattice_count(const PolylineView& line, double r) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("lattice_count: step must be positive");
  }
  const std::size_t d = line.dim;
  if (d == 0 || d > 3) {
    throw UnsupportedError("polyline counting supports dimensions 1 to 3");
  }
  const std::size_t n = line.vertex_count();
  if (n == 0) {
    return 0;
  }
  const Axis lattice = Axis::lattice(r);
  std::array<Axis, 3> axes{lattice, lattice, lattice};
  std::array<Range, 3> limits{};
  std::array<std::int64_t, 3> extent{};
  for (std::size_t k = 0; k < d; ++k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
      lo = std::min(lo, line.coords[i * d + k]);
      hi = std::max(hi, line.coords[i * d + k]);
    }
    limits[k] = {lattice.first_reaching(lo) - 1, lattice.last_reaching(hi) + 1};
    extent[k] = limits[k].second - limits[k].first + 1;
  }
  std::vector<std::uint64_t> keys;
  keys.reserve(n * 4);
  for_each_segment(line, [&](std::span<const double> p, std::span<const double> q) {
    rasterize_segment(p, q, std::span<const Axis>(axes.data(), d), std::span<const Range>(limits.data(), d),
                      [&](std::span<const std::int64_t> idx) {
                        std::uint64_t key = 0;
                        for (std::size_t k = 0; k < d; ++k) {
                          key = key * static_cast<std::uint64_t>(extent[k]) +
                                static_cast<std::uint64_t>(idx[k] - limits[k].first);
                        }
                        keys.push_back(key);
                      });
  });
  return count_unique(keys);
}

std::int64_t lattice_count(const PointSet& points, double r) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("lattice_count: step must be positive");
  }
  const Axis lattice = Axis::lattice(r);
  std::vector<std::pair<std::int64_t, std::int64_t>> cells;
  for (const auto& p : points) {
    const auto cx = lattice.cells_meeting(p.x, p.x);
    const auto cy = lattice.cells_meeting(p.y, p.y);
    for (auto i = cx.first; i <= cx.second; ++i) {
      for (auto j = cy.first; j <= cy.second; ++j) {
        cells.emplace_back(i, j);
      }
    }
  }
  std::sort(cells.begin(), cells.end());
  return static_cast<std::int64_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

// ---------------------------------------------------------------------------
// Cover counts

std::vector<std::int64_t> cover_series(const Graph2D& g, Point2 center, double R, double r_fine, int levels,
                                       std::vector<std::int64_t>* capacity) {
  if (levels < 1 || levels > 30) {
    throw std::invalid_argument("cover_series: levels must lie in 1..30");
  }
  check_cover_args(R, std::ldexp(r_fine, levels - 1));
  const Axis lattice = Axis::lattice(r_fine);
  // Align the fine range to whole coarsest cells so every level aggregates
  // complete blocks of children.
  const std::int64_t top = std::int64_t{1} << (levels - 1);
  const auto aligned = [&](Range range) {
    return Range{floor_div(range.first, top) * top, (floor_div(range.second, top) + 1) * top - 1};
  };
  const Range cols = aligned(lattice.cells_meeting(center.x - R, center.x + R));
  const Range rows = aligned(lattice.cells_meeting(center.y - R, center.y + R));
  std::int64_t width = cols.second - cols.first + 1;
  std::int64_t height = rows.second - rows.first + 1;
  std::vector<std::uint8_t> occupied(static_cast<std::size_t>(width * height), 0);
  sweep_graph(g, lattice, lattice, cols, rows, [&](std::int64_t c, std::int64_t r0, std::int64_t r1) {
    const auto column = occupied.begin() + static_cast<std::ptrdiff_t>((c - cols.first) * height);
    std::fill(column + (r0 - rows.first), column + (r1 - rows.first + 1), std::uint8_t{1});
  });

  std::vector<std::int64_t> counts(static_cast<std::size_t>(levels), 0);
  if (capacity != nullptr) {
    capacity->assign(static_cast<std::size_t>(levels), 0);
  }
  const double R2 = R * R;
  for (int m = 0; m < levels; ++m) {
    if (m > 0) {
      const std::int64_t w2 = width / 2;
      const std::int64_t h2 = height / 2;
      std::vector<std::uint8_t> coarse(static_cast<std::size_t>(w2 * h2), 0);
      for (std::int64_t i = 0; i < w2; ++i) {
        const std::uint8_t* a = occupied.data() + (2 * i) * height;
        const std::uint8_t* b = a + height;
        std::uint8_t* out = coarse.data() + i * h2;
        for (std::int64_t j = 0; j < h2; ++j) {
          out[j] = a[2 * j] | a[2 * j + 1] | b[2 * j] | b[2 * j + 1];
        }
      }
      occupied = std::move(coarse);
      width = w2;
      height = h2;
    }
    const double step = std::ldexp(r_fine, m);
    const std::int64_t col0 = cols.first >> m;
    const std::int64_t row0 = rows.first >> m;
    for (std::int64_t i = 0; i < width; ++i) {
      const double x0 = step * static_cast<double>(col0 + i);
      const double x1 = step * static_cast<double>(col0 + i + 1);
      const double dx = std::max({x0 - center.x, 0.0, center.x - x1});
      if (dx * dx >= R2) {
        continue;
      }
      // Cells of a column inside the ball are contiguous: estimate the run,
      // then trim it with the exact test.
      const auto inside = [&](std::int64_t j) {
        const double y0 = step * static_cast<double>(row0 + j);
        return cell_distance_sq(center, x0, x1, y0, y0 + step) < R2;
      };
      const double h = std::sqrt(R2 - dx * dx);
      std::int64_t lo = std::max<std::int64_t>(static_cast<std::int64_t>(std::floor((center.y - h) / step)) - row0 - 1, 0);
      std::int64_t hi = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor((center.y + h) / step)) - row0 + 1,
                                               height - 1);
      while (lo <= hi && !inside(lo)) {
        ++lo;
      }
      while (hi >= lo && !inside(hi)) {
        --hi;
      }
      if (hi < lo) {
        continue;
      }
      if (capacity != nullptr) {
        (*capacity)[static_cast<std::size_t>(m)] += hi - lo + 1;
      }
      const std::uint8_t* column = occupied.data() + i * height;
      std::int64_t sum = 0;
      for (std::int64_t j = lo; j <= hi; ++j) {
        sum += column[j];
      }
      counts[static_cast<std::size_t>(m)] += sum;
    }
  }
  return counts;
}

std::int64_t count_cover(const Graph2D& g, Point2 center, double R, double r) {
  check_cover_args(R, r);
  return cover_series(g, center, R, r, 1)[0];
}

std::int64_t count_cover(const PointSet& points, Point2 center, double R, double r) {
  check_cover_args(R, r);
  const Axis lattice = Axis::lattice(r);
  std::vector<std::pair<std::int64_t, std::int64_t>> cells;
  for (const auto& p : points) {
    const auto cx = lattice.cells_meeting(p.x, p.x);
    const auto cy = lattice.cells_meeting(p.y, p.y);
    for (auto i = cx.first; i <= cx.second; ++i) {
      for (auto j = cy.first; j <= cy.second; ++j) {
        if (cell_distance_sq(center, lattice.edge(i), lattice.edge(i + 1), lattice.edge(j), lattice.edge(j + 1)) <
            R * R) {
          cells.emplace_back(i, j);
        }
      }
    }
  }
  std::sort(cells.begin(), cells.end());
  return static_cast<std::int64_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

} // namespace assouad
