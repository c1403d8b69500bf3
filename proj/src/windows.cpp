#include "assouad/windows.hpp"

#include "assouad/counting.hpp"
#include "assouad/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace assouad {

std::vector<WindowHit> full_window_search(const Graph2D& g, std::span<const Window> windows, double A) {
  if (!(A > 0.0 && A <= 1.0)) {
    throw std::invalid_argument("full_window_search: threshold must lie in (0, 1]");
  }
  std::vector<WindowHit> all(windows.size());
  parallel_for(static_cast<std::int64_t>(windows.size()), [&](std::int64_t i) {
    const auto k = static_cast<std::size_t>(i);
    all[k].window = windows[k];
    all[k].result = count_window(g, windows[k]);
    all[k].fraction = static_cast<double>(all[k].result.count) / static_cast<double>(windows[k].cell_count());
  });
  std::vector<WindowHit> hits;
  for (auto& hit : all) {
    if (static_cast<double>(hit.result.count) >= A * static_cast<double>(hit.window.cell_count())) {
      hits.push_back(std::move(hit));
    }
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const WindowHit& l, const WindowHit& r) { return l.fraction > r.fraction; });
  return hits;
}

std::vector<Window> proof_scheme_windows(const Graph2D& g, double beta, std::int64_t n, double min_length) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("proof_scheme_windows: beta must be positive");
  }
  if (n < 1 || !(min_length > 0.0)) {
    throw std::invalid_argument("proof_scheme_windows: need n >= 1 and a positive minimum length");
  }
  std::vector<Window> out;
  double a = g.bbox().lo.x;
  for (int i = 1;; ++i) {
    const double length = std::ldexp(1.0, -i);
    if (length < min_length || a + length > g.bbox().hi.x) {
      break;
    }
    out.push_back(Window::rect({a, g.value_at(a)}, length, std::pow(length, 1.0 / beta), n, n));
    a += length;
  }
  return out;
}

} // namespace assouad
