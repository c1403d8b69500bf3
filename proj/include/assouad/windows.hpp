#pragma once

#include "assouad/geometry.hpp"

#include <span>
#include <vector>

namespace assouad {

struct WindowHit {
  Window window;
  CountResult result;
  double fraction = 0.0; // count / cell_count
};

/// Windows whose count reaches A * n_1 * n_2, by decreasing occupancy
/// fraction (ties keep input order).
std::vector<WindowHit> full_window_search(const Graph2D& g, std::span<const Window> windows, double A);

/// Windows of the interval scheme a_1 = 0, a_{i+1} = a_i + 2^-i: window i is
/// anchored at (a_i, g(a_i)) with sides |I_i| x |I_i|^(1/beta) and n x n
/// subdivisions. Levels run while |I_i| >= min_length.
std::vector<Window> proof_scheme_windows(const Graph2D& g, double beta, std::int64_t n, double min_length);

} // namespace assouad
