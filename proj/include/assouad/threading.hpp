#pragma once

#include "assouad/geometry.hpp"
#include "assouad/process.hpp"
#include "assouad/stats.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace assouad {

/// Monte-Carlo estimate of P(n), the probability of a full n x n window on
/// [0,1]^2, next to the threading event that forces it.
struct ThreadingReport {
  int n = 0;
  double mc_frequency = 0.0; // threading event
  Interval ci;
  std::int64_t replicas = 0;
  std::size_t n_steps = 0;
  std::optional<double> quadrature_bound; // Wiener only
  double full_window_frequency = 0.0;
  Interval full_window_ci;
  /// Largest distance between a threading time k/n^2 and the grid time used
  /// for it. Zero means the threading event implies the full-window event.
  double slack = 0.0;
};

/// Smallest n^2 * 2^m with at least max(256, 8 n^2) steps, so every
/// threading time k/n^2 is a grid time and delta <= 1/(8 n^2).
std::size_t default_threading_steps(int n);

/// X(t_k) in [j/n, (j+1)/n] with j = k mod n, at the grid times nearest
/// t_k = k/n^2 for k = 1..n^2.
bool threading_event(const SamplePath& path, int n);

/// count_window on the unit n x n window equals n^2.
bool full_window_event(const Graph2D& g, int n);

/// Replica i simulates spec with derive_seed(seed, i, 0).
ThreadingReport empirical_pn(const ProcessSpec& spec, int n, std::int64_t replicas, std::uint64_t seed,
                             std::size_t n_steps = 0, int bins = 400);

/// Lower bound for the threading probability of a Wiener path, by
/// propagating mass through the n^2 Gaussian transitions (variance 1/n^2)
/// with each box split into `bins` sub-intervals. Each transition uses the
/// smallest kernel value over the source sub-interval, so the result never
/// exceeds the true probability and grows when bins doubles.
double pn_quadrature_bound(const ProcessSpec& spec, int n, int bins);

struct ZigzagResult {
  bool holds = false;
  double a = 0.0; // snapped interval
  double b = 0.0;
  bool snapped = false;
  std::vector<double> increments;
  double threshold = 0.0; // (b - a)^(1/2)
};

/// Whether the n increments of `path` over equal parts of [a, b] alternate
/// in sign (positive first) and each has magnitude at least (b - a)^(1/2).
/// Endpoints are snapped to the nearest grid times.
ZigzagResult zigzag_scan(const SamplePath& path, double a, double b, int n);

} // namespace assouad
