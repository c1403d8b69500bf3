#include "assouad/threading.hpp"

#include "assouad/counting.hpp"
#include "assouad/parallel.hpp"
#include "assouad/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace assouad {

std::size_t default_threading_steps(int n) {
  if (n < 1) {
    throw std::invalid_argument("default_threading_steps: n must be positive");
  }
  const auto n2 = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::size_t steps = n2;
  while (steps < 256 || steps < 8 * n2) {
    steps *= 2;
  }
  return steps;
}

namespace {

std::size_t nearest_index(const SamplePath& path, double t) {
  const double k = std::round(t / path.delta());
  return static_cast<std::size_t>(std::min(k, static_cast<double>(path.n_steps())));
}

void require_unit_span(const SamplePath& path) {
  const double end = path.time(path.n_steps());
  if (std::abs(end - 1.0) > 1e-9) {
    throw std::invalid_argument("threading: path must cover [0, 1]");
  }
}

} // namespace

bool threading_event(const SamplePath& path, int n) {
  if (n < 1) {
    throw std::invalid_argument("threading_event: n must be positive");
  }
  require_unit_span(path);
  const int n2 = n * n;
  for (int k = 1; k <= n2; ++k) {
    const double x = path.value(nearest_index(path, static_cast<double>(k) / n2));
    const int j = k % n;
    if (x < static_cast<double>(j) / n || x > static_cast<double>(j + 1) / n) {
      return false;
    }
  }
  return true;
}

bool full_window_event(const Graph2D& g, int n) {
  const Window unit = Window::square({0.0, 0.0}, 1.0, n);
  return count_window(g, unit).count == unit.cell_count();
}

ThreadingReport empirical_pn(const ProcessSpec& spec, int n, std::int64_t replicas, std::uint64_t seed,
                             std::size_t n_steps, int bins) {
  spec.validate();
  if (n < 2) {
    throw std::invalid_argument("empirical_pn: n must be at least 2");
  }
  if (replicas < 100) {
    throw std::invalid_argument("empirical_pn: need at least 100 replicas");
  }
  if (spec.coordinates() != 1) {
    throw std::invalid_argument("empirical_pn: needs a one-dimensional process");
  }
  if (n_steps == 0) {
    n_steps = default_threading_steps(n);
  }
  const int n2 = n * n;
  if (static_cast<double>(n_steps) < 8.0 * n2) {
    throw std::invalid_argument("empirical_pn: grid step must be at most 1/(8 n^2)");
  }

  std::vector<std::uint8_t> threaded(static_cast<std::size_t>(replicas));
  std::vector<std::uint8_t> full(static_cast<std::size_t>(replicas));
  parallel_for(replicas, [&](std::int64_t i) {
    const SamplePath path = simulate(spec, n_steps, derive_seed(seed, static_cast<std::uint64_t>(i), 0));
    threaded[static_cast<std::size_t>(i)] = threading_event(path, n);
    full[static_cast<std::size_t>(i)] = full_window_event(build_graph(path), n);
  });

  ThreadingReport report;
  report.n = n;
  report.replicas = replicas;
  report.n_steps = n_steps;
  long long hits = 0;
  long long full_hits = 0;
  for (std::size_t i = 0; i < threaded.size(); ++i) {
    hits += threaded[i];
    full_hits += full[i];
  }
  report.mc_frequency = static_cast<double>(hits) / static_cast<double>(replicas);
  report.ci = wilson_interval(hits, replicas);
  report.full_window_frequency = static_cast<double>(full_hits) / static_cast<double>(replicas);
  report.full_window_ci = wilson_interval(full_hits, replicas);
  const double delta = 1.0 / static_cast<double>(n_steps);
  for (int k = 1; k <= n2; ++k) {
    const double t = static_cast<double>(k) / n2;
    const double grid = std::min(std::round(t / delta), static_cast<double>(n_steps)) * delta;
    report.slack = std::max(report.slack, std::abs(grid - t));
  }
  if (spec.family == Family::wiener) {
    report.quadrature_bound = pn_quadrature_bound(spec, n, bins);
  }
  return report;
}

double pn_quadrature_bound(const ProcessSpec& spec, int n, int bins) {
  spec.validate();
  if (spec.family != Family::wiener) {
    throw UnsupportedError("pn_quadrature_bound: only the Wiener transition kernel is available in closed form");
  }
  if (n < 1) {
    throw std::invalid_argument("pn_quadrature_bound: n must be positive");
  }
  if (bins < 50) {
    throw std::invalid_argument("pn_quadrature_bound: need at least 50 bins");
  }
  const double sigma = 1.0 / n;
  const double h = 1.0 / (static_cast<double>(n) * bins);
  const auto edge = [&](int box, int b) { return static_cast<double>(box) / n + static_cast<double>(b) * h; };
  const auto bin = [](int b) { return static_cast<std::size_t>(b); };

  // First step from the point mass at 0.
  std::vector<double> mass(bin(bins));
  int box = 1 % n;
  for (int b = 0; b < bins; ++b) {
    mass[bin(b)] = normal_interval_probability(edge(box, b) / sigma, edge(box, b + 1) / sigma);
  }

  std::vector<double> kernel(bin(bins + 1));
  std::vector<double> next(bin(bins));
  for (int k = 2; k <= n * n; ++k) {
    const int target = k % n;
    std::fill(next.begin(), next.end(), 0.0);
    for (int t = 0; t < bins; ++t) {
      const double lo = edge(target, t);
      const double hi = edge(target, t + 1);
      for (int e = 0; e <= bins; ++e) {
        const double x = edge(box, e);
        kernel[bin(e)] = normal_interval_probability((lo - x) / sigma, (hi - x) / sigma);
      }
      double acc = 0.0;
      for (int b = 0; b < bins; ++b) {
        acc += mass[bin(b)] * std::min(kernel[bin(b)], kernel[bin(b + 1)]);
      }
      next[bin(t)] = acc;
    }
    mass.swap(next);
    box = target;
  }
  double total = 0.0;
  for (double m : mass) {
    total += m;
  }
  return total;
}

ZigzagResult zigzag_scan(const SamplePath& path, double a, double b, int n) {
  if (n < 2) {
    throw std::invalid_argument("zigzag_scan: n must be at least 2");
  }
  const double end = path.time(path.n_steps());
  if (!(a >= 0.0) || !(b <= end + 1e-12) || !(b > a)) {
    throw std::invalid_argument("zigzag_scan: interval must satisfy 0 <= a < b <= T");
  }
  const double delta = path.delta();
  const auto ia = static_cast<std::int64_t>(std::round(a / delta));
  const auto ib = std::min(static_cast<std::int64_t>(std::round(b / delta)), static_cast<std::int64_t>(path.n_steps()));
  if (ib - ia < n) {
    throw std::invalid_argument("zigzag_scan: interval holds fewer than n grid steps");
  }
  ZigzagResult out;
  out.a = static_cast<double>(ia) * delta;
  out.b = static_cast<double>(ib) * delta;
  out.snapped = out.a != a || out.b != b || (ib - ia) % n != 0;
  out.threshold = std::sqrt(out.b - out.a);
  out.holds = true;
  std::int64_t prev = ia;
  for (int k = 0; k < n; ++k) {
    const std::int64_t next = ia + static_cast<std::int64_t>(std::llround(static_cast<double>((k + 1) * (ib - ia)) / n));
    const double inc = path.value(static_cast<std::size_t>(next)) - path.value(static_cast<std::size_t>(prev));
    out.increments.push_back(inc);
    const bool sign_ok = k % 2 == 0 ? inc > 0.0 : inc < 0.0;
    if (!sign_ok || std::abs(inc) < out.threshold) {
      out.holds = false;
    }
    prev = next;
  }
  return out;
}

} // namespace assouad
