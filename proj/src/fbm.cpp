#include "assouad/process.hpp"
#include "assouad/rng.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <string>

namespace assouad {

namespace {

// fftw planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer allocate(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) {
    throw std::bad_alloc();
  }
  return FftwBuffer(p);
}

/// In-place forward DFT, sum_j x_j exp(-2 pi i jk / n).
void forward_dft(fftw_complex* data, std::size_t n) {
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), data, data, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

void check_fbm_args(std::size_t n_steps, double hurst) {
  if (n_steps == 0) {
    throw std::invalid_argument("gen_fbm: n_steps must be at least 1");
  }
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw std::invalid_argument("gen_fbm: hurst must lie in (0, 1)");
  }
}

std::vector<double> circulant_noise(std::size_t n, double hurst, RandomStream& rng) {
  const auto lambda = circulant_eigenvalues(n, hurst);
  const std::size_t m = lambda.size();
  auto buf = allocate(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double amp = std::sqrt(std::max(lambda[k], 0.0) / static_cast<double>(m));
    buf[k][0] = amp * rng.normal();
    buf[k][1] = amp * rng.normal();
  }
  forward_dft(buf.get(), m);
  std::vector<double> noise(n);
  for (std::size_t k = 0; k < n; ++k) {
    noise[k] = buf[k][0];
  }
  return noise;
}

std::vector<double> durbin_levinson_noise(std::size_t n, double hurst, RandomStream& rng) {
  std::vector<double> gamma(n);
  for (std::size_t k = 0; k < n; ++k) {
    gamma[k] = fgn_autocovariance(hurst, k);
  }
  std::vector<double> x(n);
  std::vector<double> phi;
  std::vector<double> next;
  phi.reserve(n);
  next.reserve(n);
  double v = gamma[0];
  x[0] = std::sqrt(v) * rng.normal();
  for (std::size_t t = 1; t < n; ++t) {
    double acc = gamma[t];
    for (std::size_t j = 1; j < t; ++j) {
      acc -= phi[j - 1] * gamma[t - j];
    }
    const double reflection = acc / v;
    next.assign(t, 0.0);
    for (std::size_t j = 1; j < t; ++j) {
      next[j - 1] = phi[j - 1] - reflection * phi[t - j - 1];
    }
    next[t - 1] = reflection;
    phi.swap(next);
    v *= (1.0 - reflection * reflection);
    double mean = 0.0;
    for (std::size_t j = 1; j <= t; ++j) {
      mean += phi[j - 1] * x[t - j];
    }
    x[t] = mean + std::sqrt(std::max(v, 0.0)) * rng.normal();
  }
  return x;
}

} // namespace

double fgn_autocovariance(double hurst, std::size_t k) {
  const double h2 = 2.0 * hurst;
  const double kk = static_cast<double>(k);
  if (k == 0) {
    return 1.0;
  }
  return 0.5 * (std::pow(kk + 1.0, h2) + std::pow(kk - 1.0, h2) - 2.0 * std::pow(kk, h2));
}

std::vector<double> circulant_eigenvalues(std::size_t n, double hurst) {
  const std::size_t m = 2 * n;
  auto buf = allocate(m);
  for (std::size_t k = 0; k <= n; ++k) {
    buf[k][0] = fgn_autocovariance(hurst, k);
    buf[k][1] = 0.0;
  }
  for (std::size_t k = n + 1; k < m; ++k) {
    buf[k][0] = buf[m - k][0];
    buf[k][1] = 0.0;
  }
  forward_dft(buf.get(), m);
  std::vector<double> lambda(m);
  double largest = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    lambda[k] = buf[k][0];
    largest = std::max(largest, lambda[k]);
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (lambda[k] < -1e-9 * largest) {
      throw EmbeddingError("circulant embedding failed: eigenvalue " + std::to_string(lambda[k]) +
                           " at index " + std::to_string(k));
    }
  }
  return lambda;
}

SamplePath gen_fbm(std::size_t n_steps, double hurst, std::uint64_t seed, FbmMethod method) {
  check_fbm_args(n_steps, hurst);
  RandomStream rng(seed);
  std::vector<double> noise;
  if (method == FbmMethod::exact) {
    if (n_steps > kExactFbmLimit) {
      throw std::invalid_argument("gen_fbm: exact method is limited to n_steps <= " +
                                  std::to_string(kExactFbmLimit));
    }
    noise = durbin_levinson_noise(n_steps, hurst, rng);
  } else {
    noise = circulant_noise(n_steps, hurst, rng);
  }
  const double delta = 1.0 / static_cast<double>(n_steps);
  const double scale = std::pow(delta, hurst);
  std::vector<double> values(n_steps + 1);
  for (std::size_t k = 0; k < n_steps; ++k) {
    values[k + 1] = values[k] + scale * noise[k];
  }
  return SamplePath(ProcessSpec::fbm(hurst), delta, 1, std::move(values), seed);
}

} // namespace assouad
