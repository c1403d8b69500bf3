#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace assouad {

/// Raised when a requested method is not defined for the given input
/// (non-Gaussian quadrature, trails above three dimensions, ...).
class UnsupportedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when circulant embedding produces an eigenvalue below tolerance.
class EmbeddingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Polynomial integrand f(x) = sum_j coeffs[j] x^j.
class Integrand {
public:
  Integrand() = default;
  explicit Integrand(std::vector<double> coeffs);

  double operator()(double x) const;
  Integrand derivative() const;

  const std::vector<double>& coeffs() const { return coeffs_; }

  /// Minimum of f over [0, 1] sampled at `samples` equally spaced points.
  double min_on_unit(std::size_t samples = 10000) const;
  /// Maximum of |f| over [0, 1], sampled the same way.
  double max_abs_on_unit(std::size_t samples = 10000) const;

  bool operator==(const Integrand&) const = default;

private:
  std::vector<double> coeffs_{1.0};
};

enum class Family { wiener, bm_d, stable, fbm, ito_integral, deterministic };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

/// Process family tag plus the parameters that family requires.
///
/// `deterministic` tags injected fixture paths (sampled functions) and
/// carries no parameters.
struct ProcessSpec {
  Family family = Family::wiener;
  std::optional<double> beta;
  std::optional<double> hurst;
  std::optional<std::size_t> dim;
  std::optional<Integrand> integrand;

  static ProcessSpec wiener();
  static ProcessSpec bm_d(std::size_t d);
  /// beta = 2 is allowed; the unit variate then is N(0, 2).
  static ProcessSpec stable(double beta);
  static ProcessSpec fbm(double hurst);
  static ProcessSpec ito(Integrand f);
  static ProcessSpec deterministic();

  /// Throws std::invalid_argument unless exactly the family's parameters are
  /// present and in range.
  void validate() const;

  /// Number of coordinates a path of this process carries.
  std::size_t coordinates() const;

  bool operator==(const ProcessSpec&) const = default;
};

/// One sample path on the uniform grid t_k = k * delta, k = 0..n_steps.
///
/// Values are stored row-major, (n_steps + 1) x dim. Every coordinate starts
/// at 0 and all entries are finite; both are checked on construction.
class SamplePath {
public:
  SamplePath(ProcessSpec spec, double delta, std::size_t dim, std::vector<double> values,
             std::uint64_t seed);

  std::size_t n_steps() const { return points() - 1; }
  std::size_t points() const { return values_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  double delta() const { return delta_; }
  double time(std::size_t k) const { return static_cast<double>(k) * delta_; }
  std::uint64_t seed() const { return seed_; }
  const ProcessSpec& spec() const { return spec_; }

  double value(std::size_t k, std::size_t coordinate = 0) const {
    return values_[k * dim_ + coordinate];
  }
  std::span<const double> row(std::size_t k) const {
    return {values_.data() + k * dim_, dim_};
  }
  std::span<const double> values() const { return values_; }
  std::vector<double> coordinate(std::size_t j) const;
  std::vector<double> times() const;

  /// Keeps every `stride`-th grid point; n_steps must be divisible by stride.
  SamplePath subsample(std::size_t stride) const;

  /// True when both paths have the same number of points and grid step.
  bool same_grid(const SamplePath& other) const;

private:
  ProcessSpec spec_;
  double delta_;
  std::size_t dim_;
  std::vector<double> values_;
  std::uint64_t seed_;
};

/// Path of a deterministic function sampled on [0, 1], shifted so it starts
/// at 0. `family` lets fixtures stand in for a particular process.
template <class F>
SamplePath sample_function(F&& fn, std::size_t n_steps, ProcessSpec spec = ProcessSpec::deterministic()) {
  if (n_steps == 0) {
    throw std::invalid_argument("sample_function: n_steps must be positive");
  }
  const double delta = 1.0 / static_cast<double>(n_steps);
  std::vector<double> values(n_steps + 1);
  const double origin = fn(0.0);
  for (std::size_t k = 0; k <= n_steps; ++k) {
    values[k] = fn(static_cast<double>(k) * delta) - origin;
  }
  return SamplePath(std::move(spec), delta, 1, std::move(values), 0);
}

/// Wiener path on [0, 1] with n_steps Gaussian increments of variance 1/n_steps.
SamplePath gen_wiener(std::size_t n_steps, std::uint64_t seed);

/// d independent Wiener coordinates; coordinate j uses derive_seed(seed, 0, j).
SamplePath gen_bm_d(std::size_t n_steps, std::size_t d, std::uint64_t seed);

/// Unit symmetric beta-stable variate (characteristic function exp(-|theta|^beta))
/// by the Chambers-Mallows-Stuck method.
double stable_variate(double beta, double uniform, double exponential);

/// Symmetric beta-stable Levy path: increments delta^(1/beta) * S_beta.
SamplePath gen_stable(std::size_t n_steps, double beta, std::uint64_t seed);

enum class FbmMethod { circulant, exact };

/// Largest n_steps accepted by the exact O(N^2) generator.
inline constexpr std::size_t kExactFbmLimit = 4096;

/// Autocovariance of unit fractional Gaussian noise at integer lag k.
double fgn_autocovariance(double hurst, std::size_t k);

/// Eigenvalues of the 2N circulant embedding of the fGn covariance.
/// Throws EmbeddingError if one falls below -1e-9 * max.
std::vector<double> circulant_eigenvalues(std::size_t n, double hurst);

/// Fractional Brownian motion with Hurst index `hurst` on [0, 1]. The
/// circulant method is Davies-Harte; the exact method is Durbin-Levinson
/// conditioning (O(N^2), N <= kExactFbmLimit).
SamplePath gen_fbm(std::size_t n_steps, double hurst, std::uint64_t seed,
                   FbmMethod method = FbmMethod::circulant);

/// Dispatches on spec.family; ito_integral integrates against gen_wiener(n_steps, seed).
SamplePath simulate(const ProcessSpec& spec, std::size_t n_steps, std::uint64_t seed);

} // namespace assouad
