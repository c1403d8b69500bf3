#include "assouad/process.hpp"

#include "assouad/integral.hpp"
#include "assouad/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace assouad {

// ---------------------------------------------------------------------------
// Integrand

Integrand::Integrand(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw std::invalid_argument("Integrand: need at least one coefficient");
  }
  for (double c : coeffs_) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("Integrand: coefficients must be finite");
    }
  }
}

double Integrand::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

Integrand Integrand::derivative() const {
  if (coeffs_.size() == 1) {
    return Integrand({0.0});
  }
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); ++j) {
    d[j - 1] = static_cast<double>(j) * coeffs_[j];
  }
  return Integrand(std::move(d));
}

double Integrand::min_on_unit(std::size_t samples) const {
  double lo = (*this)(0.0);
  for (std::size_t i = 1; i < samples; ++i) {
    lo = std::min(lo, (*this)(static_cast<double>(i) / static_cast<double>(samples - 1)));
  }
  return lo;
}

double Integrand::max_abs_on_unit(std::size_t samples) const {
  double hi = std::abs((*this)(0.0));
  for (std::size_t i = 1; i < samples; ++i) {
    hi = std::max(hi, std::abs((*this)(static_cast<double>(i) / static_cast<double>(samples - 1))));
  }
  return hi;
}

// ---------------------------------------------------------------------------
// ProcessSpec

std::string_view to_string(Family family) {
  switch (family) {
  case Family::wiener: return "wiener";
  case Family::bm_d: return "bm_d";
  case Family::stable: return "stable";
  case Family::fbm: return "fbm";
  case Family::ito_integral: return "ito_integral";
  case Family::deterministic: return "deterministic";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  for (Family f : {Family::wiener, Family::bm_d, Family::stable, Family::fbm, Family::ito_integral,
                   Family::deterministic}) {
    if (to_string(f) == name) {
      return f;
    }
  }
  throw std::invalid_argument("unknown process family '" + std::string(name) + "'");
}

ProcessSpec ProcessSpec::wiener() { return {}; }

ProcessSpec ProcessSpec::bm_d(std::size_t d) {
  ProcessSpec s;
  s.family = Family::bm_d;
  s.dim = d;
  s.validate();
  return s;
}

ProcessSpec ProcessSpec::stable(double beta) {
  ProcessSpec s;
  s.family = Family::stable;
  s.beta = beta;
  s.validate();
  return s;
}

ProcessSpec ProcessSpec::fbm(double hurst) {
  ProcessSpec s;
  s.family = Family::fbm;
  s.hurst = hurst;
  s.validate();
  return s;
}

ProcessSpec ProcessSpec::ito(Integrand f) {
  ProcessSpec s;
  s.family = Family::ito_integral;
  s.integrand = std::move(f);
  return s;
}

ProcessSpec ProcessSpec::deterministic() {
  ProcessSpec s;
  s.family = Family::deterministic;
  return s;
}

void ProcessSpec::validate() const {
  const bool want_beta = family == Family::stable;
  const bool want_hurst = family == Family::fbm;
  const bool want_dim = family == Family::bm_d;
  const bool want_integrand = family == Family::ito_integral;
  const std::string name(to_string(family));
  if (beta.has_value() != want_beta || hurst.has_value() != want_hurst ||
      dim.has_value() != want_dim || integrand.has_value() != want_integrand) {
    throw std::invalid_argument("process '" + name + "': parameters do not match the family");
  }
  if (beta && !(*beta > 0.0 && *beta <= 2.0)) {
    throw std::invalid_argument("stable: beta must lie in (0, 2]");
  }
  if (hurst && !(*hurst > 0.0 && *hurst < 1.0)) {
    throw std::invalid_argument("fbm: hurst must lie in (0, 1)");
  }
  if (dim && *dim == 0) {
    throw std::invalid_argument("bm_d: dimension must be positive");
  }
}

std::size_t ProcessSpec::coordinates() const { return dim.value_or(1); }

// ---------------------------------------------------------------------------
// SamplePath

SamplePath::SamplePath(ProcessSpec spec, double delta, std::size_t dim, std::vector<double> values,
                       std::uint64_t seed)
    : spec_(std::move(spec)), delta_(delta), dim_(dim), values_(std::move(values)), seed_(seed) {
  spec_.validate();
  if (!(delta_ > 0.0) || !std::isfinite(delta_)) {
    throw std::invalid_argument("SamplePath: grid step must be positive");
  }
  if (dim_ == 0 || values_.size() % dim_ != 0 || values_.size() / dim_ < 2) {
    throw std::invalid_argument("SamplePath: values must form an (N+1) x d matrix with N >= 1");
  }
  for (std::size_t j = 0; j < dim_; ++j) {
    if (values_[j] != 0.0) {
      throw std::invalid_argument("SamplePath: every coordinate must start at 0");
    }
  }
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("SamplePath: values must be finite");
  }
}

std::vector<double> SamplePath::coordinate(std::size_t j) const {
  std::vector<double> out(points());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = value(k, j);
  }
  return out;
}

std::vector<double> SamplePath::times() const {
  std::vector<double> out(points());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = time(k);
  }
  return out;
}

SamplePath SamplePath::subsample(std::size_t stride) const {
  if (stride == 0 || n_steps() % stride != 0) {
    throw std::invalid_argument("subsample: stride must divide n_steps");
  }
  const std::size_t m = n_steps() / stride;
  std::vector<double> out((m + 1) * dim_);
  for (std::size_t k = 0; k <= m; ++k) {
    std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(k * stride * dim_), dim_,
                out.begin() + static_cast<std::ptrdiff_t>(k * dim_));
  }
  return SamplePath(spec_, delta_ * static_cast<double>(stride), dim_, std::move(out), seed_);
}

bool SamplePath::same_grid(const SamplePath& other) const {
  return points() == other.points() && delta_ == other.delta_;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

void require_steps(std::size_t n_steps) {
  if (n_steps == 0) {
    throw std::invalid_argument("n_steps must be at least 1");
  }
}

std::vector<double> wiener_values(std::size_t n_steps, std::uint64_t seed) {
  RandomStream rng(seed);
  const double scale = std::sqrt(1.0 / static_cast<double>(n_steps));
  std::vector<double> values(n_steps + 1);
  values[0] = 0.0;
  for (std::size_t k = 0; k < n_steps; ++k) {
    values[k + 1] = values[k] + scale * rng.normal();
  }
  return values;
}

} // namespace

SamplePath gen_wiener(std::size_t n_steps, std::uint64_t seed) {
  require_steps(n_steps);
  return SamplePath(ProcessSpec::wiener(), 1.0 / static_cast<double>(n_steps), 1,
                    wiener_values(n_steps, seed), seed);
}

SamplePath gen_bm_d(std::size_t n_steps, std::size_t d, std::uint64_t seed) {
  require_steps(n_steps);
  if (d == 0) {
    throw std::invalid_argument("gen_bm_d: dimension must be positive");
  }
  std::vector<double> values((n_steps + 1) * d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto column = wiener_values(n_steps, derive_seed(seed, 0, j));
    for (std::size_t k = 0; k <= n_steps; ++k) {
      values[k * d + j] = column[k];
    }
  }
  return SamplePath(ProcessSpec::bm_d(d), 1.0 / static_cast<double>(n_steps), d,
                    std::move(values), seed);
}

double stable_variate(double beta, double uniform, double exponential) {
  const double v = std::numbers::pi * (uniform - 0.5);
  if (beta == 1.0) {
    return std::tan(v);
  }
  const double w = exponential;
  return std::sin(beta * v) / std::pow(std::cos(v), 1.0 / beta) *
         std::pow(std::cos((1.0 - beta) * v) / w, (1.0 - beta) / beta);
}

SamplePath gen_stable(std::size_t n_steps, double beta, std::uint64_t seed) {
  require_steps(n_steps);
  const ProcessSpec spec = ProcessSpec::stable(beta);
  RandomStream rng(seed);
  const double delta = 1.0 / static_cast<double>(n_steps);
  const double scale = std::pow(delta, 1.0 / beta);
  std::vector<double> values(n_steps + 1);
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double u = rng.uniform();
    const double e = rng.exponential();
    values[k + 1] = values[k] + scale * stable_variate(beta, u, e);
  }
  return SamplePath(spec, delta, 1, std::move(values), seed);
}

SamplePath simulate(const ProcessSpec& spec, std::size_t n_steps, std::uint64_t seed) {
  spec.validate();
  switch (spec.family) {
  case Family::wiener: return gen_wiener(n_steps, seed);
  case Family::bm_d: return gen_bm_d(n_steps, *spec.dim, seed);
  case Family::stable: return gen_stable(n_steps, *spec.beta, seed);
  case Family::fbm: return gen_fbm(n_steps, *spec.hurst, seed);
  case Family::ito_integral: return ito_integral(*spec.integrand, gen_wiener(n_steps, seed));
  case Family::deterministic: break;
  }
  throw std::invalid_argument("simulate: deterministic paths are built from functions, not seeds");
}

} // namespace assouad
