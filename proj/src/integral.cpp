#include "assouad/integral.hpp"

#include <cmath>

namespace assouad {

namespace {

void require_wiener(const SamplePath& base) {
  if (base.spec().family != Family::wiener) {
    throw std::invalid_argument("stochastic integral needs a Wiener base path, got '" +
                                std::string(to_string(base.spec().family)) + "'");
  }
}

} // namespace

SamplePath ito_integral(const Integrand& f, const SamplePath& base) {
  require_wiener(base);
  const std::size_t n = base.n_steps();
  std::vector<double> out(n + 1, 0.0);
  // running = sum_{j=1}^{k-1} W_j (f_j - f_{j-1})
  double running = 0.0;
  double f_prev = f(base.time(0));
  for (std::size_t k = 1; k <= n; ++k) {
    if (k >= 2) {
      const double f_cur = f(base.time(k - 1));
      running += base.value(k - 1) * (f_cur - f_prev);
      f_prev = f_cur;
    }
    out[k] = f_prev * base.value(k) - running;
  }
  return SamplePath(ProcessSpec::ito(f), base.delta(), 1, std::move(out), base.seed());
}

SamplePath integral_by_parts(const Integrand& f, const SamplePath& base) {
  require_wiener(base);
  const Integrand df = f.derivative();
  const std::size_t n = base.n_steps();
  const double h = base.delta();
  std::vector<double> out(n + 1, 0.0);
  double quad = 0.0;
  double g_prev = base.value(0) * df(base.time(0));
  for (std::size_t k = 1; k <= n; ++k) {
    const double g = base.value(k) * df(base.time(k));
    quad += 0.5 * h * (g_prev + g);
    g_prev = g;
    out[k] = f(base.time(k)) * base.value(k) - quad;
  }
  return SamplePath(ProcessSpec::ito(f), base.delta(), 1, std::move(out), base.seed());
}

double quadratic_covariation(const SamplePath& a, const SamplePath& b, double t,
                             std::size_t coordinate_a, std::size_t coordinate_b) {
  if (!a.same_grid(b)) {
    throw std::invalid_argument("quadratic_covariation: paths are on different grids");
  }
  if (coordinate_a >= a.dim() || coordinate_b >= b.dim()) {
    throw std::invalid_argument("quadratic_covariation: coordinate out of range");
  }
  const double steps = t / a.delta();
  const double rounded = std::round(steps);
  if (!(t > 0.0) || std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps) ||
      rounded > static_cast<double>(a.n_steps())) {
    throw std::invalid_argument("quadratic_covariation: t must be a grid time in (0, T]");
  }
  const auto last = static_cast<std::size_t>(rounded);
  double sum = 0.0;
  for (std::size_t i = 0; i < last; ++i) {
    sum += (a.value(i + 1, coordinate_a) - a.value(i, coordinate_a)) *
           (b.value(i + 1, coordinate_b) - b.value(i, coordinate_b));
  }
  return sum;
}

} // namespace assouad
