#pragma once

#include "assouad/process.hpp"

namespace assouad {

/// Left-endpoint Ito sums B_f(t_k) = sum_{j<k} f(t_j) (W(t_{j+1}) - W(t_j)).
///
/// Evaluated in the summation-by-parts form
///   f(t_{k-1}) W(t_k) - sum_{j=1}^{k-1} W(t_j) (f(t_j) - f(t_{j-1})),
/// which is the same finite sum and reproduces W exactly when f is constant 1.
/// `base` must be a Wiener path.
SamplePath ito_integral(const Integrand& f, const SamplePath& base);

/// f(t_k) W(t_k) - Q(t_k), with Q the trapezoid quadrature of W f' on the grid.
SamplePath integral_by_parts(const Integrand& f, const SamplePath& base);

/// Sum of (a(t_{i+1}) - a(t_i)) (b(t_{i+1}) - b(t_i)) over grid steps up to t.
///
/// Both paths must share the grid and t must be a grid time in (0, T].
double quadratic_covariation(const SamplePath& a, const SamplePath& b, double t,
                             std::size_t coordinate_a = 0, std::size_t coordinate_b = 0);

} // namespace assouad
