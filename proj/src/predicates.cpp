#include "assouad/predicates.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace assouad {

namespace {

// Shewchuk's bound for the first-stage orientation filter.
constexpr double kEpsilon = std::numeric_limits<double>::epsilon() / 2.0;
constexpr double kOrientBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;

int orient2d_exact(double ax, double ay, double bx, double by, double cx, double cy) {
  const mpq_class acx = mpq_class(ax) - mpq_class(cx);
  const mpq_class bcy = mpq_class(by) - mpq_class(cy);
  const mpq_class acy = mpq_class(ay) - mpq_class(cy);
  const mpq_class bcx = mpq_class(bx) - mpq_class(cx);
  const mpq_class det = acx * bcy - acy * bcx;
  return sgn(det);
}

// Knuth's TwoSum: true when a - b is representable.
bool exact_difference(double a, double b) {
  const double s = a - b;
  const double bv = s - a;
  const double av = s - bv;
  return (a - av) + (-b - bv) == 0.0;
}

// When all differences and both products are error-free, left - right
// rounds to a value with the exact sign.
int orient2d_error_free(double ax, double ay, double bx, double by, double cx, double cy) {
  if (!exact_difference(ax, cx) || !exact_difference(by, cy) || !exact_difference(ay, cy) ||
      !exact_difference(bx, cx)) {
    return 2;
  }
  const double acx = ax - cx;
  const double bcy = by - cy;
  const double acy = ay - cy;
  const double bcx = bx - cx;
  const double left = acx * bcy;
  const double right = acy * bcx;
  if (std::fma(acx, bcy, -left) != 0.0 || std::fma(acy, bcx, -right) != 0.0) {
    return 2;
  }
  // The product error is only trustworthy far from underflow.
  const auto safe = [](double product, double u, double v) {
    return product == 0.0 ? (u == 0.0 || v == 0.0) : std::abs(product) >= 0x1p-900;
  };
  if (!safe(left, acx, bcy) || !safe(right, acy, bcx)) {
    return 2;
  }
  return left > right ? 1 : (left < right ? -1 : 0);
}

int orient2d_fallback(double ax, double ay, double bx, double by, double cx, double cy) {
  const int s = orient2d_error_free(ax, ay, bx, by, cx, cy);
  return s != 2 ? s : orient2d_exact(ax, ay, bx, by, cx, cy);
}

} // namespace

int orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
  const double left = (ax - cx) * (by - cy);
  const double right = (ay - cy) * (bx - cx);
  const double det = left - right;
  double sum;
  if (left > 0.0) {
    if (right <= 0.0) {
      return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    }
    sum = left + right;
  } else if (left < 0.0) {
    if (right >= 0.0) {
      return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    }
    sum = -left - right;
  } else {
    // a rounded difference is zero only when the operands are equal, so a
    // zero product is exact unless it underflowed.
    const bool left_exact = ax == cx || by == cy;
    const bool right_exact = right != 0.0 || ay == cy || bx == cx;
    if (left_exact && right_exact) {
      return right < 0.0 ? 1 : (right > 0.0 ? -1 : 0);
    }
    return orient2d_fallback(ax, ay, bx, by, cx, cy);
  }
  const double bound = kOrientBound * sum;
  if (det >= bound || -det >= bound) {
    return det > 0.0 ? 1 : -1;
  }
  return orient2d_fallback(ax, ay, bx, by, cx, cy);
}

bool segment_meets_box(std::span<const double> p, std::span<const double> q,
                       std::span<const double> lo, std::span<const double> hi) {
  const std::size_t d = p.size();
  if (d == 0 || d > 3 || q.size() != d || lo.size() != d || hi.size() != d) {
    throw std::invalid_argument("segment_meets_box: dimension must be 1..3 and consistent");
  }
  for (std::size_t k = 0; k < d; ++k) {
    if (std::max(p[k], q[k]) < lo[k] || std::min(p[k], q[k]) > hi[k]) {
      return false;
    }
  }
  // Remaining separating axes are d x e_k; in coordinates each is a planar
  // orientation test on a pair of axes.
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      int positive = 0;
      int negative = 0;
      for (int corner = 0; corner < 4; ++corner) {
        const double ca = (corner & 1) ? hi[a] : lo[a];
        const double cb = (corner & 2) ? hi[b] : lo[b];
        const int s = orient2d(p[a], p[b], q[a], q[b], ca, cb);
        positive += s > 0;
        negative += s < 0;
      }
      if (positive == 4 || negative == 4) {
        return false;
      }
    }
  }
  return true;
}

} // namespace assouad
