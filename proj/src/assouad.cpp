#include "assouad/assouad.hpp"

#include "assouad/counting.hpp"
#include "assouad/parallel.hpp"
#include "assouad/stats.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace assouad {

void AssouadPlan::validate() const {
  if (!(anchor_spacing > 0.0)) {
    throw std::invalid_argument("assouad plan: anchor spacing must be positive");
  }
  if (depth < 1) {
    throw std::invalid_argument("assouad plan: depth must be at least 1");
  }
  const auto power_of_two = [](int v) { return v > 0 && std::has_single_bit(static_cast<unsigned>(v)); };
  if (!power_of_two(min_ratio) || !power_of_two(max_ratio) || max_ratio < 2 * min_ratio) {
    throw std::invalid_argument("assouad plan: ratios must be powers of two with max_ratio >= 2 * min_ratio");
  }
}

std::vector<double> AssouadPlan::outer_scales() const {
  std::vector<double> out;
  for (int i = 0; i < depth; ++i) {
    out.push_back(std::ldexp(1.0, -(first_outer + i)));
  }
  return out;
}

std::vector<int> AssouadPlan::ratios() const {
  std::vector<int> out;
  for (int q = min_ratio; q <= max_ratio; q *= 2) {
    out.push_back(q);
  }
  return out;
}

std::vector<Point2> plan_anchors(const Graph2D& g, const AssouadPlan& plan) {
  plan.validate();
  if (plan.exhaustive) {
    return g.vertices();
  }
  std::vector<Point2> anchors;
  const double t0 = g.bbox().lo.x;
  const double t1 = g.bbox().hi.x;
  const auto first = static_cast<std::int64_t>(std::ceil(t0 / plan.anchor_spacing));
  for (std::int64_t k = first;; ++k) {
    const double t = static_cast<double>(k) * plan.anchor_spacing;
    if (t > t1) {
      break;
    }
    anchors.push_back({t, g.value_at(t)});
  }
  return anchors;
}

AssouadProfile assouad_profile(const Graph2D& g, const AssouadPlan& plan) {
  const auto anchors = plan_anchors(g, plan);
  return assouad_profile(g, anchors, plan);
}

AssouadProfile assouad_profile(const Graph2D& g, std::span<const Point2> anchors, const AssouadPlan& plan) {
  plan.validate();
  if (anchors.empty()) {
    throw std::invalid_argument("assouad_profile: no anchors");
  }
  const auto outer = plan.outer_scales();
  const auto ratios = plan.ratios();
  const int levels = static_cast<int>(ratios.size());
  const std::size_t series_count = anchors.size() * outer.size();

  std::vector<double> x(ratios.size());
  for (std::size_t m = 0; m < ratios.size(); ++m) {
    x[m] = std::log(static_cast<double>(ratios[m]));
  }

  // Slot s holds the records of anchor s / |outer| at scale s % |outer|,
  // ordered by increasing ratio.
  std::vector<std::vector<AssouadRecord>> slots(series_count);
  parallel_for(static_cast<std::int64_t>(series_count), [&](std::int64_t s) {
    const Point2 anchor = anchors[static_cast<std::size_t>(s) / outer.size()];
    const double R = outer[static_cast<std::size_t>(s) % outer.size()];
    const double r_fine = R / static_cast<double>(plan.max_ratio);
    std::vector<std::int64_t> capacity;
    // cover_series runs fine to coarse; ratios run coarse to fine.
    const auto counts = cover_series(g, anchor, R, r_fine, levels, &capacity);
    std::vector<double> y(ratios.size());
    auto& out = slots[static_cast<std::size_t>(s)];
    out.resize(ratios.size());
    for (std::size_t m = 0; m < ratios.size(); ++m) {
      const std::size_t level = ratios.size() - 1 - m;
      out[m] = {anchor.x, anchor.y, R, R / static_cast<double>(ratios[m]), counts[level], capacity[level], 0.0};
      y[m] = std::log(static_cast<double>(std::max<std::int64_t>(counts[level], 1)));
    }
    const double slope = fit_line(x, y).slope;
    for (auto& rec : out) {
      rec.exponent = slope;
    }
  });

  AssouadProfile profile;
  profile.records.reserve(series_count * ratios.size());
  bool first = true;
  for (const auto& series : slots) {
    if (first || series.front().exponent > profile.max_exponent) {
      profile.max_exponent = series.front().exponent;
      profile.witness = series.back();
      first = false;
    }
    profile.records.insert(profile.records.end(), series.begin(), series.end());
  }
  return profile;
}

} // namespace assouad
