#include "assouad/reports.hpp"

#include "assouad/path_io.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace assouad {

using nlohmann::json;

json to_json(const DimensionFit& fit) {
  return {{"scales", fit.scales},
          {"counts", fit.counts},
          {"slope", fit.slope},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared}};
}

json to_json(const ThreadingReport& report) {
  return {{"n", report.n},
          {"mc_frequency", report.mc_frequency},
          {"ci_low", report.ci.low},
          {"ci_high", report.ci.high},
          {"replicas", report.replicas},
          {"quadrature_bound", report.quadrature_bound ? json(*report.quadrature_bound) : json(nullptr)},
          {"full_window_frequency", report.full_window_frequency},
          {"full_window_ci_low", report.full_window_ci.low},
          {"full_window_ci_high", report.full_window_ci.high},
          {"n_steps", report.n_steps},
          {"slack", report.slack}};
}

json to_json(const Window& w) {
  return {{"anchor", w.anchor}, {"sides", w.sides}, {"subdivisions", w.subdivisions}};
}

json to_json(const AssouadRecord& rec) {
  return {{"anchor_t", rec.anchor_t}, {"anchor_x", rec.anchor_x}, {"R", rec.R},       {"r", rec.r},
          {"N", rec.N},               {"capacity", rec.capacity}, {"exponent", rec.exponent}};
}

Window window_from_json(const json& j) {
  Window w{j.at("anchor").get<std::vector<double>>(), j.at("sides").get<std::vector<double>>(),
           j.at("subdivisions").get<std::vector<std::int64_t>>()};
  w.validate();
  return w;
}

std::vector<Window> windows_from_json(const json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("window list must be a JSON array");
  }
  std::vector<Window> out;
  for (const auto& item : j) {
    out.push_back(window_from_json(item));
  }
  return out;
}

std::string assouad_csv(const AssouadProfile& profile) {
  std::string out = "anchor_t,anchor_x,R,r,N,exponent\n";
  for (const auto& rec : profile.records) {
    out += format_double(rec.anchor_t) + ',' + format_double(rec.anchor_x) + ',' + format_double(rec.R) + ',' +
           format_double(rec.r) + ',' + std::to_string(rec.N) + ',' + format_double(rec.exponent) + '\n';
  }
  return out;
}

std::string loglog_svg(const DimensionFit& fit, const std::string& title) {
  constexpr double width = 480;
  constexpr double height = 360;
  constexpr double margin = 48;
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < fit.scales.size(); ++i) {
    x.push_back(std::log2(1.0 / fit.scales[i]));
    y.push_back(std::log2(static_cast<double>(fit.counts[i])));
  }
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  const double x0 = *xmin - 0.5;
  const double x1 = *xmax + 0.5;
  const double y0 = *ymin - 0.5;
  const double y1 = *ymax + 0.5;
  const auto px = [&](double v) { return margin + (v - x0) / (x1 - x0) * (width - 2 * margin); };
  const auto py = [&](double v) { return height - margin - (v - y0) / (y1 - y0) * (height - 2 * margin); };
  const auto num = [](double v) { return format_double(std::round(v * 100.0) / 100.0); };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"360\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(margin) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" + title +
         " (slope " + num(fit.slope) + ")</text>\n";
  svg += "<line x1=\"" + num(margin) + "\" y1=\"" + num(height - margin) + "\" x2=\"" + num(width - margin) +
         "\" y2=\"" + num(height - margin) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(margin) + "\" y1=\"" + num(margin) + "\" x2=\"" + num(margin) + "\" y2=\"" +
         num(height - margin) + "\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + num(width / 2) + "\" y=\"" + num(height - 12) +
         "\" font-family=\"sans-serif\" font-size=\"12\">log2(1/r)</text>\n";
  svg += "<text x=\"8\" y=\"" + num(height / 2) + "\" font-family=\"sans-serif\" font-size=\"12\">log2 N</text>\n";
  // natural-log fit expressed in log2 units: log2 N = intercept / ln 2 + slope * log2(1/r)
  const double b = fit.intercept / std::log(2.0);
  svg += "<line x1=\"" + num(px(x0)) + "\" y1=\"" + num(py(b + fit.slope * x0)) + "\" x2=\"" + num(px(x1)) +
         "\" y2=\"" + num(py(b + fit.slope * x1)) + "\" stroke=\"steelblue\"/>\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    svg += "<circle cx=\"" + num(px(x[i])) + "\" cy=\"" + num(py(y[i])) + "\" r=\"3\" fill=\"black\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

} // namespace assouad
