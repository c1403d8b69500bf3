#pragma once

#include "assouad/assouad.hpp"
#include "assouad/dimension.hpp"
#include "assouad/threading.hpp"
#include "assouad/windows.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace assouad {

nlohmann::json to_json(const DimensionFit& fit);
nlohmann::json to_json(const ThreadingReport& report);
nlohmann::json to_json(const Window& w);
nlohmann::json to_json(const AssouadRecord& rec);

Window window_from_json(const nlohmann::json& j);
/// Parses a JSON array of {anchor, sides, subdivisions}.
std::vector<Window> windows_from_json(const nlohmann::json& j);

/// Header `anchor_t,anchor_x,R,r,N,exponent`, one line per record.
std::string assouad_csv(const AssouadProfile& profile);

/// Static SVG scatter of log N against log(1/r) with the fitted line.
std::string loglog_svg(const DimensionFit& fit, const std::string& title);

} // namespace assouad
