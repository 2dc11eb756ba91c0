#pragma once

#include <string>

#include "pgraph/scenario.hpp"
#include "pgraph/trace.hpp"

namespace pgraph {

inline constexpr const char* kWalkColor = "#2ca02c";
inline constexpr const char* kCrawlColor = "#87cefa";
inline constexpr const char* kJumpColor = "#ff00ff";

/// Top-down SVG of the environment with the traced graph drawn over it. The solution
/// path, when present, is overdrawn at twice the stroke width. Output depends only on
/// the inputs.
std::string render_svg(const Scenario& scenario, const TraceSummary& trace);

}  // namespace pgraph
