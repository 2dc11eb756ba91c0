#include "pgraph/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace pgraph {
namespace {

constexpr double kPixelsPerMeter = 50.0;
constexpr double kMargin = 0.5;  // m
constexpr double kEdgeWidth = 1.5;

struct Frame {
  double x0, y1;  // world coordinates of the top-left corner

  double px(double x) const { return (x - x0) * kPixelsPerMeter; }
  double py(double y) const { return (y1 - y) * kPixelsPerMeter; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return std::string(buf) == "-0.00" ? "0.00" : buf;
}

const char* color_for(const TraceEdge& e) {
  if (e.kind == EdgeKind::Jump) return kJumpColor;
  return e.action == kCrawl ? kCrawlColor : kWalkColor;
}

void draw_edge(std::ostringstream& svg, const Frame& f, const TraceSummary& trace, const TraceEdge& e, double width) {
  const Pose& a = trace.vertices.at(e.from).pose;
  const Pose& b = trace.vertices.at(e.to).pose;
  svg << "<line x1=\"" << num(f.px(a.x())) << "\" y1=\"" << num(f.py(a.y())) << "\" x2=\"" << num(f.px(b.x()))
      << "\" y2=\"" << num(f.py(b.y())) << "\" stroke=\"" << color_for(e) << "\" stroke-width=\"" << num(width)
      << "\"";
  if (e.kind == EdgeKind::Jump) {
    svg << " stroke-dasharray=\"6,3\">";
    if (e.arc) {
      const BallisticArc& arc = *e.arc;
      const double vz = arc.launch_speed * std::sin(arc.launch_angle);
      const double apex = arc.origin.z() + vz * vz / (2.0 * arc.gravity);
      svg << "<title>jump " << num(arc.launch_angle * 180.0 / std::numbers::pi) << " deg, " << num(arc.launch_speed)
          << " m/s, apex z " << num(apex) << " m</title>";
    }
    svg << "</line>\n";
  } else {
    svg << "/>\n";
  }
}

}  // namespace

std::string render_svg(const Scenario& scenario, const TraceSummary& trace) {
  const Environment& env = scenario.environment;
  double x0 = scenario.sampling_bounds.x.lo, x1 = scenario.sampling_bounds.x.hi;
  double y0 = scenario.sampling_bounds.y.lo, y1 = scenario.sampling_bounds.y.hi;
  for (const auto& s : env.slabs) {
    x0 = std::min(x0, s.x_range.lo);
    x1 = std::max(x1, s.x_range.hi);
    y0 = std::min(y0, s.y_range.lo);
    y1 = std::max(y1, s.y_range.hi);
  }
  x0 -= kMargin;
  y0 -= kMargin;
  x1 += kMargin;
  y1 += kMargin;
  const Frame f{x0, y1};
  const double width = (x1 - x0) * kPixelsPerMeter;
  const double height = (y1 - y0) * kPixelsPerMeter;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";
  svg << "<title>" << scenario.name << "</title>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height) << "\" fill=\"#ffffff\"/>\n";

  svg << "<g id=\"slabs\" fill=\"#c8c8c8\">\n";
  for (const auto& s : env.slabs) {
    svg << "<rect x=\"" << num(f.px(s.x_range.lo)) << "\" y=\"" << num(f.py(s.y_range.hi)) << "\" width=\""
        << num(s.x_range.length() * kPixelsPerMeter) << "\" height=\"" << num(s.y_range.length() * kPixelsPerMeter)
        << "\"/>\n";
  }
  svg << "</g>\n<g id=\"obstacles\" fill=\"#333333\" fill-opacity=\"0.85\">\n";
  for (const auto& box : env.obstacles) {
    svg << "<polygon points=\"";
    const auto corners = box.corners_xy();
    for (std::size_t i = 0; i < corners.size(); ++i) {
      svg << (i ? " " : "") << num(f.px(corners[i].x())) << ',' << num(f.py(corners[i].y()));
    }
    svg << "\"/>\n";
  }
  svg << "</g>\n<g id=\"edges\" stroke-linecap=\"round\">\n";
  for (const auto& e : trace.edges) {
    if (!e.removed) draw_edge(svg, f, trace, e, kEdgeWidth);
  }
  svg << "</g>\n<g id=\"solution\" stroke-linecap=\"round\">\n";
  for (std::uint32_t id : trace.solution) draw_edge(svg, f, trace, trace.edges.at(id), 2.0 * kEdgeWidth);
  svg << "</g>\n<g id=\"endpoints\">\n";
  svg << "<circle cx=\"" << num(f.px(scenario.start.x())) << "\" cy=\"" << num(f.py(scenario.start.y()))
      << "\" r=\"6\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  for (const auto& g : scenario.goals) {
    svg << "<circle cx=\"" << num(f.px(g.x())) << "\" cy=\"" << num(f.py(g.y()))
        << "\" r=\"6\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace pgraph
