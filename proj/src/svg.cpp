#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>

#include "frameforge/uml_emit.hpp"
#include "text.hpp"

namespace frameforge {
namespace {

constexpr std::int64_t kMargin = 20;

std::string num(double v) {
  // One decimal place, trailing ".0" dropped, no negative zero.
  const double rounded = std::round(v * 10.0) / 10.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, rounded == 0.0 ? 0.0 : rounded, std::chars_format::fixed, 1);
  std::string s(buf, res.ptr);
  if (s.size() > 2 && s.compare(s.size() - 2, 2, ".0") == 0) s.resize(s.size() - 2);
  return s;
}

struct Point {
  double x;
  double y;
};

Point center(const BoundingBox& b) { return {b.left + b.width / 2.0, b.top + b.height / 2.0}; }

// Point where the segment from the centre of `b` towards `toward` leaves `b`.
Point exit_point(const BoundingBox& b, Point toward) {
  const Point c = center(b);
  const double dx = toward.x - c.x;
  const double dy = toward.y - c.y;
  if (dx == 0.0 && dy == 0.0) return c;
  const double sx = dx == 0.0 ? INFINITY : (b.width / 2.0) / std::abs(dx);
  const double sy = dy == 0.0 ? INFINITY : (b.height / 2.0) / std::abs(dy);
  const double s = std::min({sx, sy, 1.0});
  return {c.x + dx * s, c.y + dy * s};
}

}  // namespace

std::string render_frame_svg(const FrameDiagram& d) {
  for (const auto& e : d.elements()) {
    if (!e.bbox) {
      throw DiagnosticError(codes::kMissingGeometry, e.id.str(), "element " + e.id.str() + " has no geometry");
    }
  }
  if (auto problems = validate_diagram(d); !problems.empty()) {
    throw DiagnosticError(std::move(problems));
  }

  std::int64_t min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  bool first = true;
  for (const auto& e : d.elements()) {
    const auto& b = *e.bbox;
    const std::int64_t l = b.left, t = b.top, r = l + b.width, btm = t + b.height;
    if (first) {
      min_x = l, min_y = t, max_x = r, max_y = btm;
      first = false;
    } else {
      min_x = std::min(min_x, l), min_y = std::min(min_y, t);
      max_x = std::max(max_x, r), max_y = std::max(max_y, btm);
    }
  }
  const std::int64_t width = max_x - min_x + 2 * kMargin;
  const std::int64_t height = max_y - min_y + 2 * kMargin;

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
                    std::to_string(height) + "\" viewBox=\"" + std::to_string(min_x - kMargin) + " " +
                    std::to_string(min_y - kMargin) + " " + std::to_string(width) + " " + std::to_string(height) + "\"";
  if (d.empty()) {
    return out + "/>\n";
  }
  out += " font-family=\"sans-serif\" font-size=\"14\">\n";

  const bool has_arcs = std::any_of(d.elements().begin(), d.elements().end(), [](const auto& e) { return e.is_arc(); });
  if (has_arcs) {
    out += "  <defs>\n";
    out += "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" "
           "orient=\"auto-start-reverse\">\n";
    out += "      <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"black\"/>\n";
    out += "    </marker>\n";
    out += "  </defs>\n";
  }

  std::unordered_map<ElementId, const FrameElement*> by_id;
  for (const auto& e : d.elements()) by_id.emplace(e.id, &e);

  for (const auto& e : d.elements()) {
    if (!e.is_node()) continue;
    const auto& b = *e.bbox;
    const Point c = center(b);
    out += "  <g id=\"e" + e.id.str() + "\" class=\"" + text::xml_escape_attribute(e.kind.wire_tag()) + "\">\n";
    out += "    <rect x=\"" + std::to_string(b.left) + "\" y=\"" + std::to_string(b.top) + "\" width=\"" +
           std::to_string(b.width) + "\" height=\"" + std::to_string(b.height) + "\"";
    switch (e.kind.tag()) {
      case ElementKind::Tag::concept_node: out += " rx=\"12\" ry=\"12\""; break;
      case ElementKind::Tag::var: break;
      default: out += " stroke-dasharray=\"4 3\""; break;
    }
    out += " fill=\"white\" stroke=\"black\"/>\n";
    out += "    <text x=\"" + num(c.x) + "\" y=\"" + num(c.y) +
           "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" + text::xml_escape_text(e.name) + "</text>\n";
    out += "  </g>\n";
  }

  for (const auto& e : d.elements()) {
    if (e.is_node()) continue;
    const auto& from = *by_id.at(e.prev)->bbox;
    const auto& to = *by_id.at(e.next)->bbox;
    const Point a = exit_point(from, center(to));
    const Point b = exit_point(to, center(from));
    const Point mid{(center(from).x + center(to).x) / 2.0, (center(from).y + center(to).y) / 2.0};
    out += "  <g id=\"e" + e.id.str() + "\" class=\"" + text::xml_escape_attribute(e.kind.wire_tag()) + "\">\n";
    out += "    <line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) +
           "\" stroke=\"black\"";
    if (e.kind.is_unknown()) out += " stroke-dasharray=\"4 3\"";
    out += " marker-end=\"url(#arrow)\"/>\n";
    out += "    <text x=\"" + num(mid.x) + "\" y=\"" + num(mid.y) + "\" text-anchor=\"middle\" font-size=\"12\">" +
           text::xml_escape_text(e.name) + "</text>\n";
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace frameforge
