#include "frameforge/layout.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace frameforge {
namespace {

bool overlaps(const BoundingBox& a, const BoundingBox& b) {
  const auto a_right = std::int64_t{a.left} + a.width;
  const auto b_right = std::int64_t{b.left} + b.width;
  const auto a_bottom = std::int64_t{a.top} + a.height;
  const auto b_bottom = std::int64_t{b.top} + b.height;
  return a.left < b_right && b.left < a_right && a.top < b_bottom && b.top < a_bottom;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int32_t narrow(std::int64_t v) {
  if (v < std::numeric_limits<std::int32_t>::min() || v > std::numeric_limits<std::int32_t>::max()) {
    throw DiagnosticError(codes::kBadLayoutParams, "", "layout coordinates exceed the 32-bit range");
  }
  return static_cast<std::int32_t>(v);
}

std::int64_t center_x(const BoundingBox& b) { return b.left + floor_div(b.width, 2); }
std::int64_t center_y(const BoundingBox& b) { return b.top + floor_div(b.height, 2); }

// Longest-path rank along g and i arcs (subordinate -> superordinate).
// Cycles are reported with one offending loop.
std::unordered_map<ElementId, std::int64_t> compute_ranks(const FrameDiagram& d) {
  std::unordered_map<ElementId, std::vector<ElementId>> up;
  for (const auto& e : d.elements()) {
    const auto t = e.kind.tag();
    if (t == ElementKind::Tag::generalization || t == ElementKind::Tag::instantiation) {
      up[e.prev].push_back(e.next);
    }
  }

  enum class Mark { fresh, active, done };
  std::unordered_map<ElementId, Mark> mark;
  std::unordered_map<ElementId, std::int64_t> rank;
  for (const auto& e : d.elements()) {
    if (e.is_node()) mark[e.id] = Mark::fresh;
  }

  struct Frame {
    ElementId node;
    std::size_t next_edge = 0;
  };
  for (const auto& start : d.elements()) {
    if (!start.is_node() || mark[start.id] != Mark::fresh) continue;
    std::vector<Frame> stack{{start.id}};
    mark[start.id] = Mark::active;
    rank[start.id] = 0;
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& edges = up[top.node];
      if (top.next_edge < edges.size()) {
        const ElementId target = edges[top.next_edge++];
        if (mark[target] == Mark::active) {
          std::string cycle;
          auto it = std::find_if(stack.begin(), stack.end(), [&](const Frame& f) { return f.node == target; });
          for (; it != stack.end(); ++it) cycle += it->node.str() + " -> ";
          cycle += target.str();
          throw DiagnosticError(codes::kCyclicHierarchy, target.str(), "hierarchy cycle: " + cycle);
        }
        if (mark[target] == Mark::fresh) {
          mark[target] = Mark::active;
          rank[target] = 0;
          stack.push_back({target});
        }
        continue;
      }
      std::int64_t r = 0;
      for (const ElementId t : edges) r = std::max(r, rank[t] + 1);
      rank[top.node] = r;
      mark[top.node] = Mark::done;
      stack.pop_back();
    }
  }
  return rank;
}

}  // namespace

FrameDiagram auto_layout(const FrameDiagram& d, const LayoutParams& p) {
  if (p.node_width < 1 || p.node_height < 1 || p.h_gap < 1 || p.v_gap < 1 || p.origin_left < 1 || p.origin_top < 1) {
    throw DiagnosticError(codes::kBadLayoutParams, "", "layout parameters must all be positive");
  }
  if (auto problems = validate_diagram(d); !problems.empty()) {
    throw DiagnosticError(std::move(problems));
  }
  const auto rank = compute_ranks(d);

  std::vector<FrameElement> elements(d.elements().begin(), d.elements().end());
  std::vector<BoundingBox> occupied;
  std::vector<FrameElement*> pending;
  for (auto& e : elements) {
    if (!e.is_node()) continue;
    if (e.bbox) {
      occupied.push_back(*e.bbox);
    } else {
      pending.push_back(&e);
    }
  }
  std::sort(pending.begin(), pending.end(), [&rank](const FrameElement* a, const FrameElement* b) {
    const auto ra = rank.at(a->id);
    const auto rb = rank.at(b->id);
    return ra != rb ? ra < rb : a->id < b->id;
  });

  const std::int64_t h_pitch = std::int64_t{p.node_width} + p.h_gap;
  const std::int64_t v_pitch = std::int64_t{p.node_height} + p.v_gap;
  std::int64_t current_rank = -1;
  std::int64_t slot = 0;
  for (FrameElement* e : pending) {
    const std::int64_t r = rank.at(e->id);
    if (r != current_rank) {
      current_rank = r;
      slot = 0;
    }
    const std::int32_t top = narrow(p.origin_top + r * v_pitch);
    BoundingBox box{narrow(p.origin_left + slot * h_pitch), top, p.node_width, p.node_height};
    while (std::any_of(occupied.begin(), occupied.end(), [&box](const BoundingBox& o) { return overlaps(box, o); })) {
      ++slot;
      box.left = narrow(p.origin_left + slot * h_pitch);
    }
    e->bbox = box;
    occupied.push_back(box);
    ++slot;
  }

  std::unordered_map<ElementId, BoundingBox> node_box;
  for (const auto& e : elements) {
    if (e.is_node()) node_box.emplace(e.id, *e.bbox);
  }
  for (auto& e : elements) {
    if (e.is_node() || e.bbox) continue;
    const BoundingBox& a = node_box.at(e.prev);
    const BoundingBox& b = node_box.at(e.next);
    const std::int64_t mx = floor_div(center_x(a) + center_x(b), 2);
    const std::int64_t my = floor_div(center_y(a) + center_y(b), 2);
    e.bbox = BoundingBox{narrow(mx - kArcBoxSize / 2), narrow(my - kArcBoxSize / 2), kArcBoxSize, kArcBoxSize};
  }
  return FrameDiagram(std::move(elements));
}

}  // namespace frameforge
