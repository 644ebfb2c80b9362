#include "frameforge/frame_model.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "text.hpp"

namespace frameforge {

ElementKind ElementKind::unknown(std::string tag) {
  if (tag.empty()) {
    throw std::invalid_argument("unknown element kind needs a non-empty tag");
  }
  ElementKind k(Tag::unknown);
  k.unknown_tag_ = std::move(tag);
  return k;
}

ElementKind ElementKind::from_wire(std::string_view tag) {
  if (tag == "Var") return var();
  if (tag == "Concept") return concept_node();
  if (tag == "i") return instantiation();
  if (tag == "g") return generalization();
  if (tag == "a") return association();
  return unknown(std::string(tag));
}

std::string_view ElementKind::wire_tag() const {
  switch (tag_) {
    case Tag::var: return "Var";
    case Tag::concept_node: return "Concept";
    case Tag::instantiation: return "i";
    case Tag::generalization: return "g";
    case Tag::association: return "a";
    case Tag::unknown: return unknown_tag_;
  }
  return unknown_tag_;
}

const FrameElement* FrameDiagram::find(ElementId id) const {
  for (const auto& e : elements_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

ElementId FrameDiagram::max_id() const {
  ElementId m;
  for (const auto& e : elements_) {
    m = std::max(m, e.id);
  }
  return m;
}

namespace {

void check_element(const FrameElement& e, bool duplicate,
                   const std::unordered_map<ElementId, const FrameElement*>& by_id,
                   std::vector<Diagnostic>& out) {
  std::vector<Diagnostic> local;
  const std::string el = e.id.str();
  if (e.id.value < 1) {
    local.push_back(make_error(codes::kInvalidId, el, "element id must be a positive integer"));
  }
  if (duplicate) {
    local.push_back(make_error(codes::kDupId, el, "id " + el + " is used by an earlier element"));
  }
  if (e.name.empty()) {
    local.push_back(make_error(codes::kEmptyName, el, "element name is empty"));
  } else if (!text::is_xml_text(e.name, false)) {
    local.push_back(make_error(codes::kInvalidText, el, "name contains characters that cannot be stored"));
  }
  if (e.description && !text::is_xml_text(*e.description, true)) {
    local.push_back(make_error(codes::kInvalidText, el, "description contains characters that cannot be stored"));
  }
  if (e.kind.is_unknown() && !text::is_xml_text(e.kind.wire_tag(), true)) {
    local.push_back(make_error(codes::kInvalidText, el, "kind tag contains characters that cannot be stored"));
  }
  if (e.bbox && (e.bbox->width < 1 || e.bbox->height < 1)) {
    local.push_back(make_error(codes::kBadGeometry, el, "width and height must be at least 1"));
  }
  if (e.is_node()) {
    if (!e.prev.is_null() || !e.next.is_null()) {
      local.push_back(make_error(codes::kNodeHasLinks, el, "node elements must have Prev = Next = 0"));
    }
  } else {
    if (e.prev.is_null() || e.next.is_null()) {
      local.push_back(make_error(codes::kArcMissingEndpoint, el, "arc needs both Prev and Next"));
    }
    for (const ElementId end : {e.prev, e.next}) {
      if (end.is_null()) continue;
      const auto it = by_id.find(end);
      if (it == by_id.end()) {
        local.push_back(make_error(codes::kDanglingRef, el, "link to missing element " + end.str()));
      } else if (it->second->is_arc()) {
        local.push_back(make_error(codes::kBadArcEndpoint, el, "link to element " + end.str() + ", which is an arc"));
      }
    }
    if (!e.prev.is_null() && e.prev == e.next) {
      local.push_back(make_error(codes::kBadArcEndpoint, el, "arc starts and ends at the same element"));
    }
  }
  std::stable_sort(local.begin(), local.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.code < b.code; });
  out.insert(out.end(), local.begin(), local.end());
}

std::unordered_map<ElementId, const FrameElement*> index_first(std::span<const FrameElement> elements) {
  std::unordered_map<ElementId, const FrameElement*> by_id;
  by_id.reserve(elements.size());
  for (const auto& e : elements) {
    by_id.emplace(e.id, &e);
  }
  return by_id;
}

}  // namespace

std::vector<Diagnostic> validate_diagram(const FrameDiagram& d) {
  std::vector<Diagnostic> out;
  const auto by_id = index_first(d.elements());
  std::unordered_set<ElementId> seen;
  seen.reserve(d.size());
  for (const auto& e : d.elements()) {
    const bool duplicate = !seen.insert(e.id).second;
    check_element(e, duplicate, by_id, out);
  }
  return out;
}

std::pair<FrameDiagram, ElementId> add_element(const FrameDiagram& d, FrameElement proto) {
  const ElementId top = d.max_id();
  if (top.value == std::numeric_limits<std::int32_t>::max()) {
    throw DiagnosticError(codes::kIdOverflow, "", "no ids left above " + top.str());
  }
  proto.id = ElementId(top.value + 1);
  std::vector<FrameElement> elements(d.elements().begin(), d.elements().end());
  elements.push_back(std::move(proto));

  FrameDiagram result(std::move(elements));
  const auto& added = result.elements().back();
  std::vector<Diagnostic> problems;
  check_element(added, false, index_first(result.elements()), problems);
  if (!problems.empty()) {
    throw DiagnosticError(std::move(problems));
  }
  return {std::move(result), added.id};
}

FrameDiagram remove_element(const FrameDiagram& d, ElementId id) {
  if (d.find(id) == nullptr) {
    throw NotFoundError(codes::kNotFound, id.str(), "no element with id " + id.str());
  }
  std::vector<FrameElement> kept;
  kept.reserve(d.size());
  for (const auto& e : d.elements()) {
    if (e.id == id) continue;
    if (e.is_arc() && (e.prev == id || e.next == id)) continue;
    kept.push_back(e);
  }
  return FrameDiagram(std::move(kept));
}

ArcEnds arc_endpoints(const FrameDiagram& d, ElementId arc_id) {
  const FrameElement* e = d.find(arc_id);
  if (e == nullptr) {
    throw NotFoundError(codes::kNotFound, arc_id.str(), "no element with id " + arc_id.str());
  }
  if (!e->is_arc()) {
    throw DiagnosticError(codes::kWrongKind, arc_id.str(),
                          "element " + arc_id.str() + " is a " + std::string(e->kind.wire_tag()) + " node, not an arc");
  }
  return ArcEnds{e->prev, e->next};
}

}  // namespace frameforge
