#include "frameforge/translate.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace frameforge {
namespace {

using uml::RelationKind;
using uml::UmlId;

UmlId class_id(ElementId id) { return UmlId("C" + id.str()); }
UmlId instance_id(ElementId id) { return UmlId("O" + id.str()); }
UmlId relation_id(ElementId id) { return UmlId("R" + id.str()); }

UmlId image_of(const FrameElement& node) {
  return node.kind.tag() == ElementKind::Tag::concept_node ? instance_id(node.id) : class_id(node.id);
}

RelationKind relation_kind(ElementKind::Tag t) {
  switch (t) {
    case ElementKind::Tag::instantiation: return RelationKind::instance_of;
    case ElementKind::Tag::generalization: return RelationKind::generalization;
    default: return RelationKind::association;
  }
}

ElementKind role_kind(RelationKind k) {
  switch (k) {
    case RelationKind::instance_of: return ElementKind::instantiation();
    case RelationKind::generalization: return ElementKind::generalization();
    case RelationKind::association: return ElementKind::association();
  }
  return ElementKind::association();
}

std::string default_role_name(RelationKind k) {
  switch (k) {
    case RelationKind::instance_of: return "i role";
    case RelationKind::generalization: return "g role";
    case RelationKind::association: return "a role";
  }
  return "a role";
}

std::string comment_text(const FrameElement& e) { return "[" + std::string(e.kind.wire_tag()) + "] " + e.name; }

bool is_tag(const FrameElement* e, ElementKind::Tag t) { return e != nullptr && e->kind.tag() == t; }

}  // namespace

TranslationResult frame_to_uml(const FrameDiagram& d, const TranslateOptions& options) {
  if (auto problems = validate_diagram(d); !problems.empty()) {
    problems.insert(problems.begin(), make_error(codes::kInvalidDiagram, "", "frame diagram does not validate"));
    throw DiagnosticError(std::move(problems));
  }

  std::unordered_map<ElementId, const FrameElement*> by_id;
  by_id.reserve(d.size());
  for (const auto& e : d.elements()) by_id.emplace(e.id, &e);
  auto lookup = [&by_id](ElementId id) -> const FrameElement* {
    const auto it = by_id.find(id);
    return it == by_id.end() ? nullptr : it->second;
  };

  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;
  std::unordered_set<ElementId> skipped;
  std::unordered_map<ElementId, std::vector<const FrameElement*>> classifier_arcs;

  for (const auto& e : d.elements()) {
    const std::string el = e.id.str();
    if (e.kind.is_unknown()) {
      const std::string msg = "element kind '" + std::string(e.kind.wire_tag()) + "' has no UML image";
      if (options.strict) {
        errors.push_back(make_error(codes::kUnknownKind, el, msg));
      } else {
        warnings.push_back(make_warning(codes::kUnknownKind, el, msg + "; skipped"));
        skipped.insert(e.id);
      }
      continue;
    }
    if (!e.kind.is_role()) continue;

    const FrameElement* src = lookup(e.prev);
    const FrameElement* dst = lookup(e.next);
    const bool src_concept = is_tag(src, ElementKind::Tag::concept_node);
    if (e.kind.tag() == ElementKind::Tag::instantiation && src_concept) {
      classifier_arcs[src->id].push_back(&e);
      if (!is_tag(dst, ElementKind::Tag::var)) {
        errors.push_back(make_error(codes::kBadArcKinds, el, "instantiation must run from a Concept to a Var"));
      }
      continue;
    }
    if (src->kind.is_unknown() || dst->kind.is_unknown()) {
      if (!options.strict) {
        warnings.push_back(make_warning(codes::kUnknownEndpoint, el, "arc touches an element of unknown kind; skipped"));
        skipped.insert(e.id);
      }
      continue;
    }
    if (e.kind.tag() == ElementKind::Tag::instantiation) {
      errors.push_back(make_error(codes::kBadArcKinds, el, "instantiation must run from a Concept to a Var"));
    } else if (!is_tag(src, ElementKind::Tag::var) || !is_tag(dst, ElementKind::Tag::var)) {
      errors.push_back(make_error(codes::kBadArcKinds, el,
                                  std::string(e.kind.wire_tag()) + " arcs must join two Var elements"));
    }
  }

  for (const auto& e : d.elements()) {
    if (e.kind.tag() != ElementKind::Tag::concept_node) continue;
    const auto it = classifier_arcs.find(e.id);
    const std::size_t n = it == classifier_arcs.end() ? 0 : it->second.size();
    if (n != 1) {
      errors.push_back(make_error(codes::kAmbiguousClassifier, e.id.str(),
                                  "Concept '" + e.name + "' has " + std::to_string(n) +
                                      " outgoing instantiation arcs, expected exactly 1"));
    }
  }
  if (!errors.empty()) {
    std::stable_sort(errors.begin(), errors.end(), [](const Diagnostic& a, const Diagnostic& b) { return a.code < b.code; });
    throw DiagnosticError(std::move(errors));
  }

  TranslationResult result;
  result.model.name = options.diagram_name;
  result.trace.diagram_name = options.diagram_name;
  result.trace.pairs.reserve(d.size());

  for (const auto& e : d.elements()) {
    if (skipped.count(e.id) != 0) {
      result.model.comments.push_back(uml::Comment{comment_text(e), std::nullopt});
      continue;
    }
    UmlId id;
    switch (e.kind.tag()) {
      case ElementKind::Tag::var: {
        id = class_id(e.id);
        result.model.classes.push_back(uml::Class{id, e.name, uml::standard_attributes(), e.description});
        break;
      }
      case ElementKind::Tag::concept_node: {
        id = instance_id(e.id);
        const FrameElement* arc = classifier_arcs.at(e.id).front();
        uml::Instance inst{id, e.name, class_id(arc->next), {{"id", e.id.str()}, {"name", e.name}}};
        if (e.description) inst.slots.push_back({"description", *e.description});
        result.model.instances.push_back(std::move(inst));
        break;
      }
      default: {
        id = relation_id(e.id);
        result.model.relations.push_back(uml::Relation{id, relation_kind(e.kind.tag()), e.name,
                                                       image_of(*lookup(e.prev)), image_of(*lookup(e.next)),
                                                       e.description});
        break;
      }
    }
    result.trace.pairs.push_back(TracePair{e.id, std::move(id), e.bbox});
  }
  result.warnings = std::move(warnings);
  return result;
}

ReverseResult uml_to_frame(const uml::Model& m, const std::optional<TraceMap>& trace) {
  if (auto problems = uml::validate_model(m); !problems.empty()) {
    problems.insert(problems.begin(), make_error(codes::kInvalidModel, "", "UML model does not validate"));
    throw DiagnosticError(std::move(problems));
  }

  // Model elements in model order: classes, instances, relations.
  struct Item {
    const UmlId* id;
    const uml::Class* cls = nullptr;
    const uml::Instance* inst = nullptr;
    const uml::Relation* rel = nullptr;
  };
  std::vector<Item> items;
  items.reserve(m.classes.size() + m.instances.size() + m.relations.size());
  for (const auto& c : m.classes) items.push_back({&c.id, &c});
  for (const auto& i : m.instances) items.push_back({&i.id, nullptr, &i});
  for (const auto& r : m.relations) items.push_back({&r.id, nullptr, nullptr, &r});

  std::map<std::string, std::size_t> item_of;
  for (std::size_t k = 0; k < items.size(); ++k) item_of.emplace(items[k].id->value, k);

  std::vector<ElementId> frame_ids(items.size());
  std::vector<std::optional<BoundingBox>> boxes(items.size());
  std::vector<std::size_t> order;
  order.reserve(items.size());

  if (trace) {
    std::vector<Diagnostic> stale;
    std::set<ElementId> seen_frame;
    std::set<std::string> seen_uml;
    for (const auto& p : trace->pairs) {
      if (p.frame_id.value < 1 || !seen_frame.insert(p.frame_id).second || !seen_uml.insert(p.uml_id.value).second) {
        throw DiagnosticError(codes::kBadTrace, p.frame_id.str(), "trace repeats or misuses frame id " + p.frame_id.str());
      }
      if (item_of.count(p.uml_id.value) == 0) {
        stale.push_back(make_error(codes::kStaleTrace, p.uml_id.value,
                                   "trace names UML element '" + p.uml_id.value + "' which is not in the model"));
      }
    }
    if (!stale.empty()) {
      throw DiagnosticError(std::move(stale));
    }
    std::vector<bool> traced(items.size(), false);
    ElementId top;
    for (const auto& p : trace->pairs) {
      const std::size_t k = item_of.at(p.uml_id.value);
      frame_ids[k] = p.frame_id;
      boxes[k] = p.bbox;
      traced[k] = true;
      order.push_back(k);
      top = std::max(top, p.frame_id);
    }
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (traced[k]) continue;
      if (top.value == std::numeric_limits<std::int32_t>::max()) {
        throw DiagnosticError(codes::kIdOverflow, "", "no frame ids left for untraced elements");
      }
      top = ElementId(top.value + 1);
      frame_ids[k] = top;
      order.push_back(k);
    }
  } else {
    if (items.size() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
      throw DiagnosticError(codes::kIdOverflow, "", "model too large");
    }
    for (std::size_t k = 0; k < items.size(); ++k) {
      frame_ids[k] = ElementId(static_cast<std::int32_t>(k + 1));
      order.push_back(k);
    }
  }

  std::vector<Diagnostic> warnings;
  std::vector<FrameElement> elements;
  elements.reserve(items.size());
  const auto& standard = uml::standard_attributes();
  for (const std::size_t k : order) {
    const Item& it = items[k];
    FrameElement e;
    e.id = frame_ids[k];
    e.bbox = boxes[k];
    if (it.cls != nullptr) {
      e.kind = ElementKind::var();
      e.name = it.cls->name.empty() ? it.cls->id.value : it.cls->name;
      e.description = it.cls->description;
      std::string folded;
      for (const auto& a : it.cls->attributes) {
        if (std::find(standard.begin(), standard.end(), a) != standard.end()) continue;
        if (!folded.empty()) folded += '\n';
        folded += "attr: " + a.name + ":" + a.type_name;
      }
      if (!folded.empty()) {
        e.description = e.description ? *e.description + "\n" + folded : folded;
        warnings.push_back(make_warning(codes::kFoldedAttributes, e.id.str(),
                                        "extra attributes of class '" + e.name + "' folded into its description"));
      }
    } else if (it.inst != nullptr) {
      e.kind = ElementKind::concept_node();
      e.name = it.inst->name.empty() ? it.inst->id.value : it.inst->name;
      for (const auto& s : it.inst->slots) {
        if (s.attribute == "description") e.description = s.value;
      }
    } else {
      e.kind = role_kind(it.rel->kind);
      e.name = it.rel->name.empty() ? default_role_name(it.rel->kind) : it.rel->name;
      e.prev = frame_ids[item_of.at(it.rel->source.value)];
      e.next = frame_ids[item_of.at(it.rel->target.value)];
      e.description = it.rel->description;
    }
    elements.push_back(std::move(e));
  }
  for (const auto& c : m.comments) {
    warnings.push_back(make_warning(codes::kCommentDropped, c.anchor ? c.anchor->value : "",
                                    "comment has no frame counterpart: " + c.text));
  }

  FrameDiagram diagram(std::move(elements));
  if (auto problems = validate_diagram(diagram); !problems.empty()) {
    throw DiagnosticError(std::move(problems));
  }
  return ReverseResult{std::move(diagram), std::move(warnings)};
}

std::vector<Diagnostic> check_round_trip(const FrameDiagram& d) {
  TranslationResult forward;
  ReverseResult back;
  try {
    forward = frame_to_uml(d, TranslateOptions{false, "roundtrip"});
    back = uml_to_frame(forward.model, forward.trace);
  } catch (const DiagnosticError& e) {
    return e.diagnostics();
  }

  std::vector<Diagnostic> out;
  bool same_ids = true;
  for (const auto& original : d.elements()) {
    const std::string el = original.id.str();
    const FrameElement* restored = back.diagram.find(original.id);
    if (restored == nullptr) {
      out.push_back(make_error(codes::kRoundTripMissing, el, "element lost in translation"));
      same_ids = false;
      continue;
    }
    auto mismatch = [&](const char* field) {
      out.push_back(make_error(codes::kRoundTripMismatch, el, std::string("field ") + field + " differs after round trip"));
    };
    if (restored->kind != original.kind) mismatch("Type");
    if (restored->name != original.name) mismatch("Name");
    if (restored->bbox != original.bbox) mismatch("geometry");
    if (restored->prev != original.prev) mismatch("Prev");
    if (restored->next != original.next) mismatch("Next");
    if (restored->description != original.description) mismatch("Description");
  }
  for (const auto& e : back.diagram.elements()) {
    if (d.find(e.id) == nullptr) {
      out.push_back(make_error(codes::kRoundTripExtra, e.id.str(), "element appeared in translation"));
      same_ids = false;
    }
  }
  if (same_ids && out.empty() && back.diagram != d) {
    out.push_back(make_error(codes::kRoundTripOrder, "", "element order differs after round trip"));
  }
  return out;
}

}  // namespace frameforge
