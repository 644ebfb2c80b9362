#include "frameforge/uml_model.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace frameforge::uml {
namespace {

enum class Ref { class_, instance, relation };

void check_id(const UmlId& id, std::set<std::string>& seen, std::vector<Diagnostic>& out) {
  if (id.empty()) {
    out.push_back(make_error(codes::kEmptyUmlId, "", "element without an id"));
  } else if (!seen.insert(id.value).second) {
    out.push_back(make_error(codes::kDupUmlId, id.value, "id " + id.value + " is used twice"));
  }
}

}  // namespace

const std::vector<Attribute>& standard_attributes() {
  static const std::vector<Attribute> attrs{{"id", "int"}, {"name", "string"}, {"description", "string"}};
  return attrs;
}

std::string_view relation_kind_name(RelationKind k) {
  switch (k) {
    case RelationKind::instance_of: return "instanceOf";
    case RelationKind::generalization: return "generalization";
    case RelationKind::association: return "association";
  }
  return "association";
}

std::vector<Diagnostic> validate_model(const Model& m) {
  std::vector<Diagnostic> out;
  std::set<std::string> seen;
  std::map<std::string, Ref> kinds;
  std::map<std::string, const Class*> classes;
  std::map<std::string, const Instance*> instances;

  for (const auto& c : m.classes) {
    check_id(c.id, seen, out);
    kinds.emplace(c.id.value, Ref::class_);
    classes.emplace(c.id.value, &c);
  }
  for (const auto& i : m.instances) {
    check_id(i.id, seen, out);
    kinds.emplace(i.id.value, Ref::instance);
    instances.emplace(i.id.value, &i);
  }
  for (const auto& r : m.relations) {
    check_id(r.id, seen, out);
    kinds.emplace(r.id.value, Ref::relation);
  }

  std::map<std::string, int> instance_of_count;
  for (const auto& i : m.instances) {
    const auto cls = classes.find(i.classifier.value);
    if (cls == classes.end()) {
      out.push_back(make_error(codes::kUnresolvedRef, i.id.value,
                               "classifier '" + i.classifier.value + "' is not a class of this model"));
      continue;
    }
    for (const auto& s : i.slots) {
      const auto& attrs = cls->second->attributes;
      const bool known = std::any_of(attrs.begin(), attrs.end(), [&](const Attribute& a) { return a.name == s.attribute; });
      if (!known) {
        out.push_back(make_error(codes::kBadSlot, i.id.value,
                                 "slot '" + s.attribute + "' is not an attribute of " + i.classifier.value));
      }
    }
  }

  for (const auto& r : m.relations) {
    const auto src = kinds.find(r.source.value);
    const auto dst = kinds.find(r.target.value);
    if (src == kinds.end() || dst == kinds.end()) {
      out.push_back(make_error(codes::kUnresolvedRef, r.id.value, "relation end does not resolve"));
      continue;
    }
    if (r.kind == RelationKind::instance_of) {
      if (src->second != Ref::instance || dst->second != Ref::class_) {
        out.push_back(make_error(codes::kBadRelationEnds, r.id.value, "instanceOf must run from an instance to a class"));
        continue;
      }
      if (instances.at(r.source.value)->classifier != r.target) {
        out.push_back(make_error(codes::kBadRelationEnds, r.id.value,
                                 "instanceOf target differs from the classifier of " + r.source.value));
      }
      ++instance_of_count[r.source.value];
    } else if (src->second != Ref::class_ || dst->second != Ref::class_) {
      out.push_back(make_error(codes::kBadRelationEnds, r.id.value,
                               std::string(relation_kind_name(r.kind)) + " must join two classes"));
    }
  }

  for (const auto& i : m.instances) {
    if (classes.count(i.classifier.value) == 0) continue;
    const int n = instance_of_count[i.id.value];
    if (n != 1) {
      out.push_back(make_error(codes::kMissingInstanceOf, i.id.value,
                               "instance has " + std::to_string(n) + " instanceOf relations, expected 1"));
    }
  }

  for (const auto& c : m.comments) {
    if (c.anchor && kinds.count(c.anchor->value) == 0) {
      out.push_back(make_error(codes::kUnresolvedRef, c.anchor->value, "comment anchor does not resolve"));
    }
  }
  return out;
}

std::vector<UmlId> find_by_name(const Model& m, std::string_view name) {
  std::vector<UmlId> out;
  if (name.empty()) {
    return out;
  }
  for (const auto& c : m.classes) {
    if (c.name == name) out.push_back(c.id);
  }
  for (const auto& i : m.instances) {
    if (i.name == name) out.push_back(i.id);
  }
  for (const auto& r : m.relations) {
    if (r.name == name) out.push_back(r.id);
  }
  return out;
}

}  // namespace frameforge::uml
