#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "frameforge/diagnostic.hpp"

// Class-diagram subset of UML 2: classes, instance specifications,
// instanceOf / generalization / association relations, and comments.
namespace frameforge::uml {

struct UmlId {
  std::string value;

  UmlId() = default;
  explicit UmlId(std::string v) : value(std::move(v)) {}

  bool empty() const { return value.empty(); }
  auto operator<=>(const UmlId&) const = default;
};

struct Attribute {
  std::string name;
  std::string type_name;

  bool operator==(const Attribute&) const = default;
};

struct Class {
  UmlId id;
  std::string name;
  std::vector<Attribute> attributes;
  std::optional<std::string> description;

  bool operator==(const Class&) const = default;
};

struct Slot {
  std::string attribute;
  std::string value;

  bool operator==(const Slot&) const = default;
};

struct Instance {
  UmlId id;
  std::string name;
  UmlId classifier;
  std::vector<Slot> slots;

  bool operator==(const Instance&) const = default;
};

enum class RelationKind { instance_of, generalization, association };

/// For associations `name` is the label. Every relation keeps a name so that
/// arc names survive translation.
struct Relation {
  UmlId id;
  RelationKind kind = RelationKind::association;
  std::string name;
  UmlId source;
  UmlId target;
  std::optional<std::string> description;

  bool operator==(const Relation&) const = default;
};

struct Comment {
  std::string text;
  std::optional<UmlId> anchor;

  bool operator==(const Comment&) const = default;
};

struct Model {
  std::string name;
  std::vector<Class> classes;
  std::vector<Instance> instances;
  std::vector<Relation> relations;
  std::vector<Comment> comments;

  bool operator==(const Model&) const = default;
};

/// The three attributes every translated class carries, in order.
const std::vector<Attribute>& standard_attributes();

/// Empty iff ids are non-empty and unique across all kinds, every reference
/// resolves, relation ends have the right kinds, slots name classifier
/// attributes, and each instance has exactly one instanceOf relation that
/// agrees with its classifier.
std::vector<Diagnostic> validate_model(const Model& m);

/// Ids of every element named `name`: classes, then instances, then relations.
std::vector<UmlId> find_by_name(const Model& m, std::string_view name);

std::string_view relation_kind_name(RelationKind k);

}  // namespace frameforge::uml
