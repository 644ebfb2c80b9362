#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frameforge/diagnostic.hpp"

namespace frameforge {

/// Identity of a frame element. Zero is the null link, never an element.
struct ElementId {
  std::int32_t value = 0;

  constexpr ElementId() = default;
  constexpr explicit ElementId(std::int32_t v) : value(v) {}

  constexpr bool is_null() const { return value == 0; }
  std::string str() const { return std::to_string(value); }

  auto operator<=>(const ElementId&) const = default;
};

inline constexpr ElementId kNullId{};

/// Element kind and its wire tag ("Var", "Concept", "i", "g", "a"; any other
/// tag is kept verbatim as an unknown kind).
class ElementKind {
 public:
  enum class Tag { var, concept_node, instantiation, generalization, association, unknown };

  static ElementKind var() { return ElementKind(Tag::var); }
  static ElementKind concept_node() { return ElementKind(Tag::concept_node); }
  static ElementKind instantiation() { return ElementKind(Tag::instantiation); }
  static ElementKind generalization() { return ElementKind(Tag::generalization); }
  static ElementKind association() { return ElementKind(Tag::association); }
  /// Throws std::invalid_argument for an empty tag.
  static ElementKind unknown(std::string tag);
  static ElementKind from_wire(std::string_view tag);

  Tag tag() const { return tag_; }
  std::string_view wire_tag() const;
  bool is_role() const {
    return tag_ == Tag::instantiation || tag_ == Tag::generalization || tag_ == Tag::association;
  }
  bool is_unknown() const { return tag_ == Tag::unknown; }

  bool operator==(const ElementKind&) const = default;

 private:
  explicit ElementKind(Tag t) : tag_(t) {}
  Tag tag_;
  std::string unknown_tag_;
};

struct BoundingBox {
  std::int32_t left = 0;
  std::int32_t top = 0;
  std::int32_t width = 1;
  std::int32_t height = 1;

  bool operator==(const BoundingBox&) const = default;
};

struct FrameElement {
  ElementId id;
  ElementKind kind = ElementKind::var();
  std::string name;
  std::optional<BoundingBox> bbox;
  ElementId prev;
  ElementId next;
  std::optional<std::string> description;

  /// Roles are always arcs; an unknown kind is an arc when it carries a link.
  bool is_arc() const { return kind.is_role() || (kind.is_unknown() && (!prev.is_null() || !next.is_null())); }
  bool is_node() const { return !is_arc(); }

  bool operator==(const FrameElement&) const = default;
};

/// Ordered elements of one frame diagram. Holds whatever it is given;
/// validate_diagram() decides whether the content is well formed.
class FrameDiagram {
 public:
  FrameDiagram() = default;
  explicit FrameDiagram(std::vector<FrameElement> elements) : elements_(std::move(elements)) {}

  std::span<const FrameElement> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  /// First element carrying `id`, or nullptr.
  const FrameElement* find(ElementId id) const;
  ElementId max_id() const;

  bool operator==(const FrameDiagram&) const = default;

 private:
  std::vector<FrameElement> elements_;
};

struct ArcEnds {
  ElementId source;  // specific end: instance, subclass, association source
  ElementId target;  // general end: class, superclass, association target

  bool operator==(const ArcEnds&) const = default;
};

/// Structural check. Empty result iff the diagram is well formed; order is
/// element document order, then code.
std::vector<Diagnostic> validate_diagram(const FrameDiagram& d);

/// Appends `proto` under id max+1 (1 for an empty diagram). The id field of
/// `proto` is ignored. Throws DiagnosticError when the new element would
/// break an invariant.
std::pair<FrameDiagram, ElementId> add_element(const FrameDiagram& d, FrameElement proto);

/// Removes `id` together with every arc attached to it.
/// Throws NotFoundError for an absent id.
FrameDiagram remove_element(const FrameDiagram& d, ElementId id);

/// Throws NotFoundError for an absent id, DiagnosticError(WRONG_KIND) for a node.
ArcEnds arc_endpoints(const FrameDiagram& d, ElementId arc_id);

}  // namespace frameforge

template <>
struct std::hash<frameforge::ElementId> {
  std::size_t operator()(const frameforge::ElementId& id) const noexcept {
    return std::hash<std::int32_t>{}(id.value);
  }
};
