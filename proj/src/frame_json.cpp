#include "frameforge/frame_json.hpp"

#include <set>

namespace frameforge {

using ordered_json = nlohmann::ordered_json;

ordered_json diagram_to_json(const FrameDiagram& d) {
  ordered_json out = ordered_json::array();
  for (const auto& e : d.elements()) {
    ordered_json j;
    j["id"] = e.id.value;
    j["kind"] = std::string(e.kind.wire_tag());
    j["name"] = e.name;
    if (e.bbox) {
      j["bbox"] = {e.bbox->left, e.bbox->top, e.bbox->width, e.bbox->height};
    } else {
      j["bbox"] = nullptr;
    }
    j["prev"] = e.prev.value;
    j["next"] = e.next.value;
    j["description"] = e.description ? ordered_json(*e.description) : ordered_json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

FrameDiagram diagram_from_json(std::string_view json) {
  static const std::set<std::string> kKeys{"id", "kind", "name", "bbox", "prev", "next", "description"};
  std::vector<FrameElement> elements;
  try {
    const auto doc = ordered_json::parse(json);
    if (!doc.is_array()) {
      throw ParseError(codes::kBadJson, "", "expected a JSON array of elements");
    }
    for (const auto& j : doc) {
      if (!j.is_object()) {
        throw ParseError(codes::kBadJson, "", "every element must be a JSON object");
      }
      for (const auto& [key, value] : j.items()) {
        if (kKeys.count(key) == 0) throw ParseError(codes::kBadJson, "", "unknown key '" + key + "'");
      }
      FrameElement e;
      e.id = ElementId(j.at("id").get<std::int32_t>());
      const auto kind = j.at("kind").get<std::string>();
      if (kind.empty()) throw ParseError(codes::kBadJson, e.id.str(), "kind must not be empty");
      e.kind = ElementKind::from_wire(kind);
      e.name = j.at("name").get<std::string>();
      if (j.contains("bbox") && !j["bbox"].is_null()) {
        const auto& b = j["bbox"];
        if (!b.is_array() || b.size() != 4) {
          throw ParseError(codes::kBadJson, e.id.str(), "bbox must be null or [left, top, width, height]");
        }
        e.bbox = BoundingBox{b[0].get<std::int32_t>(), b[1].get<std::int32_t>(), b[2].get<std::int32_t>(),
                             b[3].get<std::int32_t>()};
      }
      if (j.contains("prev")) e.prev = ElementId(j["prev"].get<std::int32_t>());
      if (j.contains("next")) e.next = ElementId(j["next"].get<std::int32_t>());
      if (j.contains("description") && !j["description"].is_null()) {
        e.description = j["description"].get<std::string>();
      }
      elements.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(codes::kBadJson, "", std::string("malformed element JSON: ") + e.what());
  }
  FrameDiagram d(std::move(elements));
  if (auto problems = validate_diagram(d); !problems.empty()) {
    throw ParseError(std::move(problems));
  }
  return d;
}

ordered_json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics) {
  ordered_json out = ordered_json::array();
  for (const auto& d : diagnostics) {
    out.push_back({{"code", d.code},
                   {"element", d.element},
                   {"message", d.message},
                   {"severity", d.severity == Severity::error ? "error" : "warning"}});
  }
  return out;
}

}  // namespace frameforge
