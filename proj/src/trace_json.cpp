#include <json.hpp>

#include "frameforge/translate.hpp"

namespace frameforge {

using ordered_json = nlohmann::ordered_json;

std::string trace_to_json(const TraceMap& trace) {
  ordered_json doc;
  doc["diagram_name"] = trace.diagram_name;
  ordered_json pairs = ordered_json::array();
  for (const auto& p : trace.pairs) {
    ordered_json pair;
    pair["frame_id"] = p.frame_id.value;
    pair["uml_id"] = p.uml_id.value;
    if (p.bbox) {
      pair["bbox"] = {p.bbox->left, p.bbox->top, p.bbox->width, p.bbox->height};
    } else {
      pair["bbox"] = nullptr;
    }
    pairs.push_back(std::move(pair));
  }
  doc["pairs"] = std::move(pairs);
  return doc.dump(2) + "\n";
}

TraceMap trace_from_json(std::string_view json) {
  try {
    const auto doc = ordered_json::parse(json);
    TraceMap trace;
    trace.diagram_name = doc.at("diagram_name").get<std::string>();
    for (const auto& p : doc.at("pairs")) {
      TracePair pair;
      pair.frame_id = ElementId(p.at("frame_id").get<std::int32_t>());
      pair.uml_id = uml::UmlId(p.at("uml_id").get<std::string>());
      const auto& box = p.at("bbox");
      if (!box.is_null()) {
        if (!box.is_array() || box.size() != 4) {
          throw ParseError(codes::kBadTrace, pair.frame_id.str(), "bbox must be null or [left, top, width, height]");
        }
        pair.bbox = BoundingBox{box[0].get<std::int32_t>(), box[1].get<std::int32_t>(), box[2].get<std::int32_t>(),
                                box[3].get<std::int32_t>()};
      }
      trace.pairs.push_back(std::move(pair));
    }
    return trace;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(codes::kBadTrace, "", std::string("malformed trace: ") + e.what());
  }
}

}  // namespace frameforge
