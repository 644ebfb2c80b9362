#pragma once

#include <string_view>
#include <vector>

#include <json.hpp>

#include "frameforge/diagnostic.hpp"
#include "frameforge/frame_model.hpp"

// JSON mirror of frame diagrams and diagnostics, as served over HTTP.
namespace frameforge {

/// Array of {"id", "kind", "name", "bbox", "prev", "next", "description"};
/// bbox is [left, top, width, height] or null, description a string or null.
nlohmann::ordered_json diagram_to_json(const FrameDiagram& d);

/// Inverse of diagram_to_json. bbox, prev, next and description may be
/// omitted. Throws ParseError (BAD_JSON, or the validate_diagram findings).
FrameDiagram diagram_from_json(std::string_view json);

nlohmann::ordered_json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics);

}  // namespace frameforge
