#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frameforge/diagnostic.hpp"
#include "frameforge/frame_model.hpp"
#include "frameforge/uml_model.hpp"

namespace frameforge {

/// Provenance of one translated element: which frame element became which
/// UML element, plus the geometry the UML side does not hold.
struct TracePair {
  ElementId frame_id;
  uml::UmlId uml_id;
  std::optional<BoundingBox> bbox;

  bool operator==(const TracePair&) const = default;
};

struct TraceMap {
  std::string diagram_name;
  std::vector<TracePair> pairs;  // frame document order

  bool operator==(const TraceMap&) const = default;
};

struct TranslationResult {
  uml::Model model;
  TraceMap trace;
  std::vector<Diagnostic> warnings;
};

struct TranslateOptions {
  /// Unknown kinds are an error when set; otherwise they are skipped with a
  /// warning and recorded as a model comment.
  bool strict = true;
  std::string diagram_name = "frame";
};

/// Frame to UML. Var -> class, Concept -> instance, i -> instanceOf,
/// g -> generalization, a -> association. Throws DiagnosticError listing
/// every problem (INVALID_DIAGRAM findings, UNKNOWN_KIND in strict mode,
/// AMBIGUOUS_CLASSIFIER, BAD_ARC_KINDS).
TranslationResult frame_to_uml(const FrameDiagram& d, const TranslateOptions& options = {});

struct ReverseResult {
  FrameDiagram diagram;
  std::vector<Diagnostic> warnings;
};

/// UML to frame. With a trace the original ids, order and geometry come
/// back; without one ids run 1..n in model order and geometry is absent.
/// Throws DiagnosticError: STALE_TRACE when the trace names unknown UML
/// ids, INVALID_MODEL when the model does not validate.
ReverseResult uml_to_frame(const uml::Model& m, const std::optional<TraceMap>& trace = std::nullopt);

/// Lenient frame_to_uml followed by traced uml_to_frame; reports every
/// difference from `d`. Empty for diagrams free of unknown kinds.
std::vector<Diagnostic> check_round_trip(const FrameDiagram& d);

/// Sidecar JSON: {"diagram_name": ..., "pairs": [{"frame_id", "uml_id", "bbox"}]}.
std::string trace_to_json(const TraceMap& trace);
/// Throws ParseError(BAD_TRACE) on malformed input.
TraceMap trace_from_json(std::string_view json);

}  // namespace frameforge
