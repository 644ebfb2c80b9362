#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frameforge/diagnostic.hpp"
#include "frameforge/frame_model.hpp"

// Reader/writer for the NewDataSet/Elements frame storage format.
namespace frameforge {

/// One typed field of an Elements record, in canonical order.
struct FrameField {
  std::string_view name;
  std::string_view xsd_type;  // "xs:int" or "xs:string"
};

/// Id, Type, Name, Left, Top, Width, Height, Prev, Next, Description.
std::span<const FrameField> frame_fields();

struct ParsedFrame {
  FrameDiagram diagram;
  std::vector<Diagnostic> warnings;  // unknown fields dropped, reordered fields
};

/// Parses a frame document and validates it. Throws ParseError carrying the
/// offending diagnostics (XML_SYNTAX with line:column, schema violations,
/// MISSING_FIELD, or the validate_diagram findings).
ParsedFrame parse_frame_document(std::string_view bytes);

FrameDiagram parse_frame_xml(std::string_view bytes);

/// Canonical bytes: fixed declaration, two-space indent, one field per line,
/// LF endings. Throws DiagnosticError when the diagram does not validate.
std::string serialize_frame_xml(const FrameDiagram& d);

/// Checks the document against the frame schema. Never throws; malformed
/// XML is reported as XML_SYNTAX. Unknown and out-of-order fields are
/// warnings, everything else is an error.
std::vector<Diagnostic> validate_against_schema(std::string_view bytes);

/// Standalone XSD describing the format (frame.xsd).
std::string emit_schema();

}  // namespace frameforge
