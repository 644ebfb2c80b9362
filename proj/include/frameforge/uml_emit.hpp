#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "frameforge/diagnostic.hpp"
#include "frameforge/frame_model.hpp"
#include "frameforge/uml_model.hpp"

// Text renderings of UML models (PlantUML, XMI 2.1), the XMI reader, and
// the native SVG renderer for frame diagrams. Line templates and namespace
// URIs are pinned in docs/formats.md.
namespace frameforge {

inline constexpr std::string_view kXmiNamespace = "http://schema.omg.org/spec/XMI/2.1";
inline constexpr std::string_view kUmlNamespace = "http://schema.omg.org/spec/UML/2.1";
inline constexpr std::string_view kXmiExtender = "frameforge";

/// Throws DiagnosticError(INVALID_MODEL) when the model does not validate.
std::string to_plantuml(const uml::Model& m);

/// Throws DiagnosticError(INVALID_MODEL) when the model does not validate.
std::string to_xmi(const uml::Model& m);

struct XmiImport {
  uml::Model model;
  std::vector<Diagnostic> warnings;  // unsupported elements turned into comments
};

/// Reads documents written by to_xmi and the documented subset of foreign
/// XMI. Throws ParseError: XML_SYNTAX, BAD_XMI, MISSING_XMI_ID, STALE_REF.
XmiImport read_xmi(std::string_view bytes);
uml::Model from_xmi(std::string_view bytes);

/// Requires geometry on every element; throws DiagnosticError
/// (MISSING_GEOMETRY) naming the first element without it.
std::string render_frame_svg(const FrameDiagram& d);

}  // namespace frameforge
