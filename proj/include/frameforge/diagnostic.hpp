#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace frameforge {

enum class Severity { error, warning };

/// One violation or warning. `element` names the offending element: the
/// decimal frame id for frame diagrams, the UmlId for UML models, and empty
/// when the record is not tied to a single element.
struct Diagnostic {
  std::string code;
  std::string element;
  std::string message;
  Severity severity = Severity::error;

  bool operator==(const Diagnostic&) const = default;
};

/// The closed set of diagnostic codes. docs/formats.md lists what each means.
namespace codes {
// frame_model
inline constexpr std::string_view kInvalidId = "INVALID_ID";
inline constexpr std::string_view kDupId = "DUP_ID";
inline constexpr std::string_view kEmptyName = "EMPTY_NAME";
inline constexpr std::string_view kInvalidText = "INVALID_TEXT";
inline constexpr std::string_view kBadGeometry = "BAD_GEOMETRY";
inline constexpr std::string_view kNodeHasLinks = "NODE_HAS_LINKS";
inline constexpr std::string_view kArcMissingEndpoint = "ARC_MISSING_ENDPOINT";
inline constexpr std::string_view kDanglingRef = "DANGLING_REF";
inline constexpr std::string_view kBadArcEndpoint = "BAD_ARC_ENDPOINT";
inline constexpr std::string_view kNotFound = "NOT_FOUND";
inline constexpr std::string_view kWrongKind = "WRONG_KIND";
inline constexpr std::string_view kIdOverflow = "ID_OVERFLOW";
// frame_store
inline constexpr std::string_view kXmlSyntax = "XML_SYNTAX";
inline constexpr std::string_view kWrongRoot = "WRONG_ROOT";
inline constexpr std::string_view kUnknownElement = "UNKNOWN_ELEMENT";
inline constexpr std::string_view kUnknownField = "UNKNOWN_FIELD";
inline constexpr std::string_view kBadFieldType = "BAD_FIELD_TYPE";
inline constexpr std::string_view kBadFieldOrder = "BAD_FIELD_ORDER";
inline constexpr std::string_view kDupField = "DUP_FIELD";
inline constexpr std::string_view kMissingField = "MISSING_FIELD";
// uml_model
inline constexpr std::string_view kDupUmlId = "DUP_UML_ID";
inline constexpr std::string_view kEmptyUmlId = "EMPTY_UML_ID";
inline constexpr std::string_view kUnresolvedRef = "UNRESOLVED_REF";
inline constexpr std::string_view kBadRelationEnds = "BAD_RELATION_ENDS";
inline constexpr std::string_view kBadSlot = "BAD_SLOT";
inline constexpr std::string_view kMissingInstanceOf = "MISSING_INSTANCE_OF";
// translate
inline constexpr std::string_view kUnknownKind = "UNKNOWN_KIND";
inline constexpr std::string_view kUnknownEndpoint = "UNKNOWN_ENDPOINT";
inline constexpr std::string_view kAmbiguousClassifier = "AMBIGUOUS_CLASSIFIER";
inline constexpr std::string_view kBadArcKinds = "BAD_ARC_KINDS";
inline constexpr std::string_view kInvalidDiagram = "INVALID_DIAGRAM";
inline constexpr std::string_view kInvalidModel = "INVALID_MODEL";
inline constexpr std::string_view kStaleTrace = "STALE_TRACE";
inline constexpr std::string_view kFoldedAttributes = "FOLDED_ATTRIBUTES";
inline constexpr std::string_view kCommentDropped = "COMMENT_DROPPED";
inline constexpr std::string_view kRoundTripMissing = "ROUND_TRIP_MISSING";
inline constexpr std::string_view kRoundTripExtra = "ROUND_TRIP_EXTRA";
inline constexpr std::string_view kRoundTripMismatch = "ROUND_TRIP_MISMATCH";
inline constexpr std::string_view kRoundTripOrder = "ROUND_TRIP_ORDER";
inline constexpr std::string_view kBadTrace = "BAD_TRACE";
// layout
inline constexpr std::string_view kCyclicHierarchy = "CYCLIC_HIERARCHY";
inline constexpr std::string_view kBadLayoutParams = "BAD_LAYOUT_PARAMS";
// uml_emit
inline constexpr std::string_view kMissingXmiId = "MISSING_XMI_ID";
inline constexpr std::string_view kStaleRef = "STALE_REF";
inline constexpr std::string_view kUnsupportedElement = "UNSUPPORTED_ELEMENT";
inline constexpr std::string_view kBadXmi = "BAD_XMI";
inline constexpr std::string_view kMissingGeometry = "MISSING_GEOMETRY";
// service
inline constexpr std::string_view kBadJson = "BAD_JSON";
inline constexpr std::string_view kBadDocId = "BAD_DOC_ID";
inline constexpr std::string_view kRevisionConflict = "REVISION_CONFLICT";
inline constexpr std::string_view kBadRequest = "BAD_REQUEST";
inline constexpr std::string_view kPayloadTooLarge = "PAYLOAD_TOO_LARGE";
inline constexpr std::string_view kStorageError = "STORAGE_ERROR";
}  // namespace codes

Diagnostic make_error(std::string_view code, std::string element, std::string message);
Diagnostic make_warning(std::string_view code, std::string element, std::string message);

bool has_errors(const std::vector<Diagnostic>& diagnostics);
bool has_code(const std::vector<Diagnostic>& diagnostics, std::string_view code);

/// Base of every library exception. Carries the diagnostics that caused it;
/// code() is the code of the first one.
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(std::vector<Diagnostic> diagnostics);
  DiagnosticError(std::string_view code, std::string element, std::string message);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }
  const std::string& code() const noexcept { return diagnostics_.front().code; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Input bytes could not be turned into a model (syntax, schema, or semantics).
class ParseError : public DiagnosticError {
 public:
  using DiagnosticError::DiagnosticError;
};

class NotFoundError : public DiagnosticError {
 public:
  using DiagnosticError::DiagnosticError;
};

}  // namespace frameforge
