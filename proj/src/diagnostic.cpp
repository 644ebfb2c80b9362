#include "frameforge/diagnostic.hpp"

#include <algorithm>

namespace frameforge {
namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  if (diagnostics.empty()) {
    return "unspecified error";
  }
  const Diagnostic& first = diagnostics.front();
  std::string text = first.code;
  if (!first.element.empty()) {
    text += " [" + first.element + "]";
  }
  text += ": " + first.message;
  if (diagnostics.size() > 1) {
    text += " (+" + std::to_string(diagnostics.size() - 1) + " more)";
  }
  return text;
}

}  // namespace

Diagnostic make_error(std::string_view code, std::string element, std::string message) {
  return Diagnostic{std::string(code), std::move(element), std::move(message), Severity::error};
}

Diagnostic make_warning(std::string_view code, std::string element, std::string message) {
  return Diagnostic{std::string(code), std::move(element), std::move(message), Severity::warning};
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

bool has_code(const std::vector<Diagnostic>& diagnostics, std::string_view code) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [code](const Diagnostic& d) { return d.code == code; });
}

DiagnosticError::DiagnosticError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {
  if (diagnostics_.empty()) {
    diagnostics_.push_back(make_error("ERROR", "", "unspecified error"));
  }
}

DiagnosticError::DiagnosticError(std::string_view code, std::string element, std::string message)
    : DiagnosticError(std::vector<Diagnostic>{make_error(code, std::move(element), std::move(message))}) {}

}  // namespace frameforge
