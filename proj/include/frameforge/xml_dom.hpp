#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Small read-only XML tree used by the frame and XMI readers. Backed by expat;
// names are kept as written (prefix included), no namespace resolution.
namespace frameforge::xml {

struct Node {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Node> children;
  std::string text;  // character data directly inside this element, concatenated
  int line = 0;
  int column = 0;

  const std::string* attribute(std::string_view key) const;
  const Node* first_child(std::string_view child_name) const;
  std::vector<const Node*> children_named(std::string_view child_name) const;

  /// Name with any "prefix:" removed.
  std::string_view local_name() const;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, int line, int column)
      : std::runtime_error(message), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses a complete document as UTF-8. A leading BOM is accepted; DOCTYPE
/// declarations are refused. Throws SyntaxError with 1-based line/column.
Node parse(std::string_view bytes);

}  // namespace frameforge::xml
