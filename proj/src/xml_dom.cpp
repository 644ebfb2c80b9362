#include "frameforge/xml_dom.hpp"

#include <expat.h>

#include <climits>
#include <memory>
#include <optional>

namespace frameforge::xml {

const std::string* Node::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

const Node* Node::first_child(std::string_view child_name) const {
  for (const auto& c : children) {
    if (c.name == child_name) return &c;
  }
  return nullptr;
}

std::vector<const Node*> Node::children_named(std::string_view child_name) const {
  std::vector<const Node*> out;
  for (const auto& c : children) {
    if (c.name == child_name) out.push_back(&c);
  }
  return out;
}

std::string_view Node::local_name() const {
  const auto colon = name.find(':');
  return colon == std::string::npos ? std::string_view(name) : std::string_view(name).substr(colon + 1);
}

namespace {

struct ParserDeleter {
  void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

struct BuildState {
  XML_Parser parser = nullptr;
  std::vector<Node> stack;
  std::optional<Node> root;
  std::string refusal;
};

void on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto* st = static_cast<BuildState*>(user);
  Node n;
  n.name = name;
  n.line = static_cast<int>(XML_GetCurrentLineNumber(st->parser));
  n.column = static_cast<int>(XML_GetCurrentColumnNumber(st->parser)) + 1;
  for (int i = 0; attrs[i] != nullptr; i += 2) {
    n.attributes.emplace_back(attrs[i], attrs[i + 1]);
  }
  st->stack.push_back(std::move(n));
}

void on_end(void* user, const XML_Char*) {
  auto* st = static_cast<BuildState*>(user);
  Node n = std::move(st->stack.back());
  st->stack.pop_back();
  if (st->stack.empty()) {
    st->root = std::move(n);
  } else {
    st->stack.back().children.push_back(std::move(n));
  }
}

void on_text(void* user, const XML_Char* s, int len) {
  auto* st = static_cast<BuildState*>(user);
  if (!st->stack.empty()) {
    st->stack.back().text.append(s, static_cast<std::size_t>(len));
  }
}

void on_doctype(void* user, const XML_Char*, const XML_Char*, const XML_Char*, int) {
  auto* st = static_cast<BuildState*>(user);
  st->refusal = "DOCTYPE declarations are not accepted";
  XML_StopParser(st->parser, XML_FALSE);
}

}  // namespace

Node parse(std::string_view bytes) {
  if (bytes.size() >= 3 && bytes.substr(0, 3) == "\xEF\xBB\xBF") {
    bytes.remove_prefix(3);
  }
  if (bytes.size() > static_cast<std::size_t>(INT_MAX)) {
    throw SyntaxError("document too large", 0, 0);
  }
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) {
    throw std::bad_alloc();
  }
  BuildState st;
  st.parser = parser.get();
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  XML_SetStartDoctypeDeclHandler(parser.get(), on_doctype);

  const auto status = XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE);
  if (status != XML_STATUS_OK || !st.root) {
    const int line = static_cast<int>(XML_GetCurrentLineNumber(parser.get()));
    const int column = static_cast<int>(XML_GetCurrentColumnNumber(parser.get())) + 1;
    std::string msg = st.refusal;
    if (msg.empty()) {
      const auto code = XML_GetErrorCode(parser.get());
      msg = code == XML_ERROR_NONE ? "no root element" : XML_ErrorString(code);
    }
    throw SyntaxError(msg, line, column);
  }
  return std::move(*st.root);
}

}  // namespace frameforge::xml
