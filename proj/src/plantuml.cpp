#include "frameforge/uml_emit.hpp"

namespace frameforge {
namespace {

// PlantUML string escape: backslash sequences for \, ", and line breaks.
std::string esc(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

void require_valid(const uml::Model& m) {
  if (auto problems = uml::validate_model(m); !problems.empty()) {
    problems.insert(problems.begin(), make_error(codes::kInvalidModel, "", "UML model does not validate"));
    throw DiagnosticError(std::move(problems));
  }
}

}  // namespace

std::string to_plantuml(const uml::Model& m) {
  require_valid(m);
  std::string out = "@startuml\n";
  if (!m.name.empty()) {
    out += "title " + esc(m.name) + "\n";
  }
  for (const auto& c : m.classes) {
    const std::string& id = c.id.value;
    out += "class \"" + esc(c.name) + "\" as " + id + "\n";
    for (const auto& a : c.attributes) {
      out += id + " : +" + esc(a.name) + " : " + esc(a.type_name) + "\n";
    }
    if (c.description) {
      out += "note right of " + id + " : " + esc(*c.description) + "\n";
    }
  }
  for (const auto& i : m.instances) {
    const std::string& id = i.id.value;
    out += "object \"" + esc(i.name) + "\" as " + id + "\n";
    for (const auto& s : i.slots) {
      out += id + " : " + esc(s.attribute) + " = " + esc(s.value) + "\n";
    }
  }
  for (const auto& r : m.relations) {
    // Relation identity and name ride along as PlantUML comments.
    out += "' " + r.id.value + " : " + esc(r.name) + "\n";
    if (r.description) {
      out += "' " + r.id.value + " description : " + esc(*r.description) + "\n";
    }
    const std::string& src = r.source.value;
    const std::string& dst = r.target.value;
    switch (r.kind) {
      case uml::RelationKind::instance_of: out += src + " ..> " + dst + " : <<instanceOf>>\n"; break;
      case uml::RelationKind::generalization: out += src + " --|> " + dst + "\n"; break;
      case uml::RelationKind::association: out += src + " --> " + dst + " : " + esc(r.name) + "\n"; break;
    }
  }
  std::size_t k = 0;
  for (const auto& c : m.comments) {
    const std::string alias = "N" + std::to_string(++k);
    out += "note \"" + esc(c.text) + "\" as " + alias + "\n";
    if (c.anchor) {
      out += alias + " .. " + c.anchor->value + "\n";
    }
  }
  out += "@enduml\n";
  return out;
}

}  // namespace frameforge
