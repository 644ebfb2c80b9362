#include "frameforge/frame_store.hpp"

#include <array>
#include <optional>

#include "frameforge/xml_dom.hpp"
#include "text.hpp"

namespace frameforge {
namespace {

constexpr std::array<FrameField, 10> kFields{{
    {"Id", "xs:int"},
    {"Type", "xs:string"},
    {"Name", "xs:string"},
    {"Left", "xs:int"},
    {"Top", "xs:int"},
    {"Width", "xs:int"},
    {"Height", "xs:int"},
    {"Prev", "xs:int"},
    {"Next", "xs:int"},
    {"Description", "xs:string"},
}};

enum FieldIndex { kId, kType, kName, kLeft, kTop, kWidth, kHeight, kPrev, kNext, kDescription };

constexpr std::string_view kRoot = "NewDataSet";
constexpr std::string_view kRecord = "Elements";
constexpr std::string_view kDeclaration = R"(<?xml version="1.0" standalone="yes"?>)";

std::optional<std::size_t> field_index(std::string_view name) {
  for (std::size_t i = 0; i < kFields.size(); ++i) {
    if (kFields[i].name == name) return i;
  }
  return std::nullopt;
}

bool is_blank(std::string_view s) { return text::trim(s).empty(); }

std::string at_line(const xml::Node& n) { return " (line " + std::to_string(n.line) + ")"; }

// An inline xs:schema child, as written by dataset tooling, carries no frame data.
bool is_inline_schema(const xml::Node& n) { return n.local_name() == "schema"; }

// Fields of one record, located by canonical index.
struct Record {
  const xml::Node* node = nullptr;
  std::array<const xml::Node*, kFields.size()> fields{};
  std::string label;  // Id text when it parses, else empty
};

struct SchemaScan {
  std::vector<Record> records;
  std::vector<Diagnostic> diagnostics;
};

SchemaScan scan(const xml::Node& root) {
  SchemaScan out;
  if (root.name != kRoot) {
    out.diagnostics.push_back(make_error(codes::kWrongRoot, "",
                                         "root element is <" + root.name + ">, expected <NewDataSet>" + at_line(root)));
    return out;
  }
  if (!is_blank(root.text)) {
    out.diagnostics.push_back(make_error(codes::kUnknownElement, "", "text directly inside <NewDataSet>"));
  }
  for (const auto& child : root.children) {
    if (child.name != kRecord) {
      if (!is_inline_schema(child)) {
        out.diagnostics.push_back(
            make_error(codes::kUnknownElement, "", "unexpected <" + child.name + "> in <NewDataSet>" + at_line(child)));
      }
      continue;
    }
    Record rec;
    rec.node = &child;
    if (const auto* id = child.first_child("Id"); id != nullptr && id->children.empty()) {
      if (text::parse_int32(id->text)) rec.label = text::trim(id->text);
    }
    if (!is_blank(child.text)) {
      out.diagnostics.push_back(make_error(codes::kUnknownElement, rec.label, "text directly inside <Elements>" + at_line(child)));
    }
    std::size_t last = 0;
    bool order_reported = false;
    for (const auto& f : child.children) {
      const auto idx = field_index(f.name);
      if (!idx) {
        out.diagnostics.push_back(
            make_warning(codes::kUnknownField, rec.label, "unknown field <" + f.name + "> is ignored" + at_line(f)));
        continue;
      }
      if (rec.fields[*idx] != nullptr) {
        out.diagnostics.push_back(make_error(codes::kDupField, rec.label, "field <" + f.name + "> repeated" + at_line(f)));
        continue;
      }
      rec.fields[*idx] = &f;
      if (*idx < last && !order_reported) {
        out.diagnostics.push_back(
            make_warning(codes::kBadFieldOrder, rec.label, "field <" + f.name + "> out of canonical order" + at_line(f)));
        order_reported = true;
      }
      last = std::max(last, *idx);
      if (!f.children.empty()) {
        out.diagnostics.push_back(
            make_error(codes::kBadFieldType, rec.label, "field <" + f.name + "> must hold text only" + at_line(f)));
      } else if (kFields[*idx].xsd_type == "xs:int" && !text::parse_int32(f.text)) {
        out.diagnostics.push_back(make_error(codes::kBadFieldType, rec.label,
                                             "field <" + f.name + "> is not an xs:int: '" + f.text + "'" + at_line(f)));
      }
    }
    out.records.push_back(rec);
  }
  return out;
}

xml::Node parse_xml_or_throw(std::string_view bytes) {
  try {
    return xml::parse(bytes);
  } catch (const xml::SyntaxError& e) {
    throw ParseError(codes::kXmlSyntax, "",
                     std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  }
}

std::int32_t int_field(const Record& r, FieldIndex i) { return *text::parse_int32(r.fields[i]->text); }

}  // namespace

std::span<const FrameField> frame_fields() { return kFields; }

std::vector<Diagnostic> validate_against_schema(std::string_view bytes) {
  try {
    const auto root = xml::parse(bytes);
    return scan(root).diagnostics;
  } catch (const xml::SyntaxError& e) {
    return {make_error(codes::kXmlSyntax, "",
                       std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what())};
  }
}

ParsedFrame parse_frame_document(std::string_view bytes) {
  const auto root = parse_xml_or_throw(bytes);
  SchemaScan s = scan(root);
  if (has_errors(s.diagnostics)) {
    throw ParseError(std::move(s.diagnostics));
  }

  std::vector<Diagnostic> problems;
  std::vector<FrameElement> elements;
  elements.reserve(s.records.size());
  for (const auto& r : s.records) {
    const std::string where = at_line(*r.node);
    bool complete = true;
    for (const FieldIndex required : {kId, kType, kName}) {
      const auto* f = r.fields[required];
      if (f == nullptr || (required == kType && f->text.empty())) {
        problems.push_back(make_error(codes::kMissingField, r.label,
                                      "record lacks <" + std::string(kFields[required].name) + ">" + where));
        complete = false;
      }
    }
    const int geometry_fields = (r.fields[kLeft] != nullptr) + (r.fields[kTop] != nullptr) +
                                (r.fields[kWidth] != nullptr) + (r.fields[kHeight] != nullptr);
    if (geometry_fields != 0 && geometry_fields != 4) {
      problems.push_back(make_error(codes::kBadGeometry, r.label,
                                    "geometry needs all of Left, Top, Width, Height" + where));
      complete = false;
    }
    if (!complete) continue;

    FrameElement e;
    e.id = ElementId(int_field(r, kId));
    e.kind = ElementKind::from_wire(r.fields[kType]->text);
    e.name = r.fields[kName]->text;
    if (geometry_fields == 4) {
      e.bbox = BoundingBox{int_field(r, kLeft), int_field(r, kTop), int_field(r, kWidth), int_field(r, kHeight)};
    }
    if (r.fields[kPrev] != nullptr) e.prev = ElementId(int_field(r, kPrev));
    if (r.fields[kNext] != nullptr) e.next = ElementId(int_field(r, kNext));
    if (r.fields[kDescription] != nullptr) e.description = r.fields[kDescription]->text;
    elements.push_back(std::move(e));
  }
  if (!problems.empty()) {
    throw ParseError(std::move(problems));
  }

  FrameDiagram diagram(std::move(elements));
  auto semantic = validate_diagram(diagram);
  if (!semantic.empty()) {
    throw ParseError(std::move(semantic));
  }
  return ParsedFrame{std::move(diagram), std::move(s.diagnostics)};
}

FrameDiagram parse_frame_xml(std::string_view bytes) { return parse_frame_document(bytes).diagram; }

std::string serialize_frame_xml(const FrameDiagram& d) {
  auto problems = validate_diagram(d);
  if (!problems.empty()) {
    throw DiagnosticError(std::move(problems));
  }
  std::string out;
  out.reserve(64 + d.size() * 256);
  out += kDeclaration;
  out += '\n';
  if (d.empty()) {
    out += "<NewDataSet />\n";
    return out;
  }
  auto field = [&out](std::string_view name, std::string_view value) {
    out += "    <";
    out += name;
    out += '>';
    out += value;
    out += "</";
    out += name;
    out += ">\n";
  };
  out += "<NewDataSet>\n";
  for (const auto& e : d.elements()) {
    out += "  <Elements>\n";
    field("Id", std::to_string(e.id.value));
    field("Type", text::xml_escape_text(e.kind.wire_tag()));
    field("Name", text::xml_escape_text(e.name));
    if (e.bbox) {
      field("Left", std::to_string(e.bbox->left));
      field("Top", std::to_string(e.bbox->top));
      field("Width", std::to_string(e.bbox->width));
      field("Height", std::to_string(e.bbox->height));
    }
    field("Prev", std::to_string(e.prev.value));
    field("Next", std::to_string(e.next.value));
    if (e.description) {
      field("Description", text::xml_escape_text(*e.description));
    }
    out += "  </Elements>\n";
  }
  out += "</NewDataSet>\n";
  return out;
}

std::string emit_schema() {
  std::string out;
  out += R"(<?xml version="1.0" encoding="utf-8"?>)" "\n";
  out += R"(<xs:schema id="NewDataSet" xmlns="" xmlns:xs="http://www.w3.org/2001/XMLSchema">)" "\n";
  out += R"(  <xs:element name="NewDataSet">)" "\n";
  out += "    <xs:complexType>\n";
  out += R"(      <xs:choice minOccurs="0" maxOccurs="unbounded">)" "\n";
  out += R"(        <xs:element name="Elements">)" "\n";
  out += "          <xs:complexType>\n";
  out += "            <xs:sequence>\n";
  for (const auto& f : kFields) {
    out += "              <xs:element name=\"";
    out += f.name;
    out += "\" type=\"";
    out += f.xsd_type;
    out += "\" minOccurs=\"0\" />\n";
  }
  out += "            </xs:sequence>\n";
  out += "          </xs:complexType>\n";
  out += "        </xs:element>\n";
  out += "      </xs:choice>\n";
  out += "    </xs:complexType>\n";
  out += "  </xs:element>\n";
  out += "</xs:schema>\n";
  return out;
}

}  // namespace frameforge
