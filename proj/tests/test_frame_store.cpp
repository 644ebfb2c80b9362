#include <doctest.h>

#include <random>
#include <thread>

#include "frameforge/frame_store.hpp"
#include "frameforge/xml_dom.hpp"
#include "support.hpp"

using namespace frameforge;
using frameforge::testing::data_path;
using frameforge::testing::fig1;
using frameforge::testing::read_file;

namespace {

constexpr const char* kDecl = "<?xml version=\"1.0\" standalone=\"yes\"?>\n";

std::string wrap(const std::string& body) { return std::string(kDecl) + "<NewDataSet>\n" + body + "</NewDataSet>\n"; }

std::vector<Diagnostic> parse_errors(const std::string& bytes) {
  try {
    parse_frame_xml(bytes);
  } catch (const ParseError& e) {
    return e.diagnostics();
  }
  return {};
}

}  // namespace

TEST_SUITE("frame_store") {
  TEST_CASE("reference fixture parses to the printed values") {
    const auto d = parse_frame_xml(read_file(data_path("fig1.frame.xml")));
    CHECK(d == fig1());
    REQUIRE(d.size() == 3);
    const auto& role = d.elements()[2];
    CHECK(role.kind == ElementKind::instantiation());
    CHECK(role.name == "i role");
    CHECK(role.bbox->left == 125);
    CHECK(role.bbox->top == 270);
  }

  TEST_CASE("fixture bytes are canonical") {
    const auto bytes = read_file(data_path("fig1.frame.xml"));
    CHECK(serialize_frame_xml(parse_frame_xml(bytes)) == bytes);
  }

  TEST_CASE("empty documents") {
    CHECK(parse_frame_xml("<?xml version=\"1.0\" standalone=\"yes\"?><NewDataSet/>").empty());
    CHECK(serialize_frame_xml(FrameDiagram{}) == std::string(kDecl) + "<NewDataSet />\n");
  }

  TEST_CASE("duplicate Id is a parse error carrying DUP_ID") {
    const auto ds = parse_errors(wrap(
        "<Elements><Id>1</Id><Type>Var</Type><Name>a</Name></Elements>"
        "<Elements><Id>1</Id><Type>Var</Type><Name>b</Name></Elements>"));
    CHECK(has_code(ds, "DUP_ID"));
  }

  TEST_CASE("multi-line descriptions round-trip") {
    FrameElement e{ElementId(1), ElementKind::var(), "USER", {}, kNullId, kNullId, "multi\nline\r\n\ttab & <b>"};
    const FrameDiagram d({e});
    const auto bytes = serialize_frame_xml(d);
    CHECK(bytes.find("<Description>multi&#10;line&#13;&#10;&#9;tab &amp; &lt;b&gt;</Description>") != std::string::npos);
    CHECK(parse_frame_xml(bytes) == d);
  }

  TEST_CASE("whitespace inside names is kept") {
    FrameElement e{ElementId(1), ElementKind::var(), "  spaced  ", {}, kNullId, kNullId, std::string("")};
    const FrameDiagram d({e});
    CHECK(parse_frame_xml(serialize_frame_xml(d)) == d);
  }

  TEST_CASE("absent optional fields") {
    const auto d = parse_frame_xml(wrap("<Elements><Id>3</Id><Type>Concept</Type><Name>x</Name></Elements>"));
    REQUIRE(d.size() == 1);
    CHECK_FALSE(d.elements()[0].bbox.has_value());
    CHECK(d.elements()[0].prev.is_null());
    CHECK(d.elements()[0].next.is_null());
    CHECK_FALSE(d.elements()[0].description.has_value());
  }

  TEST_CASE("integer fields tolerate surrounding whitespace and signs") {
    const auto d = parse_frame_xml(wrap(
        "<Elements><Id> 3 </Id><Type>Var</Type><Name>x</Name><Left>-5</Left><Top>+7</Top>"
        "<Width>1</Width><Height>2</Height></Elements>"));
    CHECK(d.elements()[0].id == ElementId(3));
    CHECK(d.elements()[0].bbox == BoundingBox{-5, 7, 1, 2});
  }

  TEST_CASE("BOM is accepted, DOCTYPE is refused") {
    const auto bytes = read_file(data_path("fig1.frame.xml"));
    CHECK(parse_frame_xml("\xEF\xBB\xBF" + bytes) == fig1());
    const std::string doctype = "<?xml version=\"1.0\"?><!DOCTYPE NewDataSet [<!ENTITY x \"y\">]><NewDataSet/>";
    CHECK(has_code(parse_errors(doctype), "XML_SYNTAX"));
  }

  TEST_CASE("syntax errors carry line and column") {
    try {
      parse_frame_xml("<NewDataSet>\n  <Elements>\n</NewDataSet>");
      FAIL("expected XML_SYNTAX");
    } catch (const ParseError& e) {
      CHECK(e.code() == "XML_SYNTAX");
      CHECK(e.diagnostics()[0].message.rfind("3:", 0) == 0);
    }
  }

  TEST_CASE("missing identity fields") {
    CHECK(has_code(parse_errors(wrap("<Elements><Type>Var</Type><Name>x</Name></Elements>")), "MISSING_FIELD"));
    CHECK(has_code(parse_errors(wrap("<Elements><Id>1</Id><Name>x</Name></Elements>")), "MISSING_FIELD"));
    CHECK(has_code(parse_errors(wrap("<Elements><Id>1</Id><Type>Var</Type></Elements>")), "MISSING_FIELD"));
  }

  TEST_CASE("non-canonical input normalizes and normalization is idempotent") {
    const std::string messy =
        "<?xml version='1.0' encoding='UTF-8'?>\r\n<NewDataSet><Elements><Name>USER</Name><Type>Var</Type>"
        "<Id>1</Id><Extra>dropped</Extra></Elements></NewDataSet>";
    const auto parsed = parse_frame_document(messy);
    CHECK(has_code(parsed.warnings, "BAD_FIELD_ORDER"));
    CHECK(has_code(parsed.warnings, "UNKNOWN_FIELD"));
    const auto once = serialize_frame_xml(parsed.diagram);
    CHECK(once != messy);
    CHECK(serialize_frame_xml(parse_frame_xml(once)) == once);
    CHECK(once.find("Extra") == std::string::npos);
  }

  TEST_CASE("serialize refuses invalid diagrams") {
    FrameElement e{ElementId(1), ElementKind::var(), "", {}, kNullId, kNullId, {}};
    CHECK_THROWS_AS(serialize_frame_xml(FrameDiagram({e})), DiagnosticError);
  }

  TEST_CASE("schema validation examples") {
    CHECK(validate_against_schema(read_file(data_path("fig1.frame.xml"))).empty());
    const auto left = validate_against_schema("<NewDataSet><Elements><Left>x</Left></Elements></NewDataSet>");
    REQUIRE(left.size() == 1);
    CHECK(left[0].code == "BAD_FIELD_TYPE");
    CHECK(left[0].message.find("Left") != std::string::npos);
    const auto root = validate_against_schema("<DataSet/>");
    REQUIRE(root.size() == 1);
    CHECK(root[0].code == "WRONG_ROOT");
  }

  TEST_CASE("schema validation severities") {
    const auto ds = validate_against_schema(
        "<NewDataSet><Elements><Name>a</Name><Id>1</Id><Color>red</Color></Elements></NewDataSet>");
    CHECK_FALSE(has_errors(ds));
    CHECK(has_code(ds, "BAD_FIELD_ORDER"));
    CHECK(has_code(ds, "UNKNOWN_FIELD"));
    CHECK(has_code(validate_against_schema("<NewDataSet><Other/></NewDataSet>"), "UNKNOWN_ELEMENT"));
    CHECK(has_code(validate_against_schema("<NewDataSet><Elements><Id>1</Id><Id>2</Id></Elements></NewDataSet>"),
                   "DUP_FIELD"));
    CHECK(has_code(validate_against_schema("<NewDataSet"), "XML_SYNTAX"));
    // Fields with every value absent are schema-valid; the parser enforces identity.
    CHECK(validate_against_schema("<NewDataSet><Elements/></NewDataSet>").empty());
  }

  TEST_CASE("emitted schema") {
    const auto xsd = emit_schema();
    CHECK(xsd.find("<xs:element name=\"Id\" type=\"xs:int\" minOccurs=\"0\"") != std::string::npos);
    CHECK(emit_schema() == xsd);
    CHECK(xsd.find("msdata") == std::string::npos);
  }

  TEST_CASE("emitted schema agrees with the field table") {
    // Read the XSD back and check the ten typed fields, in order, under an
    // unbounded choice of Elements inside NewDataSet.
    const auto root = xml::parse(emit_schema());
    CHECK(root.local_name() == "schema");
    const xml::Node* top = nullptr;
    for (const auto& c : root.children) {
      if (c.local_name() == "element" && c.attribute("name") && *c.attribute("name") == "NewDataSet") top = &c;
    }
    REQUIRE(top != nullptr);
    const auto* choice = top->first_child("xs:complexType")->first_child("xs:choice");
    REQUIRE(choice != nullptr);
    CHECK(*choice->attribute("maxOccurs") == "unbounded");
    const auto* elements = choice->first_child("xs:element");
    REQUIRE(elements != nullptr);
    CHECK(*elements->attribute("name") == "Elements");
    const auto* seq = elements->first_child("xs:complexType")->first_child("xs:sequence");
    REQUIRE(seq != nullptr);
    const auto fields = frame_fields();
    REQUIRE(seq->children.size() == fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto& f = seq->children[i];
      CHECK(*f.attribute("name") == fields[i].name);
      CHECK(*f.attribute("type") == fields[i].xsd_type);
      CHECK(*f.attribute("minOccurs") == "0");
    }
  }

  TEST_CASE("parse(serialize(d)) == d and serialize is a fixed point") {
    std::mt19937 rng(21);
    for (int i = 0; i < 300; ++i) {
      const auto d = testing::random_diagram(rng, {.max_elements = 60, .unknown_kinds = true});
      const auto bytes = serialize_frame_xml(d);
      const auto parsed = parse_frame_document(bytes);
      CHECK(parsed.warnings.empty());
      REQUIRE(parsed.diagram == d);
      CHECK(serialize_frame_xml(parsed.diagram) == bytes);
      CHECK(validate_against_schema(bytes).empty());
    }
  }

  TEST_CASE("serialization is the same from any thread") {
    std::mt19937 rng(22);
    const auto d = testing::random_diagram(rng, {.max_elements = 150, .unknown_kinds = true});
    const auto expected = serialize_frame_xml(d);
    std::vector<std::string> results(4);
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < results.size(); ++t) {
      threads.emplace_back([&, t] { results[t] = serialize_frame_xml(d); });
    }
    for (auto& t : threads) t.join();
    for (const auto& r : results) CHECK(r == expected);
  }
}
