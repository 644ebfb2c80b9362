#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "frameforge/uml_emit.hpp"
#include "frameforge/xml_dom.hpp"
#include "text.hpp"

namespace frameforge {
namespace {

using text::xml_escape_attribute;
using text::xml_escape_text;

// Hands out xmi:ids for generated parts (attributes, ends, types) that do
// not collide with model ids or with each other.
class IdAllocator {
 public:
  explicit IdAllocator(const uml::Model& m) {
    for (const auto& c : m.classes) taken_.insert(c.id.value);
    for (const auto& i : m.instances) taken_.insert(i.id.value);
    for (const auto& r : m.relations) taken_.insert(r.id.value);
  }

  std::string allocate(const std::string& base) {
    std::string id = base;
    for (int n = 2; !taken_.insert(id).second; ++n) {
      id = base + "_" + std::to_string(n);
    }
    return id;
  }

 private:
  std::set<std::string> taken_;
};

std::string attr(std::string_view key, std::string_view value) {
  return " " + std::string(key) + "=\"" + xml_escape_attribute(value) + "\"";
}

std::string comment_block(const std::string& indent, std::string_view body, const std::string& annotated = {}) {
  std::string out = indent + "<ownedComment xmi:type=\"uml:Comment\"";
  if (!annotated.empty()) out += attr("annotatedElement", annotated);
  out += ">\n" + indent + "  <body>" + xml_escape_text(body) + "</body>\n" + indent + "</ownedComment>\n";
  return out;
}

}  // namespace

std::string to_xmi(const uml::Model& m) {
  if (auto problems = uml::validate_model(m); !problems.empty()) {
    problems.insert(problems.begin(), make_error(codes::kInvalidModel, "", "UML model does not validate"));
    throw DiagnosticError(std::move(problems));
  }
  IdAllocator ids(m);
  const std::string model_id = ids.allocate("_model");

  // Primitive types in order of first use.
  std::vector<std::pair<std::string, std::string>> types;  // name -> xmi id
  auto type_id = [&](const std::string& name) {
    for (const auto& [n, id] : types) {
      if (n == name) return id;
    }
    types.emplace_back(name, ids.allocate("_type" + std::to_string(types.size() + 1)));
    return types.back().second;
  };

  std::map<std::pair<std::string, std::string>, std::string> feature_id;  // (class, attribute) -> id
  std::map<std::string, std::vector<const uml::Relation*>> generalizations;
  for (const auto& r : m.relations) {
    if (r.kind == uml::RelationKind::generalization) generalizations[r.source.value].push_back(&r);
  }

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<xmi:XMI xmi:version=\"2.1\"" + attr("xmlns:xmi", kXmiNamespace) + attr("xmlns:uml", kUmlNamespace) + ">\n";
  out += "  <uml:Model xmi:type=\"uml:Model\"" + attr("xmi:id", model_id) + attr("name", m.name);
  const bool empty = m.classes.empty() && m.instances.empty() && m.relations.empty() && m.comments.empty();
  if (empty) {
    out += " />\n</xmi:XMI>\n";
    return out;
  }
  out += ">\n";

  for (const auto& c : m.classes) {
    out += "    <packagedElement xmi:type=\"uml:Class\"" + attr("xmi:id", c.id.value) + attr("name", c.name) + ">\n";
    if (c.description) out += comment_block("      ", *c.description);
    std::size_t k = 0;
    for (const auto& a : c.attributes) {
      const std::string fid = ids.allocate(c.id.value + "_a" + std::to_string(++k));
      feature_id.emplace(std::make_pair(c.id.value, a.name), fid);
      out += "      <ownedAttribute xmi:type=\"uml:Property\"" + attr("xmi:id", fid) + attr("name", a.name) +
             attr("type", type_id(a.type_name)) + " />\n";
    }
    for (const auto* g : generalizations[c.id.value]) {
      out += "      <generalization xmi:type=\"uml:Generalization\"" + attr("xmi:id", g->id.value) +
             attr("general", g->target.value);
      if (g->description) {
        out += ">\n" + comment_block("        ", *g->description) + "      </generalization>\n";
      } else {
        out += " />\n";
      }
    }
    out += "    </packagedElement>\n";
  }

  for (const auto& i : m.instances) {
    out += "    <packagedElement xmi:type=\"uml:InstanceSpecification\"" + attr("xmi:id", i.id.value) +
           attr("name", i.name) + attr("classifier", i.classifier.value);
    if (i.slots.empty()) {
      out += " />\n";
      continue;
    }
    out += ">\n";
    for (const auto& s : i.slots) {
      out += "      <slot xmi:type=\"uml:Slot\"" +
             attr("definingFeature", feature_id.at({i.classifier.value, s.attribute})) + ">\n";
      out += "        <value xmi:type=\"uml:LiteralString\"" + attr("value", s.value) + " />\n";
      out += "      </slot>\n";
    }
    out += "    </packagedElement>\n";
  }

  for (const auto& r : m.relations) {
    if (r.kind == uml::RelationKind::generalization) continue;
    std::string body;
    if (r.description) body += comment_block("      ", *r.description);
    if (r.kind == uml::RelationKind::instance_of) {
      out += "    <packagedElement xmi:type=\"uml:Dependency\"" + attr("xmi:id", r.id.value) + attr("name", r.name) +
             attr("client", r.source.value) + attr("supplier", r.target.value);
    } else {
      const std::string src_end = ids.allocate(r.id.value + "_source");
      const std::string dst_end = ids.allocate(r.id.value + "_target");
      out += "    <packagedElement xmi:type=\"uml:Association\"" + attr("xmi:id", r.id.value) + attr("name", r.name) +
             attr("memberEnd", src_end + " " + dst_end) + attr("navigableOwnedEnd", dst_end);
      body += "      <ownedEnd xmi:type=\"uml:Property\"" + attr("xmi:id", src_end) + attr("type", r.source.value) +
              attr("association", r.id.value) + " />\n";
      body += "      <ownedEnd xmi:type=\"uml:Property\"" + attr("xmi:id", dst_end) + attr("type", r.target.value) +
              attr("association", r.id.value) + " />\n";
    }
    out += body.empty() ? " />\n" : ">\n" + body + "    </packagedElement>\n";
  }

  for (const auto& [name, id] : types) {
    out += "    <packagedElement xmi:type=\"uml:PrimitiveType\"" + attr("xmi:id", id) + attr("name", name) + " />\n";
  }
  for (const auto& c : m.comments) {
    out += comment_block("    ", c.text, c.anchor ? c.anchor->value : std::string());
  }
  if (!m.relations.empty()) {
    // Relation order and generalization names have no slot in plain UML.
    out += "    <xmi:Extension" + attr("extender", kXmiExtender) + ">\n";
    for (const auto& r : m.relations) {
      out += "      <relation" + attr("ref", r.id.value);
      if (r.kind == uml::RelationKind::generalization) out += attr("name", r.name);
      out += " />\n";
    }
    out += "    </xmi:Extension>\n";
  }
  out += "  </uml:Model>\n</xmi:XMI>\n";
  return out;
}

namespace {

std::string get(const xml::Node& n, std::string_view key) {
  const std::string* v = n.attribute(key);
  return v == nullptr ? std::string() : *v;
}

std::string first_token(const std::string& s) {
  std::istringstream in(s);
  std::string tok;
  in >> tok;
  return tok;
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

// idref given either as an attribute or as a child element carrying
// xmi:idref (both forms are legal XMI).
std::string ref(const xml::Node& n, std::string_view key) {
  if (const std::string* v = n.attribute(key)) return first_token(*v);
  if (const xml::Node* c = n.first_child(key)) return get(*c, "xmi:idref");
  return {};
}

std::string comment_body(const xml::Node& comment) {
  if (const xml::Node* b = comment.first_child("body")) return b->text;
  return get(comment, "body");
}

std::optional<std::string> first_comment(const xml::Node& n) {
  if (const xml::Node* c = n.first_child("ownedComment")) return comment_body(*c);
  return std::nullopt;
}

std::string primitive_from_href(const std::string& href) {
  const auto hash = href.rfind('#');
  const std::string frag = hash == std::string::npos ? href : href.substr(hash + 1);
  if (frag == "Integer") return "int";
  if (frag == "String") return "string";
  if (frag == "Boolean") return "boolean";
  if (frag == "Real") return "real";
  return frag;
}

class XmiReader {
 public:
  explicit XmiReader(const xml::Node& model) : model_(model) { index(model_); }

  XmiImport read() {
    XmiImport out;
    out.model.name = get(model_, "name");
    collect_classifiers();
    for (const auto& child : model_.children) {
      if (child.name == "packagedElement") {
        packaged(child, out);
      } else if (child.name == "ownedComment") {
        const std::string anchor = first_token(get(child, "annotatedElement"));
        out.model.comments.push_back(
            uml::Comment{comment_body(child), anchor.empty() ? std::nullopt : std::optional(uml::UmlId(anchor))});
      } else if (child.name == "xmi:Extension" && get(child, "extender") == kXmiExtender) {
        extension_ = &child;
      }
    }
    synthesize_instance_of(out.model);
    apply_extension(out.model);
    check_refs(out.model);
    if (auto problems = uml::validate_model(out.model); !problems.empty()) {
      throw ParseError(std::move(problems));
    }
    return out;
  }

 private:
  void index(const xml::Node& n) {
    if (const std::string* id = n.attribute("xmi:id")) by_id_.emplace(*id, &n);
    for (const auto& c : n.children) index(c);
  }

  static std::string required_id(const xml::Node& n) {
    const std::string id = get(n, "xmi:id");
    if (id.empty()) {
      throw ParseError(codes::kMissingXmiId, "",
                       "<" + n.name + "> at line " + std::to_string(n.line) + " has no xmi:id");
    }
    return id;
  }

  void collect_classifiers() {
    for (const auto& child : model_.children) {
      if (child.name == "packagedElement" && get(child, "xmi:type") == "uml:InstanceSpecification") {
        classifier_of_.emplace(get(child, "xmi:id"), first_token(get(child, "classifier")));
      }
    }
  }

  std::string type_name(const xml::Node& property) const {
    std::string type_ref = first_token(get(property, "type"));
    if (const xml::Node* t = property.first_child("type")) {
      if (const std::string* href = t->attribute("href")) return primitive_from_href(*href);
      type_ref = get(*t, "xmi:idref");
    }
    if (type_ref.empty()) return {};
    const auto it = by_id_.find(type_ref);
    return it == by_id_.end() ? type_ref : get(*it->second, "name");
  }

  void unsupported(const xml::Node& n, const std::string& type, XmiImport& out) {
    const std::string id = get(n, "xmi:id");
    out.model.comments.push_back(
        uml::Comment{"unsupported " + type + " '" + get(n, "name") + "' (" + id + ")", std::nullopt});
    out.warnings.push_back(make_warning(codes::kUnsupportedElement, id, type + " is outside the supported subset"));
  }

  void packaged(const xml::Node& n, XmiImport& out) {
    const std::string type = get(n, "xmi:type");
    if (type.empty()) {
      throw ParseError(codes::kBadXmi, "", "packagedElement at line " + std::to_string(n.line) + " has no xmi:type");
    }
    if (type == "uml:PrimitiveType" || type == "uml:DataType") return;
    const std::string id = required_id(n);
    if (type == "uml:Class") {
      uml::Class c{uml::UmlId(id), get(n, "name"), {}, first_comment(n)};
      for (const auto* a : n.children_named("ownedAttribute")) {
        if (a->attribute("association") != nullptr) continue;  // association end, not a class attribute
        c.attributes.push_back(uml::Attribute{get(*a, "name"), type_name(*a)});
      }
      out.model.classes.push_back(std::move(c));
      for (const auto* g : n.children_named("generalization")) {
        out.model.relations.push_back(uml::Relation{uml::UmlId(required_id(*g)), uml::RelationKind::generalization,
                                                    get(*g, "name"), uml::UmlId(id), uml::UmlId(ref(*g, "general")),
                                                    first_comment(*g)});
      }
    } else if (type == "uml:InstanceSpecification") {
      const std::string classifier = classifier_of_.at(id);
      if (classifier.empty()) {
        throw ParseError(codes::kBadXmi, id, "instance specification without a classifier");
      }
      uml::Instance inst{uml::UmlId(id), get(n, "name"), uml::UmlId(classifier), {}};
      for (const auto* s : n.children_named("slot")) {
        const std::string feature = ref(*s, "definingFeature");
        const auto it = by_id_.find(feature);
        if (it == by_id_.end()) {
          throw ParseError(codes::kStaleRef, id, "slot refers to missing feature '" + feature + "'");
        }
        std::string value;
        if (const xml::Node* v = s->first_child("value")) {
          value = v->attribute("value") != nullptr ? get(*v, "value") : v->text;
        }
        inst.slots.push_back(uml::Slot{get(*it->second, "name"), std::move(value)});
      }
      out.model.instances.push_back(std::move(inst));
    } else if (type == "uml:Dependency") {
      const std::string client = ref(n, "client");
      const std::string supplier = ref(n, "supplier");
      const auto it = classifier_of_.find(client);
      if (it == classifier_of_.end() || it->second != supplier) {
        unsupported(n, type, out);
        return;
      }
      out.model.relations.push_back(uml::Relation{uml::UmlId(id), uml::RelationKind::instance_of, get(n, "name"),
                                                  uml::UmlId(client), uml::UmlId(supplier), first_comment(n)});
    } else if (type == "uml:Association") {
      const auto ends = tokens(get(n, "memberEnd"));
      std::vector<const xml::Node*> end_nodes;
      for (const auto& e : ends) {
        const auto it = by_id_.find(e);
        if (it == by_id_.end()) {
          throw ParseError(codes::kStaleRef, id, "association end '" + e + "' does not resolve");
        }
        end_nodes.push_back(it->second);
      }
      if (end_nodes.size() != 2) {
        unsupported(n, type, out);
        return;
      }
      out.model.relations.push_back(uml::Relation{uml::UmlId(id), uml::RelationKind::association, get(n, "name"),
                                                  uml::UmlId(ref(*end_nodes[0], "type")),
                                                  uml::UmlId(ref(*end_nodes[1], "type")), first_comment(n)});
    } else {
      unsupported(n, type, out);
    }
  }

  void synthesize_instance_of(uml::Model& m) {
    std::set<std::string> covered;
    std::set<std::string> taken;
    for (const auto& r : m.relations) {
      if (r.kind == uml::RelationKind::instance_of) covered.insert(r.source.value);
    }
    for (const auto& [id, node] : by_id_) taken.insert(id);
    for (const auto& i : m.instances) {
      if (covered.count(i.id.value) != 0) continue;
      std::string id = i.id.value + "_instanceOf";
      for (int n = 2; taken.count(id) != 0; ++n) id = i.id.value + "_instanceOf_" + std::to_string(n);
      taken.insert(id);
      m.relations.push_back(
          uml::Relation{uml::UmlId(id), uml::RelationKind::instance_of, "i role", i.id, i.classifier, std::nullopt});
    }
  }

  void apply_extension(uml::Model& m) {
    if (extension_ == nullptr) return;
    std::map<std::string, std::size_t> position;
    std::map<std::string, std::string> names;
    for (const auto* r : extension_->children_named("relation")) {
      const std::string id = get(*r, "ref");
      position.emplace(id, position.size());
      if (const std::string* name = r->attribute("name")) names.emplace(id, *name);
    }
    for (auto& r : m.relations) {
      if (r.kind != uml::RelationKind::generalization) continue;
      if (const auto it = names.find(r.id.value); it != names.end()) r.name = it->second;
    }
    std::stable_sort(m.relations.begin(), m.relations.end(), [&](const uml::Relation& a, const uml::Relation& b) {
      const auto pa = position.find(a.id.value);
      const auto pb = position.find(b.id.value);
      const std::size_t ka = pa == position.end() ? position.size() : pa->second;
      const std::size_t kb = pb == position.end() ? position.size() : pb->second;
      return ka < kb;
    });
  }

  static void check_refs(const uml::Model& m) {
    std::set<std::string> ids;
    for (const auto& c : m.classes) ids.insert(c.id.value);
    for (const auto& i : m.instances) ids.insert(i.id.value);
    for (const auto& r : m.relations) ids.insert(r.id.value);
    std::vector<Diagnostic> stale;
    auto check = [&](const std::string& owner, const std::string& target, const char* what) {
      if (ids.count(target) == 0) {
        stale.push_back(make_error(codes::kStaleRef, owner, std::string(what) + " '" + target + "' does not resolve"));
      }
    };
    for (const auto& i : m.instances) check(i.id.value, i.classifier.value, "classifier");
    for (const auto& r : m.relations) {
      check(r.id.value, r.source.value, "relation source");
      check(r.id.value, r.target.value, "relation target");
    }
    for (const auto& c : m.comments) {
      if (c.anchor) check(c.anchor->value, c.anchor->value, "comment anchor");
    }
    if (!stale.empty()) throw ParseError(std::move(stale));
  }

  const xml::Node& model_;
  std::map<std::string, const xml::Node*> by_id_;
  std::map<std::string, std::string> classifier_of_;
  const xml::Node* extension_ = nullptr;
};

const xml::Node& locate_model(const xml::Node& root) {
  if (root.name == "uml:Model") return root;
  if (root.local_name() == "XMI") {
    for (const auto& c : root.children) {
      if (c.name == "uml:Model") return c;
    }
  }
  throw ParseError(codes::kBadXmi, "", "no uml:Model element found");
}

}  // namespace

XmiImport read_xmi(std::string_view bytes) {
  xml::Node root;
  try {
    root = xml::parse(bytes);
  } catch (const xml::SyntaxError& e) {
    throw ParseError(codes::kXmlSyntax, "", std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  }
  XmiReader reader(locate_model(root));
  return reader.read();
}

uml::Model from_xmi(std::string_view bytes) { return read_xmi(bytes).model; }

}  // namespace frameforge
