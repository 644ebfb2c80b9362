#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <stdlib.h>

namespace frameforge::testing {
namespace {

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool chance(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

std::string data_path(const std::string& name) { return std::string(FRAMEFORGE_TEST_DATA) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << bytes;
  if (!out) throw std::runtime_error("cannot write " + path);
}

TempDir::TempDir() {
  std::string templ = (std::filesystem::temp_directory_path() / "frameforge-test-XXXXXX").string();
  if (mkdtemp(templ.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = templ;
}

TempDir::~TempDir() {
  std::error_code ignored;
  std::filesystem::remove_all(path_, ignored);
}

FrameDiagram fig1() {
  FrameElement user{ElementId(1), ElementKind::var(), "USER", BoundingBox{50, 70, 150, 80}, kNullId, kNullId, {}};
  FrameElement zykov{ElementId(2), ElementKind::concept_node(), "sergey.zykov", BoundingBox{50, 270, 150, 80},
                     kNullId, kNullId, {}};
  FrameElement role{ElementId(4), ElementKind::instantiation(), "i role", BoundingBox{125, 270, 150, 80},
                    ElementId(2), ElementId(1), {}};
  return FrameDiagram({user, zykov, role});
}

std::string random_text(std::mt19937& rng, bool line_breaks) {
  static const std::vector<std::string> pieces{
      "a", "b", "z", "Q", "X", "0", "7", " ", "_", ".", "-", "&", "<", ">", "\"", "'", "\\", "{", "}", ":",
      "=", "#", "ü", "Ж", "→", "日", "😀", "amp;", "]]>", "&#10;"};
  static const std::vector<std::string> breaks{"\n", "\r", "\t", "\r\n"};
  std::string s;
  const int n = uniform(rng, 1, 12);
  for (int i = 0; i < n; ++i) {
    s += (line_breaks && chance(rng, 0.1)) ? pick(rng, breaks) : pick(rng, pieces);
  }
  return s;
}

FrameDiagram random_diagram(std::mt19937& rng, const DiagramShape& shape) {
  const int target = uniform(rng, static_cast<int>(shape.min_elements), static_cast<int>(shape.max_elements));
  // Sparse ids drawn without replacement.
  std::set<std::int32_t> used;
  auto fresh_id = [&] {
    for (;;) {
      const auto id = static_cast<std::int32_t>(uniform(rng, 1, 10 * target + 20));
      if (used.insert(id).second) return ElementId(id);
    }
  };
  auto decorate = [&](FrameElement& e) {
    if (chance(rng, shape.geometry_rate)) {
      e.bbox = BoundingBox{uniform(rng, -2000, 2000), uniform(rng, -2000, 2000), uniform(rng, 1, 400),
                           uniform(rng, 1, 400)};
    }
    if (chance(rng, shape.description_rate)) e.description = chance(rng, 0.1) ? "" : random_text(rng, true);
  };

  std::vector<FrameElement> out;
  std::vector<ElementId> vars;
  std::vector<ElementId> nodes;
  auto node = [&](ElementKind kind) {
    FrameElement e{fresh_id(), std::move(kind), random_text(rng), {}, kNullId, kNullId, {}};
    decorate(e);
    out.push_back(e);
    nodes.push_back(e.id);
    return e.id;
  };
  auto arc = [&](ElementKind kind, ElementId from, ElementId to) {
    FrameElement e{fresh_id(), std::move(kind), random_text(rng), {}, from, to, {}};
    decorate(e);
    out.push_back(e);
  };

  while (static_cast<int>(out.size()) < target) {
    const int room = target - static_cast<int>(out.size());
    const int action = uniform(rng, 0, shape.unknown_kinds ? 5 : 3);
    if (action == 0 || vars.empty()) {
      vars.push_back(node(ElementKind::var()));
    } else if (action == 1 && room >= 2) {
      const ElementId classifier = pick(rng, vars);
      const ElementId c = node(ElementKind::concept_node());
      arc(ElementKind::instantiation(), c, classifier);
    } else if (action == 2 && vars.size() >= 2) {
      // Later Vars specialise earlier ones, so g-arcs never form a cycle.
      const auto sub = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(vars.size()) - 1));
      const auto super = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(sub) - 1));
      arc(ElementKind::generalization(), vars[sub], vars[super]);
    } else if (action == 3 && vars.size() >= 2) {
      const ElementId a = pick(rng, vars);
      ElementId b = pick(rng, vars);
      while (b == a) b = pick(rng, vars);
      arc(ElementKind::association(), a, b);
    } else if (action == 4) {
      node(ElementKind::unknown(chance(rng, 0.5) ? "Frame" : "x"));
    } else if (action == 5 && nodes.size() >= 2) {
      const ElementId a = pick(rng, nodes);
      ElementId b = pick(rng, nodes);
      while (b == a) b = pick(rng, nodes);
      arc(ElementKind::unknown("link"), a, b);
    } else {
      vars.push_back(node(ElementKind::var()));
    }
  }
  std::shuffle(out.begin(), out.end(), rng);
  return FrameDiagram(std::move(out));
}

uml::Model random_model(std::mt19937& rng, std::size_t max_elements) {
  uml::Model m;
  m.name = chance(rng, 0.2) ? "" : random_text(rng);
  std::set<std::string> ids;
  auto fresh_id = [&](const std::string& prefix) {
    static const std::vector<std::string> tricky{"_model", "_type1", "_type2", "C1_a1", "R1_source", "N1"};
    for (;;) {
      std::string id = chance(rng, 0.05) ? pick(rng, tricky) : prefix + std::to_string(uniform(rng, 1, 999));
      if (ids.insert(id).second) return uml::UmlId(id);
    }
  };
  static const std::vector<std::string> types{"int", "string", "bool", "double", "Date", "USER"};

  const int n_classes = uniform(rng, 0, static_cast<int>(max_elements) / 3);
  for (int i = 0; i < n_classes; ++i) {
    uml::Class c;
    c.id = fresh_id("C");
    c.name = random_text(rng);
    if (chance(rng, 0.5)) {
      c.attributes = uml::standard_attributes();
    }
    std::set<std::string> names;
    for (const auto& a : c.attributes) names.insert(a.name);
    const int extra = uniform(rng, 0, 3);
    for (int k = 0; k < extra; ++k) {
      std::string name = random_text(rng);
      if (names.insert(name).second) c.attributes.push_back({name, pick(rng, types)});
    }
    if (chance(rng, 0.4)) c.description = random_text(rng, true);
    m.classes.push_back(std::move(c));
  }
  if (m.classes.empty()) return m;

  const int n_instances = uniform(rng, 0, static_cast<int>(max_elements) / 3);
  for (int i = 0; i < n_instances; ++i) {
    uml::Instance inst;
    inst.id = fresh_id("O");
    inst.name = random_text(rng);
    const auto& cls = pick(rng, m.classes);
    inst.classifier = cls.id;
    for (const auto& a : cls.attributes) {
      if (chance(rng, 0.6)) inst.slots.push_back({a.name, chance(rng, 0.1) ? "" : random_text(rng, true)});
    }
    m.instances.push_back(std::move(inst));
    uml::Relation r;
    r.id = fresh_id("R");
    r.kind = uml::RelationKind::instance_of;
    r.name = chance(rng, 0.7) ? "i role" : random_text(rng);
    r.source = m.instances.back().id;
    r.target = cls.id;
    if (chance(rng, 0.2)) r.description = random_text(rng, true);
    m.relations.push_back(std::move(r));
  }
  const int n_links = m.classes.size() >= 2 ? uniform(rng, 0, static_cast<int>(max_elements) / 3) : 0;
  for (int i = 0; i < n_links; ++i) {
    uml::Relation r;
    r.id = fresh_id("R");
    r.kind = chance(rng, 0.5) ? uml::RelationKind::generalization : uml::RelationKind::association;
    r.name = random_text(rng);
    r.source = pick(rng, m.classes).id;
    do {
      r.target = pick(rng, m.classes).id;
    } while (r.target == r.source);
    if (chance(rng, 0.2)) r.description = random_text(rng, true);
    m.relations.push_back(std::move(r));
  }
  std::shuffle(m.relations.begin(), m.relations.end(), rng);
  const int n_comments = uniform(rng, 0, 3);
  for (int i = 0; i < n_comments; ++i) {
    uml::Comment c{random_text(rng, true), {}};
    if (chance(rng, 0.5)) c.anchor = pick(rng, m.classes).id;
    m.comments.push_back(std::move(c));
  }
  return m;
}

FrameDiagram strip_geometry(const FrameDiagram& d) {
  std::vector<FrameElement> out(d.elements().begin(), d.elements().end());
  for (auto& e : out) e.bbox.reset();
  return FrameDiagram(std::move(out));
}

std::string shape_signature(const FrameDiagram& d) {
  // Nodes are described by (kind, name, description); arcs by the same plus
  // their endpoint descriptions. Sorting the lines drops ids and order.
  std::map<ElementId, std::string> node_label;
  for (const auto& e : d.elements()) {
    if (e.is_node()) {
      node_label[e.id] = std::string(e.kind.wire_tag()) + "|" + e.name + "|" + e.description.value_or("<none>");
    }
  }
  std::vector<std::string> lines;
  for (const auto& e : d.elements()) {
    if (e.is_node()) {
      lines.push_back("N " + node_label[e.id]);
    } else {
      lines.push_back("A " + std::string(e.kind.wire_tag()) + "|" + e.name + "|" + e.description.value_or("<none>") +
                      " (" + node_label[e.prev] + ") -> (" + node_label[e.next] + ")");
    }
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace frameforge::testing
