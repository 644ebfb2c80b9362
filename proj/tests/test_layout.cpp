#include <doctest.h>

#include <random>

#include "frameforge/layout.hpp"
#include "support.hpp"

using namespace frameforge;
using frameforge::testing::fig1;
using frameforge::testing::strip_geometry;

namespace {

FrameElement node(std::int32_t id, ElementKind kind, std::string name) {
  return {ElementId(id), std::move(kind), std::move(name), {}, kNullId, kNullId, {}};
}

FrameElement arc(std::int32_t id, ElementKind kind, std::int32_t prev, std::int32_t next) {
  return {ElementId(id), std::move(kind), "r", {}, ElementId(prev), ElementId(next), {}};
}

bool overlap(const BoundingBox& a, const BoundingBox& b) {
  return a.left < b.left + b.width && b.left < a.left + a.width && a.top < b.top + b.height &&
         b.top < a.top + a.height;
}

}  // namespace

TEST_SUITE("layout") {
  TEST_CASE("single Var lands on the origin") {
    const auto out = auto_layout(FrameDiagram({node(1, ElementKind::var(), "USER")}));
    CHECK(out.elements()[0].bbox == BoundingBox{50, 70, 150, 80});
  }

  TEST_CASE("Concept one rank below its classifier") {
    const auto out = auto_layout(strip_geometry(fig1()));
    CHECK(out.find(ElementId(1))->bbox == BoundingBox{50, 70, 150, 80});
    CHECK(out.find(ElementId(2))->bbox == BoundingBox{50, 270, 150, 80});
    // Arc box: 16x16 around the midpoint of (125,110) and (125,310).
    CHECK(out.find(ElementId(4))->bbox == BoundingBox{117, 202, 16, 16});
  }

  TEST_CASE("empty diagram") { CHECK(auto_layout(FrameDiagram{}).empty()); }

  TEST_CASE("existing geometry is kept") {
    CHECK(auto_layout(fig1()) == fig1());
  }

  TEST_CASE("ranks follow generalization depth and ids order each rank") {
    const FrameDiagram d({node(5, ElementKind::var(), "root"), node(3, ElementKind::var(), "child b"),
                          node(2, ElementKind::var(), "child a"), node(9, ElementKind::var(), "grandchild"),
                          arc(10, ElementKind::generalization(), 3, 5), arc(11, ElementKind::generalization(), 2, 5),
                          arc(12, ElementKind::generalization(), 9, 3)});
    const auto out = auto_layout(d);
    CHECK(out.find(ElementId(5))->bbox == BoundingBox{50, 70, 150, 80});
    CHECK(out.find(ElementId(2))->bbox == BoundingBox{50, 270, 150, 80});
    CHECK(out.find(ElementId(3))->bbox == BoundingBox{250, 270, 150, 80});
    CHECK(out.find(ElementId(9))->bbox == BoundingBox{50, 470, 150, 80});
  }

  TEST_CASE("slots taken by placed boxes are skipped") {
    auto fixed = node(1, ElementKind::var(), "pinned");
    fixed.bbox = BoundingBox{60, 80, 10, 10};
    const FrameDiagram d({fixed, node(2, ElementKind::var(), "free")});
    const auto out = auto_layout(d);
    CHECK(out.find(ElementId(1))->bbox == fixed.bbox);
    CHECK(out.find(ElementId(2))->bbox == BoundingBox{250, 70, 150, 80});
  }

  TEST_CASE("cycles are reported") {
    const FrameDiagram d({node(1, ElementKind::var(), "a"), node(2, ElementKind::var(), "b"),
                          arc(3, ElementKind::generalization(), 1, 2), arc(4, ElementKind::generalization(), 2, 1)});
    try {
      auto_layout(d);
      FAIL("expected CYCLIC_HIERARCHY");
    } catch (const DiagnosticError& e) {
      CHECK(e.code() == "CYCLIC_HIERARCHY");
      CHECK(e.diagnostics()[0].message.find("1") != std::string::npos);
    }
  }

  TEST_CASE("parameters must be positive") {
    LayoutParams p;
    p.h_gap = 0;
    CHECK_THROWS_AS(auto_layout(FrameDiagram{}, p), DiagnosticError);
    p = LayoutParams{};
    p.node_width = -1;
    try {
      auto_layout(FrameDiagram{}, p);
      FAIL("expected BAD_LAYOUT_PARAMS");
    } catch (const DiagnosticError& e) {
      CHECK(e.code() == "BAD_LAYOUT_PARAMS");
    }
  }

  TEST_CASE("custom parameters") {
    LayoutParams p{.node_width = 10, .node_height = 5, .h_gap = 2, .v_gap = 3, .origin_left = 1, .origin_top = 1};
    const auto out = auto_layout(strip_geometry(fig1()), p);
    CHECK(out.find(ElementId(1))->bbox == BoundingBox{1, 1, 10, 5});
    CHECK(out.find(ElementId(2))->bbox == BoundingBox{1, 9, 10, 5});
  }

  TEST_CASE("idempotent, deterministic and overlap free on generated diagrams") {
    std::mt19937 rng(41);
    for (int i = 0; i < 200; ++i) {
      const auto d = strip_geometry(testing::random_diagram(rng, {.max_elements = 80, .unknown_kinds = true}));
      const auto once = auto_layout(d);
      CHECK(auto_layout(once) == once);
      CHECK(auto_layout(d) == once);
      std::vector<BoundingBox> nodes;
      for (const auto& e : once.elements()) {
        REQUIRE(e.bbox.has_value());
        if (e.is_node()) nodes.push_back(*e.bbox);
        else CHECK((e.bbox->width == kArcBoxSize && e.bbox->height == kArcBoxSize));
      }
      for (std::size_t a = 0; a < nodes.size(); ++a) {
        for (std::size_t b = a + 1; b < nodes.size(); ++b) CHECK_FALSE(overlap(nodes[a], nodes[b]));
      }
    }
  }

  TEST_CASE("partially placed diagrams stay overlap free") {
    std::mt19937 rng(42);
    for (int i = 0; i < 200; ++i) {
      // Pinned boxes inside the layout grid force slot skipping.
      auto d = testing::random_diagram(rng, {.max_elements = 40, .geometry_rate = 0.0});
      std::vector<FrameElement> elems(d.elements().begin(), d.elements().end());
      for (auto& e : elems) {
        if (e.is_node() && rng() % 3 == 0) {
          e.bbox = BoundingBox{static_cast<std::int32_t>(rng() % 1000), static_cast<std::int32_t>(rng() % 1000),
                               150, 80};
        }
      }
      const FrameDiagram partial(elems);
      const auto out = auto_layout(partial);
      std::vector<std::pair<bool, BoundingBox>> placed;  // (was pinned, box)
      for (std::size_t k = 0; k < out.size(); ++k) {
        const auto& e = out.elements()[k];
        if (e.is_node()) placed.emplace_back(elems[k].bbox.has_value(), *e.bbox);
      }
      for (std::size_t a = 0; a < placed.size(); ++a) {
        for (std::size_t b = a + 1; b < placed.size(); ++b) {
          if (placed[a].first && placed[b].first) continue;  // input overlaps are not ours to fix
          CHECK_FALSE(overlap(placed[a].second, placed[b].second));
        }
      }
    }
  }
}
