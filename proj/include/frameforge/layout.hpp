#pragma once

#include <cstdint>

#include "frameforge/frame_model.hpp"

namespace frameforge {

/// Defaults reproduce the scale of the reference frame: 150x80 nodes, the
/// first row at (50, 70) and a 200 px row pitch.
struct LayoutParams {
  std::int32_t node_width = 150;
  std::int32_t node_height = 80;
  std::int32_t h_gap = 50;
  std::int32_t v_gap = 120;
  std::int32_t origin_left = 50;
  std::int32_t origin_top = 70;
};

inline constexpr std::int32_t kArcBoxSize = 16;

/// Layered layout for elements without a bounding box. Rank 0 holds nodes
/// with no outgoing g or i arc; every other node sits one rank below the
/// deepest node it generalizes to or instantiates. Within a rank, nodes go
/// left to right by id, skipping slots taken by already placed boxes. Arcs
/// get a 16x16 box centred between their endpoints' centres. Elements that
/// already have geometry are left untouched.
/// Throws DiagnosticError: CYCLIC_HIERARCHY (one cycle listed),
/// BAD_LAYOUT_PARAMS, or the validate_diagram findings.
FrameDiagram auto_layout(const FrameDiagram& d, const LayoutParams& p = {});

}  // namespace frameforge
