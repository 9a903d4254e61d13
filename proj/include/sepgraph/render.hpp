#ifndef SEPGRAPH_RENDER_HPP
#define SEPGRAPH_RENDER_HPP

#include "sepgraph/arrangement.hpp"
#include "sepgraph/geom.hpp"
#include "sepgraph/labeled_graph.hpp"
#include "sepgraph/scene_io.hpp"

#include <set>
#include <string>
#include <vector>

namespace sepgraph {

struct RenderOptions {
    double stroke_width = 1.0;
    std::string obstacle_fill = "#b3c6e7";
    std::string separator_fill = "#e07a5f";
    std::string curve_color = "#4a4e69";
    std::string witness_color = "#2a9d8f";
    double margin = 2.0;
};

/// Deterministic SVG: obstacles filled, separator highlighted, reference
/// curves dashed, witness curve solid.
std::string render_svg(const Scene& sc, const std::set<int>& separator,
                       const std::vector<Polyline>& reference_curves,
                       const std::vector<Polyline>& witness_curves,
                       const RenderOptions& opts = {});

/// Debug dump of an arrangement (vertices, edges with provenance, face
/// cycles).
Json arrangement_to_json(const Arrangement& arr);

}  // namespace sepgraph

#endif
