#ifndef SEPGRAPH_LABELED_GRAPH_HPP
#define SEPGRAPH_LABELED_GRAPH_HPP

#include "sepgraph/arrangement.hpp"
#include "sepgraph/geom.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sepgraph {

/// Fixed-width parity bitvector with a constrained-position mask.
/// Bits outside the mask are stored as 0.
struct Label {
    int width = 0;
    std::uint32_t bits = 0;
    std::uint32_t mask = 0;  // 1 = constrained

    static std::uint32_t full(int w) {
        return w >= 32 ? ~0u : ((1u << w) - 1u);
    }
    static Label constrained(int w, std::uint32_t b) {
        return Label{w, b & full(w), full(w)};
    }
    bool fully_constrained() const { return mask == full(width); }
    bool operator==(const Label& o) const {
        return width == o.width && bits == o.bits && mask == o.mask;
    }
    bool operator<(const Label& o) const {
        if (bits != o.bits) return bits < o.bits;
        return mask < o.mask;
    }
    /// Rendered as a bit string, '.' for unconstrained positions (bit 0 first).
    std::string str() const;
};

enum class LabelMode { ST, Pairs, Points };

struct LabeledEdge {
    int u = 0;
    int v = 0;  // u <= v
    Label lab;
};

/// Multigraph on obstacle ids with parity-labeled edges and self-loops.
struct LabeledMultigraph {
    int n = 0;
    LabelMode mode = LabelMode::ST;
    int width = 1;
    std::vector<LabeledEdge> edges;
    // When this graph is an expansion or projection image, the originating
    // edge index per edge; empty otherwise.
    std::vector<int> source_edges;

    /// Dedup key is (u, v, bits, mask).
    void add_edge(int u, int v, Label lab);

    LabeledMultigraph induced(const std::vector<int>& keep) const;
    LabeledMultigraph induced_mask(unsigned keep_mask) const;

    /// Expand every edge into fully-constrained variants (both parities per
    /// unconstrained bit), recording source_edges. Width must be small.
    LabeledMultigraph expand_masks() const;
};

/// Image of g under bit i: 1-bit graph, unconstrained bits expand to both
/// parities, duplicate (u, v, bit) edges collapsed.
LabeledMultigraph project(const LabeledMultigraph& g, int i);

struct ReferenceCurveSet {
    LabelMode mode = LabelMode::ST;
    std::vector<Polyline> curves;
    // Endpoint point-indices per curve: (from, to); to == -1 means anchor.
    std::vector<std::pair<int, int>> endpoints;
};

struct RoutingFailed : std::runtime_error {
    explicit RoutingFailed(const std::string& w) : std::runtime_error(w) {}
};

/// Deterministic reference points: lexicographically smallest polygon vertex
/// displaced inward along the corner direction, re-validated to be interior
/// and off every boundary.
std::vector<Point> reference_points(const Scene& sc);

/// Route transverse reference curves through the convex cells of a slab
/// decomposition of the boundary arrangement. The seed perturbs tie-breaking
/// only; any seed yields a valid curve set.
ReferenceCurveSet route_reference_curves(const Scene& sc, LabelMode mode,
                                         std::uint64_t seed = 0);

/// Violations of the ReferenceCurveSet invariants (transversality and
/// avoidance); empty for every routed curve set.
std::vector<Violation> validate_curves(const Scene& sc,
                                       const ReferenceCurveSet& rc);

/// The labeled intersection multigraph: self-loops for contained points,
/// and one edge per realizable crossing-parity class per intersecting
/// obstacle pair (breadth-first search over (face, partial label) states).
LabeledMultigraph build_labeled_graph(const Scene& sc,
                                      const ReferenceCurveSet& rc);

/// DOT export; vertices are obstacle ids, labels use '.' for free bits.
std::string to_dot(const LabeledMultigraph& g);

}  // namespace sepgraph

#endif
