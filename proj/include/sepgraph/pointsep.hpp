#ifndef SEPGRAPH_POINTSEP_HPP
#define SEPGRAPH_POINTSEP_HPP

#include "sepgraph/oct.hpp"
#include "sepgraph/parity.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace sepgraph {

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& w) : std::runtime_error(w) {}
};
struct WidthCapExceeded : std::runtime_error {
    explicit WidthCapExceeded(const std::string& w) : std::runtime_error(w) {}
};

/// Minimum-cardinality geometric P-separator by increasing-size subset
/// enumeration; ties resolve to the lexicographically smallest id set.
std::vector<int> brute_force_min_separator(const Scene& sc,
                                           const std::vector<std::pair<int, int>>& P,
                                           int cap = 15);

/// Shortest walks of every exact parity label between all vertex pairs,
/// via breadth-first search on the (vertex, label) state graph.
struct WalkTable {
    struct Entry {
        int len = 0;
        std::vector<int> vertices;  // len+1 vertices
        std::vector<int> edges;     // graph edge indices
        std::vector<Label> resolved;
    };
    int width = 0;
    std::map<std::tuple<int, int, std::uint32_t>, Entry> open_walks;
    // Shortest nonempty closed walks (u, u, label), length >= 1.
    std::map<std::pair<int, std::uint32_t>, Entry> closed_walks;

    const Entry* find(int u, int v, std::uint32_t l) const;
    const Entry* find_closed_nonempty(int u, std::uint32_t l) const;
};

WalkTable shortest_labeled_walks(const LabeledMultigraph& g, int width_cap = 12);

/// Pattern multigraph for candidate enumeration: vertices are connectors,
/// edges are chains; a designated BFS spanning forest fixes the non-tree
/// edge set.
struct HStar {
    int nv = 0;
    std::vector<std::pair<int, int>> edges;  // u <= v, self-loops allowed
    std::vector<int> nontree;                // indices into edges (E_0)

    std::vector<int> compute_nontree() const;  // BFS forest, sorted edges
    bool min_degree_two() const;
    int components() const;
};

/// Isomorphism-class representatives of multigraphs with <= max_v vertices,
/// <= max_e edges, min degree 2 and at most max_nontree non-tree edges.
/// The empty multigraph is included.
std::vector<HStar> enumerate_patterns(int max_v, int max_e, int max_nontree);

/// Spec'd entry point: patterns for budget k (<= 4k vertices, <= 5k edges,
/// |E_0| < k).
std::vector<HStar> enumerate_hstar(int budget);

/// Assignment of each requested pair to a non-tree edge whose fundamental
/// cycle must separate the pair's parities.
struct RespectMap {
    std::vector<int> xi;  // per pair, an index into HStar::nontree
};

/// Minimum total walk length labeling of H* respecting xi, via the dynamic
/// program over (edge prefix, pair-parity flags). Costs come from the walk
/// table under the vertex map f_V.
struct RespectDpResult {
    std::vector<Label> labeling;  // per H* edge
    int cost = 0;                 // |V_H| - |E_H| + sum of walk lengths
};
std::optional<RespectDpResult> respect_dp(const HStar& h, const RespectMap& xi,
                                          const std::vector<int>& f_v,
                                          const WalkTable& table, int k,
                                          const std::vector<std::pair<int, int>>& P);

/// Representative family of respect maps built from finer-and-finer
/// partition sequences; complete for labelings that make H* P-good.
std::vector<RespectMap> representative_family(const HStar& h, int k,
                                              const std::vector<std::pair<int, int>>& P);

struct PointsepCaps {
    int max_p = 3;
    int max_n_section5 = 10;
    int max_k = 3;
    int brute_cap = 15;
};

/// Section-5 search over connector sets, chain skeletons and chain labels,
/// realized through the shortest labeled walk table.
std::vector<int> separate_point_pairs(const Scene& sc,
                                      const std::vector<std::pair<int, int>>& P,
                                      const PointsepCaps& caps = {},
                                      std::uint64_t route_seed = 0);

enum class GpsStrategy { Brute, Section5, Section6 };

struct GpsResult {
    bool no_separator = false;
    std::vector<int> separator;
    LabeledMultigraph induced;  // k-labeled graph induced on the separator
    Partition phi;              // parity partition of the induced graph
    std::vector<CycleCertificate> pair_witnesses;  // one per requested pair
};

GpsResult gps_solve(const Scene& sc, const std::vector<std::pair<int, int>>& P,
                    GpsStrategy strategy, const PointsepCaps& caps = {},
                    std::uint64_t route_seed = 0);

}  // namespace sepgraph

#endif
