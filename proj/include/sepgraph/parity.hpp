#ifndef SEPGRAPH_PARITY_HPP
#define SEPGRAPH_PARITY_HPP

#include "sepgraph/labeled_graph.hpp"
#include "sepgraph/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sepgraph {

/// Partition of [k] in canonical form: block ids dense, numbered by first
/// occurrence.
struct Partition {
    int ground = 0;
    std::vector<int> block_of;

    static Partition single_block(int k);
    static Partition discrete(int k);
    static Partition from_blocks(int k, const std::vector<std::vector<int>>& blocks);

    int num_blocks() const;
    bool same_block(int i, int j) const { return block_of[i] == block_of[j]; }
    void canonicalize();
    bool operator==(const Partition& o) const {
        return ground == o.ground && block_of == o.block_of;
    }
    bool operator<(const Partition& o) const { return block_of < o.block_of; }

    /// True iff this is coarser than (or equal to) fine: every block of fine
    /// lies inside one block of this.
    bool coarsens(const Partition& fine) const;
};

struct SizeMismatch : std::runtime_error {
    explicit SizeMismatch(const std::string& w) : std::runtime_error(w) {}
};
struct EdgeNotInGraph : std::runtime_error {
    explicit EdgeNotInGraph(const std::string& w) : std::runtime_error(w) {}
};

Partition partition_meet(const Partition& a, const Partition& b);
/// Meet of a list; the empty meet is the single-block partition.
Partition partition_meet(int ground, const std::vector<Partition>& ps);

/// Closed walk in a labeled multigraph with masked bits resolved per edge.
struct CycleCertificate {
    std::vector<int> vertex_seq;        // v0, v1, ..., v0 (length r+1)
    std::vector<int> edge_seq;          // indices into the graph's edge list
    std::vector<Label> resolved;        // fully-constrained label per edge
    Label parity;
};

/// XOR of the certificate's resolved labels; validates edges against g.
Label parity_of(const LabeledMultigraph& g, const CycleCertificate& walk);

/// Two-block partition {odd bits, even bits} of the cycle's parity.
Partition partition_of_cycle(const LabeledMultigraph& g, const CycleCertificate& cyc);

/// Spanning-forest odd-cycle detection on a 1-bit graph; a certificate is
/// returned iff some cycle has odd label sum.
std::optional<CycleCertificate> detect_odd_cycle(const LabeledMultigraph& g);

/// Minimum vertex-weight odd-labeled cycle via the parity-doubled graph;
/// each cycle vertex is counted once. Deterministic tie-breaking.
std::optional<std::pair<CycleCertificate, Rat>> shortest_odd_cycle(
    const LabeledMultigraph& g, const std::vector<Rat>& vertex_weights);

/// Parity partition of a k-bit graph from the fundamental cycles of a
/// breadth-first spanning forest (masked edges contribute both parities).
Partition parity_partition(const LabeledMultigraph& g);

bool is_P_good(const LabeledMultigraph& g,
               const std::vector<std::pair<int, int>>& pairs);

/// Every per-bit projection of the p-bit graph contains an odd-labeled cycle.
bool is_well_behaved(const LabeledMultigraph& g);

/// Inclusion-minimal index set whose meet equals the meet of all inputs;
/// its size is strictly below the ground-set size.
std::vector<int> minimal_generating_subset(int ground,
                                           const std::vector<Partition>& ps);

/// All partitions coarser than phi with exactly |phi| - d blocks.
std::vector<Partition> enumerate_coarsenings(const Partition& phi, int d);

}  // namespace sepgraph

#endif
