#ifndef SEPGRAPH_OCT_HPP
#define SEPGRAPH_OCT_HPP

#include "sepgraph/parity.hpp"

#include <optional>
#include <vector>

namespace sepgraph {

/// Simple unlabeled graph whose odd cycles correspond one-to-one with
/// odd-labeled cycles of the source multigraph: every 0-labeled edge is a
/// path of length 2 through a synthetic node.
struct SubdividedGraph {
    int n_original = 0;
    int n_total = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> synth_source_edge;  // per synthetic node, source edge index
    std::vector<int> forced;             // vertices with a 1-labeled self-loop

    bool is_synthetic(int v) const { return v >= n_original; }
    std::vector<std::vector<int>> adjacency() const;
};

SubdividedGraph subdivide_zero_edges(const LabeledMultigraph& g);

/// Minimum odd cycle transversal over original vertices only, if one of
/// size <= q exists. Synthetic subdivision vertices are never selected.
std::optional<std::vector<int>> oct_exact(const LabeledMultigraph& g, int q);

/// Unbudgeted minimum (always exists; the full vertex set is feasible).
std::vector<int> oct_minimum(const LabeledMultigraph& g);

struct FractionalSolution {
    std::vector<Rat> x;
    Rat objective = 0;
    int cuts_used = 0;
};

enum class LpArith { Rational, Float };

struct IterationLimit : std::runtime_error {
    explicit IterationLimit(const std::string& w) : std::runtime_error(w) {}
};
struct RoundingInfeasible : std::runtime_error {
    explicit RoundingInfeasible(const std::string& w) : std::runtime_error(w) {}
};

struct LpOptions {
    LpArith arith = LpArith::Rational;
    double tol = 1e-9;  // used by the float path only
    int max_iterations = 10000;
};

/// Cutting-plane solution of the odd-cycle covering LP; the separation
/// oracle is the minimum-weight odd cycle. The returned solution is
/// certified feasible (final oracle weight >= 1 - tol).
FractionalSolution lp_hit_odd_cycles(const LabeledMultigraph& g,
                                     const LpOptions& opts = {});

struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

/// Deterministic ball carving: components of g minus the returned cut set
/// have d-diameter <= delta, where d(e) = d(u) + d(v).
std::vector<int> low_diameter_decomposition(const SimpleGraph& g,
                                            const std::vector<Rat>& d,
                                            const Rat& delta);

/// LP rounding: pre-select 1-labeled self-loop vertices, carve the rest at
/// diameter 1/2, and post-verify that no odd-labeled cycle survives.
std::vector<int> hit_odd_cycles_round(const LabeledMultigraph& g,
                                      const FractionalSolution& x);

struct RemovalResult {
    std::vector<int> deleted;
    Polyline witness;
    std::optional<Rat> lp_objective;
    std::optional<Rat> ratio;  // |deleted| / OPT when measured
};

struct RemovalOptions {
    bool exact = true;
    int budget = 0;
    LpOptions lp;
    bool report_ratio = false;
    std::uint64_t route_seed = 0;
};

/// Obstacle removal for an (s, t) scene; nullopt means Infeasible(q) in
/// exact mode. The witness curve is validated against the geometric oracle.
std::optional<RemovalResult> obstacle_removal(const Scene& sc,
                                              const RemovalOptions& opts);

}  // namespace sepgraph

#endif
