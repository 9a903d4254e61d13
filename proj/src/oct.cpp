#include "sepgraph/oct.hpp"

#include "sepgraph/routing.hpp"
#include "sepgraph/simplex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace sepgraph {

std::vector<std::vector<int>> SubdividedGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n_total);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

SubdividedGraph subdivide_zero_edges(const LabeledMultigraph& g) {
    LabeledMultigraph x = g.expand_masks();
    SubdividedGraph out;
    out.n_original = g.n;
    out.n_total = g.n;
    std::set<int> forced;
    std::set<std::pair<int, int>> ones;   // direct edges
    std::set<std::pair<int, int>> zeros;  // subdivided edges
    for (int e = 0; e < static_cast<int>(x.edges.size()); ++e) {
        const auto& ed = x.edges[e];
        if (ed.u == ed.v) {
            if (ed.lab.bits & 1u) forced.insert(ed.u);
            continue;  // even self-loops carry no odd cycle
        }
        if (ed.lab.bits & 1u)
            ones.insert({ed.u, ed.v});
        else
            zeros.insert({ed.u, ed.v});
    }
    for (auto [u, v] : ones) out.edges.push_back({u, v});
    for (auto [u, v] : zeros) {
        int w = out.n_total++;
        out.synth_source_edge.push_back(-1);  // filled below
        out.edges.push_back({u, w});
        out.edges.push_back({w, v});
    }
    // Back-map: the k-th subdivided pair corresponds to the k-th zero edge.
    {
        int w = out.n_original;
        for (auto [u, v] : zeros) {
            for (int e = 0; e < static_cast<int>(x.edges.size()); ++e) {
                const auto& ed = x.edges[e];
                if (ed.u == u && ed.v == v && !(ed.lab.bits & 1u)) {
                    out.synth_source_edge[w - out.n_original] =
                        x.source_edges.empty() ? e : x.source_edges[e];
                    break;
                }
            }
            ++w;
        }
    }
    out.forced.assign(forced.begin(), forced.end());
    return out;
}

namespace {

// Proper 2-coloring of g restricted to `alive`; empty if an odd cycle exists.
std::optional<std::vector<int>> two_color(const std::vector<std::vector<int>>& adj,
                                          const std::vector<bool>& alive) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> color(n, -1);
    for (int s = 0; s < n; ++s) {
        if (!alive[s] || color[s] != -1) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                if (!alive[v]) continue;
                if (color[v] == -1) {
                    color[v] = color[u] ^ 1;
                    q.push(v);
                } else if (color[v] == color[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

// Minimum vertex cut separating sources from sinks, all vertices unit
// capacity and deletable. Node-split max-flow with BFS augmentation.
std::optional<std::vector<int>> min_vertex_cut(
    const std::vector<std::vector<int>>& adj, const std::vector<bool>& alive,
    const std::vector<bool>& is_source, const std::vector<bool>& is_sink,
    int limit) {
    const int n = static_cast<int>(adj.size());
    // Nodes: 2*v (in), 2*v+1 (out); arcs via adjacency matrix of capacities.
    const int S = 2 * n, T = 2 * n + 1, N = 2 * n + 2;
    std::map<std::pair<int, int>, int> cap;
    auto add = [&](int a, int b, int c) { cap[{a, b}] += c; };
    const int INF = 1 << 20;
    for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        add(2 * v, 2 * v + 1, 1);
        if (is_source[v]) add(S, 2 * v, INF);
        if (is_sink[v]) add(2 * v + 1, T, INF);
    }
    for (int u = 0; u < n; ++u) {
        if (!alive[u]) continue;
        for (int v : adj[u]) {
            if (!alive[v]) continue;
            add(2 * u + 1, 2 * v, INF);
        }
    }
    // A vertex that is both source and sink cannot be separated.
    for (int v = 0; v < n; ++v)
        if (alive[v] && is_source[v] && is_sink[v]) return std::nullopt;

    int flow = 0;
    while (flow <= limit) {
        std::vector<int> prev(N, -1);
        std::queue<int> q;
        q.push(S);
        prev[S] = S;
        while (!q.empty() && prev[T] == -1) {
            int u = q.front();
            q.pop();
            for (auto& [key, c] : cap) {
                if (key.first != u || c <= 0) continue;
                if (prev[key.second] != -1) continue;
                prev[key.second] = u;
                q.push(key.second);
            }
        }
        if (prev[T] == -1) break;
        for (int v = T; v != S; v = prev[v]) {
            cap[{prev[v], v}] -= 1;
            cap[{v, prev[v]}] += 1;
        }
        ++flow;
    }
    if (flow > limit) return std::nullopt;
    // Cut vertices: in-node reachable, out-node not.
    std::vector<bool> reach(N, false);
    std::queue<int> q;
    q.push(S);
    reach[S] = true;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto& [key, c] : cap) {
            if (key.first != u || c <= 0 || reach[key.second]) continue;
            reach[key.second] = true;
            q.push(key.second);
        }
    }
    std::vector<int> cut;
    for (int v = 0; v < n; ++v)
        if (alive[v] && reach[2 * v] && !reach[2 * v + 1]) cut.push_back(v);
    return cut;
}

struct IcGraph {
    std::vector<std::vector<int>> adj;
    int n = 0;
};

// Compress an odd cycle transversal X (|X| = q+1) of the graph induced on
// `active` to one of size <= q, or fail.
std::optional<std::vector<int>> compress(const IcGraph& g,
                                         const std::vector<bool>& active,
                                         const std::vector<int>& X, int q) {
    const int m = static_cast<int>(X.size());
    std::optional<std::vector<int>> best;
    // Assignments: 0 = delete, 1 = left, 2 = right.
    std::vector<int> assign(m, 0);
    while (true) {
        // Evaluate the current assignment.
        std::vector<int> D;
        std::vector<int> side(g.n, -1);
        bool valid = true;
        for (int i = 0; i < m; ++i) {
            if (assign[i] == 0)
                D.push_back(X[i]);
            else
                side[X[i]] = assign[i] - 1;
        }
        for (int i = 0; i < m && valid; ++i) {
            if (assign[i] == 0) continue;
            for (int v : g.adj[X[i]]) {
                if (side[v] != -1 && side[v] == side[X[i]] && v != X[i]) valid = false;
                if (v == X[i]) valid = false;  // self-loop on a kept vertex
            }
        }
        if (valid && static_cast<int>(D.size()) <= q) {
            std::vector<bool> alive(g.n, false);
            for (int v = 0; v < g.n; ++v) alive[v] = active[v];
            for (int x : X) alive[x] = false;
            for (int d : D) alive[d] = false;
            auto coloring = two_color(g.adj, alive);
            if (coloring) {
                // Anchors: a surviving vertex adjacent to a side-0 vertex
                // must take final color 1 and vice versa.
                std::vector<bool> src(g.n, false), snk(g.n, false);
                bool forced_fail = false;
                std::vector<int> forced_del;
                std::vector<bool> need0(g.n, false), need1(g.n, false);
                for (int i = 0; i < m; ++i) {
                    if (assign[i] == 0) continue;
                    int s = assign[i] - 1;
                    for (int v : g.adj[X[i]]) {
                        if (!alive[v]) continue;
                        if (s == 0)
                            need1[v] = true;
                        else
                            need0[v] = true;
                    }
                }
                std::vector<bool> alive2 = alive;
                for (int v = 0; v < g.n; ++v) {
                    if (!alive[v]) continue;
                    bool a0 = false, a1 = false;
                    // Required agreement value a(v) = chi(v) xor c(v).
                    if (need0[v]) (((*coloring)[v] ^ 0) ? a1 : a0) = true;
                    if (need1[v]) (((*coloring)[v] ^ 1) ? a1 : a0) = true;
                    if (a0 && a1) {
                        forced_del.push_back(v);
                        alive2[v] = false;
                    } else if (a0) {
                        src[v] = true;
                    } else if (a1) {
                        snk[v] = true;
                    }
                }
                int budget = q - static_cast<int>(D.size()) -
                             static_cast<int>(forced_del.size());
                if (budget >= 0 && !forced_fail) {
                    auto cut = min_vertex_cut(g.adj, alive2, src, snk, budget);
                    if (cut) {
                        std::vector<int> Z = D;
                        Z.insert(Z.end(), forced_del.begin(), forced_del.end());
                        Z.insert(Z.end(), cut->begin(), cut->end());
                        std::sort(Z.begin(), Z.end());
                        if (!best || Z.size() < best->size()) best = Z;
                    }
                }
            }
        }
        // Next assignment.
        int pos = m - 1;
        while (pos >= 0 && assign[pos] == 2) assign[pos--] = 0;
        if (pos < 0) break;
        ++assign[pos];
    }
    return best;
}

// Decision: odd cycle transversal of size <= q for the graph induced on the
// first `upto` vertices (iterative compression).
std::optional<std::vector<int>> oct_decide(const IcGraph& g, int q) {
    std::vector<bool> active(g.n, false);
    std::vector<int> X;
    for (int i = 0; i < g.n; ++i) {
        active[i] = true;
        X.push_back(i);
        if (static_cast<int>(X.size()) <= q) continue;
        auto smaller = compress(g, active, X, q);
        if (!smaller) return std::nullopt;
        X = *smaller;
    }
    std::sort(X.begin(), X.end());
    return X;
}

}  // namespace

std::optional<std::vector<int>> oct_exact(const LabeledMultigraph& g, int q) {
    SubdividedGraph sg = subdivide_zero_edges(g);
    if (static_cast<int>(sg.forced.size()) > q) return std::nullopt;

    IcGraph ic;
    ic.n = sg.n_total;
    ic.adj.assign(ic.n, {});
    std::set<int> forced(sg.forced.begin(), sg.forced.end());
    for (auto [u, v] : sg.edges) {
        if (forced.count(u) || forced.count(v)) continue;
        ic.adj[u].push_back(v);
        ic.adj[v].push_back(u);
    }
    int budget = q - static_cast<int>(sg.forced.size());

    std::optional<std::vector<int>> found;
    for (int b = 0; b <= budget; ++b) {
        found = oct_decide(ic, b);
        if (found) break;
    }
    if (!found) return std::nullopt;

    // Synthetic vertices stand for 0-labeled edges; replace any picked one
    // by its smaller original endpoint.
    std::set<int> result(sg.forced.begin(), sg.forced.end());
    for (int v : *found) {
        if (!sg.is_synthetic(v)) {
            result.insert(v);
            continue;
        }
        int src = sg.synth_source_edge[v - sg.n_original];
        result.insert(std::min(g.edges[src].u, g.edges[src].v));
    }
    std::vector<int> out(result.begin(), result.end());

    // Feasibility is cheap to confirm on the labeled graph.
    std::vector<int> survivors;
    for (int v = 0; v < g.n; ++v)
        if (!result.count(v)) survivors.push_back(v);
    if (detect_odd_cycle(g.induced(survivors)))
        throw std::logic_error("oct_exact produced an infeasible transversal");
    if (static_cast<int>(out.size()) > q) return std::nullopt;
    return out;
}

std::vector<int> oct_minimum(const LabeledMultigraph& g) {
    for (int q = 0; q <= g.n; ++q) {
        auto res = oct_exact(g, q);
        if (res) return *res;
    }
    throw std::logic_error("oct_minimum: full vertex set must be feasible");
}

FractionalSolution lp_hit_odd_cycles(const LabeledMultigraph& g,
                                     const LpOptions& opts) {
    const int n = g.n;
    std::vector<std::vector<int>> cuts;

    auto build_and_solve_rat = [&]() -> SimplexResult<Rat> {
        // Equalities: cut rows  sum x - s = 1; bound rows  x + t = 1.
        int vars = n + static_cast<int>(cuts.size()) + n;
        std::vector<std::vector<Rat>> a;
        std::vector<Rat> b;
        std::vector<Rat> cost(vars, Rat(0));
        for (int i = 0; i < n; ++i) cost[i] = 1;
        for (size_t c = 0; c < cuts.size(); ++c) {
            std::vector<Rat> row(vars, Rat(0));
            for (int v : cuts[c]) row[v] = 1;
            row[n + c] = -1;
            a.push_back(row);
            b.push_back(Rat(1));
        }
        for (int i = 0; i < n; ++i) {
            std::vector<Rat> row(vars, Rat(0));
            row[i] = 1;
            row[n + cuts.size() + i] = 1;
            a.push_back(row);
            b.push_back(Rat(1));
        }
        return simplex_solve<Rat>(a, b, cost);
    };
    auto build_and_solve_flt = [&]() -> SimplexResult<double> {
        int vars = n + static_cast<int>(cuts.size()) + n;
        std::vector<std::vector<double>> a;
        std::vector<double> b;
        std::vector<double> cost(vars, 0.0);
        for (int i = 0; i < n; ++i) cost[i] = 1.0;
        for (size_t c = 0; c < cuts.size(); ++c) {
            std::vector<double> row(vars, 0.0);
            for (int v : cuts[c]) row[v] = 1.0;
            row[n + c] = -1.0;
            a.push_back(row);
            b.push_back(1.0);
        }
        for (int i = 0; i < n; ++i) {
            std::vector<double> row(vars, 0.0);
            row[i] = 1.0;
            row[n + cuts.size() + i] = 1.0;
            a.push_back(row);
            b.push_back(1.0);
        }
        return simplex_solve<double>(a, b, cost);
    };

    Rat tol_rat = 0;
    if (opts.arith == LpArith::Float) {
        mpq_class t(opts.tol);
        t.canonicalize();
        tol_rat = t;
    }

    std::vector<Rat> x(n, Rat(0));
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        if (opts.arith == LpArith::Rational) {
            auto sol = build_and_solve_rat();
            if (!sol.feasible) throw std::logic_error("master LP infeasible");
            for (int i = 0; i < n; ++i) x[i] = sol.x[i];
        } else {
            auto sol = build_and_solve_flt();
            if (!sol.feasible) throw std::logic_error("master LP infeasible");
            for (int i = 0; i < n; ++i) {
                mpq_class xi(std::max(0.0, std::min(1.0, sol.x[i])));
                xi.canonicalize();
                x[i] = xi;
            }
        }
        auto worst = shortest_odd_cycle(g, x);
        if (!worst || cmp(worst->second, Rat(1) - tol_rat) >= 0) {
            // Certified feasible. In float mode re-solve the final master
            // exactly so the reported solution is rational-feasible.
            if (opts.arith == LpArith::Float) {
                auto sol = build_and_solve_rat();
                if (sol.feasible) {
                    for (int i = 0; i < n; ++i) x[i] = sol.x[i];
                    auto recheck = shortest_odd_cycle(g, x);
                    if (recheck && cmp(recheck->second, Rat(1) - tol_rat) < 0) {
                        // Keep cutting from the exact point.
                        std::vector<int> cut(recheck->first.vertex_seq.begin(),
                                             recheck->first.vertex_seq.end() - 1);
                        std::sort(cut.begin(), cut.end());
                        cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
                        cuts.push_back(cut);
                        continue;
                    }
                }
            }
            FractionalSolution out;
            out.x = x;
            out.objective = 0;
            for (const auto& xi : x) out.objective += xi;
            out.cuts_used = static_cast<int>(cuts.size());
            return out;
        }
        std::vector<int> cut(worst->first.vertex_seq.begin(),
                             worst->first.vertex_seq.end() - 1);
        std::sort(cut.begin(), cut.end());
        cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
        // A repeated cut cannot happen while the oracle reports violation.
        cuts.push_back(cut);
    }
    throw IterationLimit("cutting-plane loop exceeded " +
                         std::to_string(opts.max_iterations) +
                         " iterations; cuts=" + std::to_string(cuts.size()));
}

std::vector<int> low_diameter_decomposition(const SimpleGraph& g,
                                            const std::vector<Rat>& d,
                                            const Rat& delta) {
    std::vector<std::vector<int>> adj(g.n);
    for (auto [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> state(g.n, 0);  // 0 uncovered, 1 clustered, 2 cut
    std::vector<int> X;
    // A vertex too heavy for any ball goes straight into the cut set.
    for (int v = 0; v < g.n; ++v) {
        if (cmp(d[v], delta) >= 0) {
            state[v] = 2;
            X.push_back(v);
        }
    }
    for (int c = 0; c < g.n; ++c) {
        if (state[c] != 0) continue;
        // Dijkstra from c over uncovered vertices, d(e) = d(u) + d(v).
        std::map<int, Rat> dist;
        dist[c] = 0;
        std::set<int> done;
        while (true) {
            int cur = -1;
            for (auto& [v, dv] : dist)
                if (!done.count(v) && (cur == -1 || cmp(dv, dist[cur]) < 0)) cur = v;
            if (cur == -1) break;
            done.insert(cur);
            for (int nb : adj[cur]) {
                if (state[nb] != 0) continue;
                Rat nd = dist[cur] + d[cur] + d[nb];
                auto it = dist.find(nb);
                if (it == dist.end() || cmp(nd, it->second) < 0) dist[nb] = nd;
            }
        }
        std::vector<int> ball;
        for (auto& [v, dv] : dist)
            if (cmp(dv, delta / 2 - d[v] / 2) < 0) ball.push_back(v);
        // Shell: uncovered neighbors of the ball outside it.
        std::set<int> in_ball(ball.begin(), ball.end());
        std::set<int> shell;
        for (int v : ball)
            for (int nb : adj[v])
                if (state[nb] == 0 && !in_ball.count(nb)) shell.insert(nb);
        for (int v : ball) state[v] = 1;
        for (int v : shell) {
            state[v] = 2;
            X.push_back(v);
        }
    }
    std::sort(X.begin(), X.end());
    return X;
}

std::vector<int> hit_odd_cycles_round(const LabeledMultigraph& g,
                                      const FractionalSolution& x) {
    LabeledMultigraph ex = g.expand_masks();
    std::set<int> chosen;
    for (const auto& ed : ex.edges)
        if (ed.u == ed.v && (ed.lab.bits & 1u)) chosen.insert(ed.u);

    SimpleGraph sg;
    sg.n = g.n;
    std::set<std::pair<int, int>> es;
    for (const auto& ed : ex.edges) {
        if (ed.u == ed.v) continue;
        if (chosen.count(ed.u) || chosen.count(ed.v)) continue;
        es.insert({ed.u, ed.v});
    }
    sg.edges.assign(es.begin(), es.end());
    std::vector<Rat> d = x.x;
    for (int v : chosen) d[v] = 0;  // removed before carving

    std::vector<int> cut = low_diameter_decomposition(sg, d, Rat(1, 2));
    for (int v : cut) chosen.insert(v);

    std::vector<int> survivors;
    for (int v = 0; v < g.n; ++v)
        if (!chosen.count(v)) survivors.push_back(v);
    if (detect_odd_cycle(g.induced(survivors)))
        throw RoundingInfeasible("decomposition left an odd labeled cycle");
    return std::vector<int>(chosen.begin(), chosen.end());
}

namespace {

bool witness_avoids(const Scene& sc, const std::vector<int>& remaining,
                    const Polyline& witness) {
    for (const auto& p : witness.vertices)
        for (int id : remaining)
            if (point_in_region(p, sc.obstacles[id]) != RegionSide::Outside)
                return false;
    for (size_t i = 0; i + 1 < witness.vertices.size(); ++i) {
        Seg leg{witness.vertices[i], witness.vertices[i + 1]};
        for (int id : remaining) {
            const auto& bd = sc.obstacles[id].boundary.vertices;
            for (size_t e = 0; e + 1 < bd.size(); ++e) {
                auto res = segment_intersection(leg, Seg{bd[e], bd[e + 1]});
                if (!std::holds_alternative<IntersectEmpty>(res)) return false;
            }
        }
    }
    return true;
}

}  // namespace

std::optional<RemovalResult> obstacle_removal(const Scene& sc,
                                              const RemovalOptions& opts) {
    auto rc = route_reference_curves(sc, LabelMode::ST, opts.route_seed);
    LabeledMultigraph g = build_labeled_graph(sc, rc);

    RemovalResult res;
    if (opts.exact) {
        auto X = oct_exact(g, opts.budget);
        if (!X) return std::nullopt;
        res.deleted = *X;
    } else {
        FractionalSolution lp = lp_hit_odd_cycles(g, opts.lp);
        res.lp_objective = lp.objective;
        res.deleted = hit_odd_cycles_round(g, lp);
        if (opts.report_ratio) {
            auto opt = oct_minimum(g);
            if (!opt.empty())
                res.ratio = Rat(static_cast<long>(res.deleted.size()),
                                static_cast<long>(opt.size()));
            else if (res.deleted.empty())
                res.ratio = Rat(1);
        }
    }

    std::vector<int> remaining;
    std::set<int> del(res.deleted.begin(), res.deleted.end());
    for (int v = 0; v < g.n; ++v)
        if (!del.count(v)) remaining.push_back(v);

    int si = sc.point_index("s"), ti = sc.point_index("t");
    std::vector<Point> forbidden;
    for (const auto& [name, p] : sc.points) forbidden.push_back(p);
    if (sc.anchor) forbidden.push_back(*sc.anchor);
    CellRouter router(sc, remaining, forbidden, opts.route_seed);
    res.witness = router.route(sc.point_at(si), sc.point_at(ti), true);

    std::set<int> keep(remaining.begin(), remaining.end());
    if (separates_geometric(sc, keep, "s", "t"))
        throw std::logic_error("removal left s and t separated");
    if (!witness_avoids(sc, remaining, res.witness))
        throw std::logic_error("witness curve touches a remaining obstacle");
    return res;
}

}  // namespace sepgraph
