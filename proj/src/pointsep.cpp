#include "sepgraph/pointsep.hpp"

#include "sepgraph/arrangement.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace sepgraph {

std::vector<int> brute_force_min_separator(const Scene& sc,
                                           const std::vector<std::pair<int, int>>& P,
                                           int cap) {
    const int n = static_cast<int>(sc.obstacles.size());
    if (n > cap)
        throw CapExceeded("brute force capped at " + std::to_string(cap) +
                          " obstacles");
    if (P.empty()) return {};
    SeparationTable table(sc);

    // Increasing size, lexicographic id order within a size.
    std::vector<int> subset;
    std::function<bool(int, int, int)> rec = [&](int from, int remaining,
                                                 int unused) -> bool {
        if (remaining == 0) {
            unsigned mask = 0;
            for (int v : subset) mask |= 1u << v;
            for (auto [a, b] : P)
                if (!table.separates(mask, a, b)) return false;
            return true;
        }
        for (int v = from; v <= n - remaining; ++v) {
            subset.push_back(v);
            if (rec(v + 1, remaining - 1, unused)) return true;
            subset.pop_back();
        }
        return false;
    };
    for (int size = 0; size <= n; ++size) {
        subset.clear();
        if (rec(0, size, 0)) return subset;
    }
    throw CapExceeded("no separator exists even with every obstacle kept");
}

namespace {

// Fundamental-cycle membership: delta[t][s] == 1 iff edge t lies on the
// cycle of the s-th non-tree edge.
std::vector<std::vector<char>> cycle_membership(const HStar& h) {
    const int m = static_cast<int>(h.edges.size());
    std::vector<std::vector<char>> delta(m, std::vector<char>(h.nontree.size(), 0));
    std::set<int> nontree(h.nontree.begin(), h.nontree.end());

    // BFS forest over tree edges only.
    std::vector<std::vector<std::pair<int, int>>> adj(h.nv);
    for (int e = 0; e < m; ++e) {
        if (nontree.count(e)) continue;
        auto [u, v] = h.edges[e];
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
    }
    std::vector<int> parent(h.nv, -1), parent_edge(h.nv, -1), depth(h.nv, -1);
    for (int r = 0; r < h.nv; ++r) {
        if (depth[r] != -1) continue;
        depth[r] = 0;
        std::vector<int> stack{r};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [w, e] : adj[u]) {
                if (depth[w] != -1) continue;
                depth[w] = depth[u] + 1;
                parent[w] = u;
                parent_edge[w] = e;
                stack.push_back(w);
            }
        }
    }
    for (size_t s = 0; s < h.nontree.size(); ++s) {
        int e = h.nontree[s];
        delta[e][s] = 1;
        auto [u, v] = h.edges[e];
        while (u != v) {
            if (depth[u] < depth[v]) std::swap(u, v);
            delta[parent_edge[u]][s] = 1;
            u = parent[u];
        }
    }
    return delta;
}

}  // namespace

std::optional<RespectDpResult> respect_dp(const HStar& h, const RespectMap& xi,
                                          const std::vector<int>& f_v,
                                          const WalkTable& table, int k,
                                          const std::vector<std::pair<int, int>>& P) {
    const int m = static_cast<int>(h.edges.size());
    const int p = static_cast<int>(P.size());
    const std::uint32_t PH = 1u << p;
    const std::uint32_t L = 1u << k;
    auto delta = cycle_membership(h);

    // Walk length per (edge, label); -1 when unavailable.
    std::vector<std::vector<int>> len(m, std::vector<int>(L, -1));
    for (int t = 0; t < m; ++t) {
        auto [u_s, v_s] = h.edges[t];
        int u = f_v[u_s], v = f_v[v_s];
        for (std::uint32_t l = 0; l < L; ++l) {
            const WalkTable::Entry* ent =
                u_s == v_s ? table.find_closed_nonempty(u, l) : table.find(u, v, l);
            if (ent) len[t][l] = ent->len;
        }
    }

    // phi_l per (edge, label): which pair flags flip.
    auto flags = [&](int t, std::uint32_t l) {
        std::uint32_t f = 0;
        for (int pi = 0; pi < p; ++pi) {
            if (!delta[t][static_cast<size_t>(xi.xi[pi])]) continue;
            auto [i, j] = P[pi];
            if (((l >> i) ^ (l >> j)) & 1u) f |= 1u << pi;
        }
        return f;
    };

    const int INF = 1 << 28;
    std::vector<std::vector<int>> dp(m + 1, std::vector<int>(PH, INF));
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> par(
        m + 1, std::vector<std::pair<std::uint32_t, std::uint32_t>>(PH, {0, 0}));
    dp[0][0] = 0;
    for (int t = 0; t < m; ++t) {
        for (std::uint32_t ph = 0; ph < PH; ++ph) {
            if (dp[t][ph] >= INF) continue;
            for (std::uint32_t l = 0; l < L; ++l) {
                if (len[t][l] < 0) continue;
                std::uint32_t nph = ph ^ flags(t, l);
                int nd = dp[t][ph] + len[t][l];
                if (nd < dp[t + 1][nph]) {
                    dp[t + 1][nph] = nd;
                    par[t + 1][nph] = {ph, l};
                }
            }
        }
    }
    std::uint32_t target = PH - 1;
    if (dp[m][target] >= INF) return std::nullopt;

    RespectDpResult res;
    res.labeling.resize(m);
    std::uint32_t cur = target;
    for (int t = m; t > 0; --t) {
        auto [prev, l] = par[t][cur];
        res.labeling[t - 1] = Label::constrained(k, l);
        cur = prev;
    }
    res.cost = h.nv - m + dp[m][target];
    return res;
}

namespace {

struct Candidate {
    std::vector<int> vertices;  // sorted obstacle ids
    int cost = 0;

    bool better_than(const std::optional<Candidate>& other) const {
        if (!other) return true;
        if (cost != other->cost) return cost < other->cost;
        if (vertices.size() != other->vertices.size())
            return vertices.size() < other->vertices.size();
        return vertices < other->vertices;
    }
};

// Realize a labeled pattern through the walk table; returns the realized
// edge set and distinct vertex set.
struct Realization {
    std::vector<int> vertices;
    LabeledMultigraph graph;
    bool ok = false;
};

Realization realize(const HStar& h, const std::vector<int>& f_v,
                    const std::vector<Label>& labeling, const WalkTable& table,
                    const LabeledMultigraph& g) {
    Realization out;
    out.graph.n = g.n;
    out.graph.mode = g.mode;
    out.graph.width = g.width;
    std::set<int> verts;
    for (int v : f_v) verts.insert(v);
    for (int t = 0; t < static_cast<int>(h.edges.size()); ++t) {
        auto [u_s, v_s] = h.edges[t];
        int u = f_v[u_s], v = f_v[v_s];
        const WalkTable::Entry* ent = u_s == v_s
                                          ? table.find_closed_nonempty(u, labeling[t].bits)
                                          : table.find(u, v, labeling[t].bits);
        if (!ent) return out;
        for (int w : ent->vertices) verts.insert(w);
        for (size_t i = 0; i < ent->edges.size(); ++i) {
            const auto& src = g.edges[ent->edges[i]];
            out.graph.add_edge(src.u, src.v, ent->resolved[i]);
        }
    }
    out.vertices.assign(verts.begin(), verts.end());
    out.ok = true;
    return out;
}

// Injective vertex maps V_h -> [n], lexicographic.
void for_each_injection(int nv, int n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> map(nv, -1);
    std::vector<bool> used(n, false);
    std::function<void(int)> rec = [&](int i) {
        if (i == nv) {
            fn(map);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            map[i] = v;
            rec(i + 1);
            used[v] = false;
        }
    };
    rec(0);
}

Scene with_pairs(const Scene& sc, const std::vector<std::pair<int, int>>& P) {
    Scene out = sc;
    out.pairs = P;
    return out;
}

Scene with_anchor(const Scene& sc) {
    if (sc.anchor) return sc;
    Scene out = sc;
    Rat xmax = 0, ymax = 0;
    bool first = true;
    for (const auto& ob : out.obstacles)
        for (const auto& v : ob.boundary.vertices) {
            if (first || cmp(v.x, xmax) > 0) xmax = v.x;
            if (first || cmp(v.y, ymax) > 0) ymax = v.y;
            first = false;
        }
    for (const auto& [name, p] : out.points) {
        if (first || cmp(p.x, xmax) > 0) xmax = p.x;
        if (first || cmp(p.y, ymax) > 0) ymax = p.y;
        first = false;
    }
    out.anchor = Point{xmax + 1, ymax + 1};
    return out;
}

}  // namespace

std::vector<int> separate_point_pairs(const Scene& sc,
                                      const std::vector<std::pair<int, int>>& P,
                                      const PointsepCaps& caps,
                                      std::uint64_t route_seed) {
    const int n = static_cast<int>(sc.obstacles.size());
    const int p = static_cast<int>(P.size());
    if (p > caps.max_p)
        throw CapExceeded("section-5 search capped at p <= " +
                          std::to_string(caps.max_p));
    if (n > caps.max_n_section5)
        throw CapExceeded("section-5 search capped at n <= " +
                          std::to_string(caps.max_n_section5));
    if (P.empty()) return {};

    Scene scene = with_pairs(sc, P);
    auto rc = route_reference_curves(scene, LabelMode::Pairs, route_seed);
    LabeledMultigraph g = build_labeled_graph(scene, rc);
    WalkTable table = shortest_labeled_walks(g);

    std::optional<Candidate> best;
    auto patterns = enumerate_patterns(std::min(4 * p, n), 5 * p, p);
    for (const auto& h : patterns) {
        if (h.nv == 0) continue;
        if (best && h.nv > best->cost) break;  // patterns sorted by nv
        const int m = static_cast<int>(h.edges.size());
        for_each_injection(h.nv, n, [&](const std::vector<int>& f_v) {
            // Realizable labels per chain under this vertex map.
            std::vector<std::vector<std::uint32_t>> options(m);
            for (int t = 0; t < m; ++t) {
                auto [u_s, v_s] = h.edges[t];
                for (std::uint32_t l = 0; l < (1u << p); ++l) {
                    const WalkTable::Entry* ent =
                        u_s == v_s ? table.find_closed_nonempty(f_v[u_s], l)
                                   : table.find(f_v[u_s], f_v[v_s], l);
                    if (ent) options[t].push_back(l);
                }
                if (options[t].empty()) return;
            }
            std::vector<Label> labeling(m);
            std::function<void(int)> assign = [&](int t) {
                if (t == m) {
                    Realization real = realize(h, f_v, labeling, table, g);
                    if (!real.ok) return;
                    if (!is_well_behaved(real.graph)) return;
                    Candidate cand{real.vertices,
                                   static_cast<int>(real.vertices.size())};
                    if (cand.better_than(best)) best = cand;
                    return;
                }
                for (std::uint32_t l : options[t]) {
                    labeling[t] = Label::constrained(p, l);
                    assign(t + 1);
                }
            };
            assign(0);
        });
    }
    if (!best) throw CapExceeded("no candidate found; no separator exists");
    return best->vertices;
}

namespace {

// Odd cycle in bit i xor bit j of a k-labeled graph, with k-bit resolutions
// exhibiting the parity difference.
std::optional<CycleCertificate> pair_witness(const LabeledMultigraph& g, int i,
                                             int j) {
    LabeledMultigraph xg;
    xg.n = g.n;
    xg.mode = LabelMode::ST;
    xg.width = 1;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        const auto& ed = g.edges[e];
        bool ci = ed.lab.mask >> i & 1u;
        bool cj = ed.lab.mask >> j & 1u;
        Label lab;
        if (ci && cj) {
            std::uint32_t x = ((ed.lab.bits >> i) ^ (ed.lab.bits >> j)) & 1u;
            lab = Label::constrained(1, x);
        } else {
            lab = Label{1, 0, 0};  // either parity realizable
        }
        xg.edges.push_back({ed.u, ed.v, lab});
        xg.source_edges.push_back(e);
    }
    auto cert = detect_odd_cycle(xg);
    if (!cert) return std::nullopt;

    CycleCertificate out;
    out.vertex_seq = cert->vertex_seq;
    for (size_t s = 0; s < cert->edge_seq.size(); ++s) {
        int xe = cert->edge_seq[s];
        int ge = xg.source_edges[xe];
        const auto& ed = g.edges[ge];
        std::uint32_t xbit = cert->resolved[s].bits & 1u;
        std::uint32_t res = ed.lab.bits;
        bool ci = ed.lab.mask >> i & 1u;
        bool cj = ed.lab.mask >> j & 1u;
        if (!ci || !cj) {
            std::uint32_t bit_j = cj ? (res >> j & 1u) : 0u;
            if (!cj && !ci) {
                // both free: put the parity difference on bit i
                res &= ~(1u << i);
                res |= (xbit ^ bit_j) << i;
            } else if (!ci) {
                res &= ~(1u << i);
                res |= (xbit ^ bit_j) << i;
            } else {
                std::uint32_t bit_i = res >> i & 1u;
                res &= ~(1u << j);
                res |= (xbit ^ bit_i) << j;
            }
        }
        out.edge_seq.push_back(ge);
        out.resolved.push_back(Label::constrained(g.width, res));
    }
    out.parity = parity_of(g, out);
    return out;
}

}  // namespace

GpsResult gps_solve(const Scene& sc, const std::vector<std::pair<int, int>>& P,
                    GpsStrategy strategy, const PointsepCaps& caps,
                    std::uint64_t route_seed) {
    const int n = static_cast<int>(sc.obstacles.size());
    const int k = static_cast<int>(sc.points.size());
    if (strategy != GpsStrategy::Brute && k > caps.max_k &&
        strategy == GpsStrategy::Section6)
        throw CapExceeded("section-6 search capped at k <= " +
                          std::to_string(caps.max_k));

    GpsResult res;

    // The k-labeled graph doubles as the certificate substrate for every
    // strategy.
    Scene scene = with_anchor(with_pairs(sc, P));
    auto rc = route_reference_curves(scene, LabelMode::Points, route_seed);
    LabeledMultigraph g = build_labeled_graph(scene, rc);

    if (!P.empty() && !is_P_good(g, P)) {
        res.no_separator = true;
        return res;
    }

    if (strategy == GpsStrategy::Brute) {
        res.separator = brute_force_min_separator(scene, P, caps.brute_cap);
    } else if (strategy == GpsStrategy::Section5) {
        res.separator = separate_point_pairs(scene, P, caps, route_seed);
    } else {
        WalkTable table = shortest_labeled_walks(g);
        std::optional<Candidate> best;
        if (P.empty()) best = Candidate{{}, 0};
        auto patterns = enumerate_hstar(k);
        std::map<size_t, std::vector<RespectMap>> family_cache;
        for (const auto& h : patterns) {
            if (h.nv > n) continue;
            if (P.empty() && h.nv > 0) break;
            if (best && h.nv > best->cost) break;
            if (h.nv == 0 && !P.empty()) continue;
            auto fam_it = family_cache.find(h.nontree.size());
            if (fam_it == family_cache.end()) {
                // The family depends only on |E_0|, k and P.
                fam_it = family_cache
                             .emplace(h.nontree.size(),
                                      representative_family(h, k, P))
                             .first;
            }
            const auto& family = fam_it->second;
            if (family.empty()) continue;
            for_each_injection(h.nv, n, [&](const std::vector<int>& f_v) {
                for (const auto& xi : family) {
                    auto dp = respect_dp(h, xi, f_v, table, k, P);
                    if (!dp) continue;
                    if (best && dp->cost > best->cost) continue;
                    Realization real = realize(h, f_v, dp->labeling, table, g);
                    if (!real.ok) continue;
                    if (!is_P_good(real.graph, P)) continue;  // never expected
                    Candidate cand{real.vertices, dp->cost};
                    if (cand.better_than(best)) best = cand;
                }
            });
        }
        if (!best) {
            res.no_separator = true;
            return res;
        }
        res.separator = best->vertices;
    }

    res.induced = g.induced(res.separator);
    res.phi = parity_partition(res.induced);
    for (auto [i, j] : P) {
        auto w = pair_witness(res.induced, i, j);
        if (!w)
            throw std::logic_error("separator lacks a parity witness for a pair");
        res.pair_witnesses.push_back(*w);
    }

    // Geometric post-verification of every requested pair.
    std::set<int> keep(res.separator.begin(), res.separator.end());
    for (auto [i, j] : P) {
        if (!separates_geometric(scene, keep, scene.points[i].first,
                                 scene.points[j].first))
            throw std::logic_error("separator fails the geometric oracle");
    }
    return res;
}

}  // namespace sepgraph
