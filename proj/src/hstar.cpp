#include "sepgraph/pointsep.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace sepgraph {

std::vector<int> HStar::compute_nontree() const {
    std::vector<std::vector<std::pair<int, int>>> adj(nv);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        auto [u, v] = edges[e];
        if (u == v) continue;
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
    }
    std::vector<bool> seen(nv, false);
    std::vector<bool> tree(edges.size(), false);
    for (int r = 0; r < nv; ++r) {
        if (seen[r]) continue;
        seen[r] = true;
        std::queue<int> q;
        q.push(r);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [w, e] : adj[u]) {
                if (seen[w]) continue;
                seen[w] = true;
                tree[e] = true;
                q.push(w);
            }
        }
    }
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        if (!tree[e]) out.push_back(e);
    return out;
}

bool HStar::min_degree_two() const {
    std::vector<int> deg(nv, 0);
    for (auto [u, v] : edges) {
        deg[u] += 1;
        deg[v] += 1;  // self-loops count twice
    }
    for (int d : deg)
        if (d < 2) return false;
    return true;
}

int HStar::components() const {
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [u, v] : edges) parent[find(u)] = find(v);
    std::set<int> roots;
    for (int v = 0; v < nv; ++v) roots.insert(find(v));
    return static_cast<int>(roots.size());
}

namespace {

// One connected pattern: a base multigraph (min degree 3, or the lone-loop
// vertex) with a subdivision count per base edge.
struct Component {
    int base_nv = 0;
    std::vector<std::pair<int, int>> base_edges;
    std::vector<int> chains;  // chain length per base edge (= subdivisions+1)

    int vertices() const {
        int v = base_nv;
        for (int c : chains) v += c - 1;
        return v;
    }
    int edge_count() const {
        int e = 0;
        for (int c : chains) e += c;
        return e;
    }
    int nontree() const { return edge_count() - vertices() + 1; }

    // Canonical code modulo base automorphisms and parallel-edge swaps.
    std::vector<int> code() const {
        std::vector<int> perm(base_nv);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> best;
        do {
            // Relabel edges, sort (pair, chain) with chains grouped.
            std::vector<std::pair<std::pair<int, int>, int>> rel;
            for (size_t e = 0; e < base_edges.size(); ++e) {
                int u = perm[base_edges[e].first], v = perm[base_edges[e].second];
                if (u > v) std::swap(u, v);
                rel.push_back({{u, v}, chains[e]});
            }
            std::sort(rel.begin(), rel.end());
            std::vector<int> code;
            code.push_back(base_nv);
            std::vector<std::pair<int, int>> shape;
            for (auto& [pr, c] : rel) shape.push_back(pr);
            // Only permutations preserving the edge multiset count.
            std::vector<std::pair<int, int>> orig_shape;
            for (auto& [u, v] : base_edges) {
                int a = u, b = v;
                if (a > b) std::swap(a, b);
                orig_shape.push_back({a, b});
            }
            std::sort(orig_shape.begin(), orig_shape.end());
            if (shape != orig_shape) continue;
            for (auto& [pr, c] : rel) {
                code.push_back(pr.first);
                code.push_back(pr.second);
                code.push_back(c);
            }
            if (best.empty() || code < best) best = code;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    HStar realize() const {
        HStar h;
        h.nv = base_nv;
        for (size_t e = 0; e < base_edges.size(); ++e) {
            auto [u, v] = base_edges[e];
            int prev = u;
            for (int step = 1; step < chains[e]; ++step) {
                int mid = h.nv++;
                h.edges.push_back({std::min(prev, mid), std::max(prev, mid)});
                prev = mid;
            }
            h.edges.push_back({std::min(prev, v), std::max(prev, v)});
        }
        std::sort(h.edges.begin(), h.edges.end());
        h.nontree = h.compute_nontree();
        return h;
    }
};

// Base multigraphs: min degree 3 on up to `max_hubs` vertices, connected,
// with e - v + 1 <= max_nontree; plus the lone-loop vertex.
std::vector<std::pair<int, std::vector<std::pair<int, int>>>> base_graphs(
    int max_nontree) {
    std::vector<std::pair<int, std::vector<std::pair<int, int>>>> out;
    out.push_back({1, {{0, 0}}});  // pure cycle base
    if (max_nontree < 2) return out;

    int max_hubs = 2 * (max_nontree - 1);
    std::set<std::vector<int>> seen;
    for (int h = 1; h <= max_hubs; ++h) {
        // Pair types over h vertices, loops included.
        std::vector<std::pair<int, int>> types;
        for (int u = 0; u < h; ++u)
            for (int v = u; v < h; ++v) types.push_back({u, v});
        int max_e = h - 1 + max_nontree;
        // Multisets of edges of size up to max_e.
        std::vector<int> pick(types.size(), 0);
        std::function<void(size_t, int)> rec = [&](size_t t, int total) {
            if (total > max_e) return;
            if (t == types.size()) {
                if (total == 0) return;
                std::vector<std::pair<int, int>> edges;
                std::vector<int> deg(h, 0);
                for (size_t i = 0; i < types.size(); ++i)
                    for (int c = 0; c < pick[i]; ++c) {
                        edges.push_back(types[i]);
                        deg[types[i].first] += 1;
                        deg[types[i].second] += 1;
                    }
                for (int d : deg)
                    if (d < 3) return;
                // Connected?
                std::vector<int> parent(h);
                std::iota(parent.begin(), parent.end(), 0);
                std::function<int(int)> find = [&](int x) {
                    while (parent[x] != x) x = parent[x] = parent[parent[x]];
                    return x;
                };
                for (auto [u, v] : edges) parent[find(u)] = find(v);
                std::set<int> roots;
                for (int v = 0; v < h; ++v) roots.insert(find(v));
                if (roots.size() != 1) return;
                if (static_cast<int>(edges.size()) - h + 1 > max_nontree) return;
                // Canonical form under relabeling.
                std::vector<int> perm(h);
                std::iota(perm.begin(), perm.end(), 0);
                std::vector<int> best;
                do {
                    std::vector<std::pair<int, int>> rel;
                    for (auto [u, v] : edges) {
                        int a = perm[u], b = perm[v];
                        if (a > b) std::swap(a, b);
                        rel.push_back({a, b});
                    }
                    std::sort(rel.begin(), rel.end());
                    std::vector<int> code{h};
                    for (auto [a, b] : rel) {
                        code.push_back(a);
                        code.push_back(b);
                    }
                    if (best.empty() || code < best) best = code;
                } while (std::next_permutation(perm.begin(), perm.end()));
                if (seen.insert(best).second) {
                    // Rebuild edges from the canonical code.
                    std::vector<std::pair<int, int>> canon;
                    for (size_t i = 1; i + 1 < best.size(); i += 2)
                        canon.push_back({best[i], best[i + 1]});
                    out.push_back({h, canon});
                }
                return;
            }
            for (int c = 0; total + c <= max_e; ++c) {
                pick[t] = c;
                rec(t + 1, total + c);
            }
            pick[t] = 0;
        };
        rec(0, 0);
    }
    return out;
}

}  // namespace

std::vector<HStar> enumerate_patterns(int max_v, int max_e, int max_nontree) {
    std::vector<HStar> out;
    out.push_back(HStar{});  // the empty multigraph
    if (max_nontree <= 0 || max_v <= 0 || max_e <= 0) return out;

    // Connected component shapes, canonical, within the caps.
    std::vector<Component> comps;
    std::set<std::vector<int>> comp_seen;
    for (const auto& [h, base_edges] : base_graphs(max_nontree)) {
        // Chain length assignments: each base edge subdivided into a chain
        // of length >= 1; loops at a base vertex need length >= 1 too.
        Component c;
        c.base_nv = h;
        c.base_edges = base_edges;
        c.chains.assign(base_edges.size(), 1);
        std::function<void(size_t)> rec = [&](size_t e) {
            if (c.vertices() > max_v || c.edge_count() > max_e) return;
            if (e == base_edges.size()) {
                if (c.nontree() > max_nontree) return;
                if (!c.realize().min_degree_two()) return;
                if (comp_seen.insert(c.code()).second) comps.push_back(c);
                return;
            }
            for (int len = 1;; ++len) {
                c.chains[e] = len;
                if (c.vertices() > max_v || c.edge_count() > max_e) break;
                rec(e + 1);
            }
            c.chains[e] = 1;
        };
        rec(0);
    }
    // Deterministic order: by vertex count, then canonical code.
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        if (a.vertices() != b.vertices()) return a.vertices() < b.vertices();
        return a.code() < b.code();
    });

    // Multisets of components within the global caps (non-decreasing index
    // sequences to avoid duplicates).
    std::vector<int> chosen;
    std::function<void(size_t, int, int, int)> rec = [&](size_t from, int v, int e,
                                                         int nt) {
        if (!chosen.empty()) {
            HStar h;
            for (int ci : chosen) {
                HStar part = comps[ci].realize();
                int off = h.nv;
                h.nv += part.nv;
                for (auto [a, b] : part.edges) h.edges.push_back({a + off, b + off});
            }
            std::sort(h.edges.begin(), h.edges.end());
            h.nontree = h.compute_nontree();
            out.push_back(h);
        }
        for (size_t ci = from; ci < comps.size(); ++ci) {
            int nv = v + comps[ci].vertices();
            int ne = e + comps[ci].edge_count();
            int nnt = nt + comps[ci].nontree();
            if (nv > max_v || ne > max_e || nnt > max_nontree) continue;
            chosen.push_back(static_cast<int>(ci));
            rec(ci, nv, ne, nnt);
            chosen.pop_back();
        }
    };
    rec(0, 0, 0, 0);

    std::sort(out.begin(), out.end(), [](const HStar& a, const HStar& b) {
        if (a.nv != b.nv) return a.nv < b.nv;
        if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
        return a.edges < b.edges;
    });
    return out;
}

std::vector<HStar> enumerate_hstar(int budget) {
    if (budget <= 0) return {};
    return enumerate_patterns(4 * budget, 5 * budget, budget - 1);
}

std::vector<RespectMap> representative_family(
    const HStar& h, int k, const std::vector<std::pair<int, int>>& P) {
    const int m = static_cast<int>(h.nontree.size());
    std::vector<RespectMap> out;
    std::set<std::vector<int>> seen;

    if (P.empty()) {
        out.push_back(RespectMap{{}});
        return out;
    }
    if (m == 0) return out;

    // All partitions of [k].
    std::vector<Partition> all;
    {
        std::vector<int> assign(k, 0);
        std::function<void(int, int)> rec = [&](int i, int used) {
            if (i == k) {
                Partition p;
                p.ground = k;
                p.block_of = assign;
                p.canonicalize();
                all.push_back(p);
                return;
            }
            for (int b = 0; b <= used; ++b) {
                assign[i] = b;
                rec(i + 1, std::max(used, b + 1));
            }
        };
        rec(0, 0);
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
    }

    // Finer-and-finer sequences (Phi_1 >= Phi_2 >= ... >= Phi_m) whose last
    // element separates every requested pair; xi maps each pair to the
    // first edge whose partition separates it.
    std::vector<int> seq(m, -1);
    std::function<void(int)> rec = [&](int t) {
        if (t == m) {
            const Partition& last = all[seq[m - 1]];
            for (auto [i, j] : P)
                if (last.same_block(i, j)) return;
            RespectMap xi;
            xi.xi.resize(P.size());
            for (size_t pi = 0; pi < P.size(); ++pi) {
                auto [i, j] = P[pi];
                int pick = -1;
                for (int s = 0; s < m; ++s)
                    if (!all[seq[s]].same_block(i, j)) {
                        pick = s;
                        break;
                    }
                xi.xi[pi] = pick;
            }
            if (seen.insert(xi.xi).second) out.push_back(xi);
            return;
        }
        for (size_t c = 0; c < all.size(); ++c) {
            if (t > 0 && !all[seq[t - 1]].coarsens(all[c])) continue;
            seq[t] = static_cast<int>(c);
            rec(t + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace sepgraph
