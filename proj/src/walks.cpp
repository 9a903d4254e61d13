#include "sepgraph/pointsep.hpp"

#include <algorithm>
#include <queue>

namespace sepgraph {

const WalkTable::Entry* WalkTable::find(int u, int v, std::uint32_t l) const {
    auto it = open_walks.find({u, v, l});
    return it == open_walks.end() ? nullptr : &it->second;
}

const WalkTable::Entry* WalkTable::find_closed_nonempty(int u, std::uint32_t l) const {
    auto it = closed_walks.find({u, l});
    return it == closed_walks.end() ? nullptr : &it->second;
}

WalkTable shortest_labeled_walks(const LabeledMultigraph& g, int width_cap) {
    if (g.width > width_cap)
        throw WidthCapExceeded("label width " + std::to_string(g.width) +
                               " exceeds cap " + std::to_string(width_cap));
    WalkTable table;
    table.width = g.width;
    const std::uint32_t L = 1u << g.width;

    // Per edge, the fully-constrained resolutions.
    struct Variant {
        int edge;
        std::uint32_t bits;
    };
    std::vector<std::vector<Variant>> at(g.n);  // incident variants per vertex
    std::vector<std::vector<Variant>> loops(g.n);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        const auto& ed = g.edges[e];
        std::uint32_t free = Label::full(g.width) & ~ed.lab.mask;
        std::uint32_t sub = 0;
        while (true) {
            std::uint32_t bits = ed.lab.bits | sub;
            if (ed.u == ed.v)
                loops[ed.u].push_back({e, bits});
            else {
                at[ed.u].push_back({e, bits});
                at[ed.v].push_back({e, bits});
            }
            if (sub == free) break;
            sub = (sub - free) & free;
        }
    }

    for (int start = 0; start < g.n; ++start) {
        // BFS over (vertex, label) states.
        std::vector<int> dist(static_cast<size_t>(g.n) * L, -1);
        struct Parent {
            int state = -1;
            int edge = -1;
            std::uint32_t bits = 0;
        };
        std::vector<Parent> par(static_cast<size_t>(g.n) * L);
        auto id = [&](int v, std::uint32_t l) {
            return static_cast<size_t>(v) * L + l;
        };
        std::queue<std::pair<int, std::uint32_t>> q;
        dist[id(start, 0)] = 0;
        q.push({start, 0});
        while (!q.empty()) {
            auto [v, l] = q.front();
            q.pop();
            int dv = dist[id(v, l)];
            auto relax = [&](int w, std::uint32_t nl, int e, std::uint32_t bits) {
                if (dist[id(w, nl)] != -1) return;
                dist[id(w, nl)] = dv + 1;
                par[id(w, nl)] = {static_cast<int>(id(v, l)), e, bits};
                q.push({w, nl});
            };
            for (const auto& var : at[v]) {
                const auto& ed = g.edges[var.edge];
                int w = ed.u == v ? ed.v : ed.u;
                relax(w, l ^ var.bits, var.edge, var.bits);
            }
            for (const auto& var : loops[v]) relax(v, l ^ var.bits, var.edge, var.bits);
        }

        auto reconstruct = [&](int v, std::uint32_t l) {
            WalkTable::Entry ent;
            ent.len = dist[id(v, l)];
            std::vector<int> verts{v};
            int cur = static_cast<int>(id(v, l));
            while (par[cur].state != -1) {
                ent.edges.push_back(par[cur].edge);
                ent.resolved.push_back(Label::constrained(g.width, par[cur].bits));
                cur = par[cur].state;
                verts.push_back(static_cast<int>(static_cast<size_t>(cur) / L));
            }
            std::reverse(verts.begin(), verts.end());
            std::reverse(ent.edges.begin(), ent.edges.end());
            std::reverse(ent.resolved.begin(), ent.resolved.end());
            ent.vertices = verts;
            return ent;
        };

        for (int v = 0; v < g.n; ++v)
            for (std::uint32_t l = 0; l < L; ++l)
                if (dist[id(v, l)] != -1)
                    table.open_walks[{start, v, l}] = reconstruct(v, l);

        // Shortest nonempty closed walks at `start`: one step out, then the
        // recorded shortest way back.
        for (std::uint32_t l = 0; l < L; ++l) {
            const WalkTable::Entry* best = nullptr;
            WalkTable::Entry candidate;
            auto consider = [&](const Variant& var, int nbr) {
                std::uint32_t need = l ^ var.bits;
                auto it = table.open_walks.find({start, nbr, need});
                if (it == table.open_walks.end()) return;
                WalkTable::Entry ent;
                ent.len = 1 + it->second.len;
                if (best && best->len <= ent.len) return;
                // start -> nbr via var, then reverse of start -> nbr walk.
                ent.vertices = {start};
                ent.edges = {var.edge};
                ent.resolved = {Label::constrained(g.width, var.bits)};
                const auto& back = it->second;
                for (size_t i = back.vertices.size(); i-- > 0;)
                    ent.vertices.push_back(back.vertices[i]);
                for (size_t i = back.edges.size(); i-- > 0;) {
                    ent.edges.push_back(back.edges[i]);
                    ent.resolved.push_back(back.resolved[i]);
                }
                candidate = std::move(ent);
                best = &candidate;
            };
            for (const auto& var : at[start]) {
                const auto& ed = g.edges[var.edge];
                consider(var, ed.u == start ? ed.v : ed.u);
            }
            for (const auto& var : loops[start]) consider(var, start);
            if (best) table.closed_walks[{start, l}] = candidate;
        }
    }
    return table;
}

}  // namespace sepgraph
