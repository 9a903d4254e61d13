#include "sepgraph/verify.hpp"

#include <algorithm>
#include <set>

namespace sepgraph {

namespace {

Json label_json(const Label& l) { return Json(l.str()); }

Json walk_json(const LabeledMultigraph& g, const CycleCertificate& c) {
    Json j;
    j["vertices"] = c.vertex_seq;
    j["steps"] = Json::array();
    for (size_t i = 0; i < c.edge_seq.size(); ++i) {
        const auto& ed = g.edges[c.edge_seq[i]];
        Json s;
        s["u"] = ed.u;
        s["v"] = ed.v;
        s["label"] = label_json(c.resolved[i]);
        j["steps"].push_back(s);
    }
    j["parity"] = label_json(c.parity);
    return j;
}

std::uint32_t bits_from_string(const std::string& s) {
    std::uint32_t b = 0;
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] == '1') b |= 1u << i;
    return b;
}

}  // namespace

Json certificate_to_json(const LabeledMultigraph& g, const CycleCertificate& c) {
    return walk_json(g, c);
}

Json make_sep2_result(const Scene& sc,
                      const std::optional<std::pair<CycleCertificate, Rat>>& best,
                      const LabeledMultigraph& g) {
    Json j;
    j["command"] = "sep2";
    if (!best) {
        j["no_separator"] = true;
        return j;
    }
    std::set<int> sep(best->first.vertex_seq.begin(), best->first.vertex_seq.end());
    j["no_separator"] = false;
    j["separator"] = std::vector<int>(sep.begin(), sep.end());
    j["size"] = sep.size();
    j["certificate"] = walk_json(g, best->first);
    return j;
}

Json make_remove_result(const Scene& sc, const RemovalOptions& opts,
                        const std::optional<RemovalResult>& res,
                        const std::optional<FractionalSolution>& lp) {
    Json j;
    j["command"] = "remove";
    j["mode"] = opts.exact ? "exact" : "approx";
    if (opts.exact) j["budget"] = opts.budget;
    if (!res) {
        j["infeasible"] = true;
        return j;
    }
    j["infeasible"] = false;
    j["deleted"] = res->deleted;
    Json w = Json::array();
    for (const auto& p : res->witness.vertices) w.push_back(point_to_json(p));
    j["witness"] = w;
    if (res->lp_objective) j["lp_objective"] = rat_str(*res->lp_objective);
    if (lp) {
        Json xs = Json::array();
        for (const auto& xi : lp->x) xs.push_back(rat_str(xi));
        j["lp_x"] = xs;
    }
    if (res->ratio) j["ratio"] = rat_str(*res->ratio);
    return j;
}

Json make_psep_result(const Scene& sc, const std::vector<std::pair<int, int>>& P,
                      GpsStrategy strategy, const GpsResult& res,
                      const LabeledMultigraph& g) {
    Json j;
    j["command"] = "psep";
    j["strategy"] = strategy == GpsStrategy::Brute
                        ? "brute"
                        : (strategy == GpsStrategy::Section5 ? "section5"
                                                             : "section6");
    Json pj = Json::array();
    for (auto [a, b] : P)
        pj.push_back(Json::array({sc.points[a].first, sc.points[b].first}));
    j["pairs"] = pj;
    if (res.no_separator) {
        j["no_separator"] = true;
        return j;
    }
    j["no_separator"] = false;
    j["separator"] = res.separator;
    j["size"] = res.separator.size();
    Json blocks = Json::array();
    for (int b = 0; b < res.phi.num_blocks(); ++b) {
        Json blk = Json::array();
        for (int i = 0; i < res.phi.ground; ++i)
            if (res.phi.block_of[i] == b) blk.push_back(i);
        blocks.push_back(blk);
    }
    j["phi"] = blocks;
    Json ws = Json::array();
    for (const auto& w : res.pair_witnesses) ws.push_back(walk_json(res.induced, w));
    j["pair_witnesses"] = ws;
    return j;
}

namespace {

void check_cycle_json(const Scene& sc, const Json& cert, int want_bit_i,
                      int want_bit_j, std::vector<std::string>& fails,
                      const std::set<int>& separator) {
    if (!cert.contains("vertices") || !cert.contains("steps")) {
        fails.push_back("certificate missing fields");
        return;
    }
    auto verts = cert.at("vertices").get<std::vector<int>>();
    if (verts.size() < 2 || verts.front() != verts.back()) {
        fails.push_back("certificate walk is not closed");
        return;
    }
    const int n = static_cast<int>(sc.obstacles.size());
    std::uint32_t parity = 0;
    size_t step_count = cert.at("steps").size();
    if (step_count + 1 != verts.size()) {
        fails.push_back("certificate step count mismatch");
        return;
    }
    for (size_t i = 0; i < step_count; ++i) {
        const Json& s = cert.at("steps").at(i);
        int u = s.at("u").get<int>(), v = s.at("v").get<int>();
        if (u < 0 || v < 0 || u >= n || v >= n) {
            fails.push_back("certificate references a bad obstacle id");
            return;
        }
        int wu = verts[i], wv = verts[i + 1];
        if (!((wu == u && wv == v) || (wu == v && wv == u))) {
            fails.push_back("certificate step does not match walk");
            return;
        }
        if (!separator.count(u) || !separator.count(v)) {
            fails.push_back("certificate leaves the separator");
            return;
        }
        // Edge realizability: distinct endpoints must intersect.
        if (u != v) {
            bool meet = false;
            const auto& bu = sc.obstacles[u].boundary.vertices;
            const auto& bv = sc.obstacles[v].boundary.vertices;
            for (size_t a = 0; a + 1 < bu.size() && !meet; ++a)
                for (size_t b = 0; b + 1 < bv.size() && !meet; ++b)
                    if (!std::holds_alternative<IntersectEmpty>(
                            segment_intersection(Seg{bu[a], bu[a + 1]},
                                                 Seg{bv[b], bv[b + 1]})))
                        meet = true;
            if (!meet &&
                point_in_region(bu[0], sc.obstacles[v]) == RegionSide::Outside &&
                point_in_region(bv[0], sc.obstacles[u]) == RegionSide::Outside) {
                fails.push_back("certificate edge joins disjoint obstacles");
                return;
            }
        }
        parity ^= bits_from_string(s.at("label").get<std::string>());
    }
    if (want_bit_i >= 0) {
        std::uint32_t bi = parity >> want_bit_i & 1u;
        std::uint32_t bj = want_bit_j >= 0 ? (parity >> want_bit_j & 1u) : 0u;
        if (want_bit_j >= 0 ? bi == bj : bi != 1u)
            fails.push_back("certificate parity does not witness the pair");
    }
}

}  // namespace

std::vector<std::string> verify_result(const Scene& sc, const Json& result,
                                       int brute_cap) {
    std::vector<std::string> fails;
    auto violations = validate_scene(sc);
    if (!violations.empty()) {
        fails.push_back("scene invalid: " + violations[0].code);
        return fails;
    }
    const int n = static_cast<int>(sc.obstacles.size());
    std::string cmd = result.value("command", "");

    if (cmd == "sep2") {
        std::vector<std::pair<int, int>> P{{sc.point_index("s"), sc.point_index("t")}};
        if (result.value("no_separator", false)) {
            // Full obstacle set must fail to separate.
            std::set<int> all;
            for (int v = 0; v < n; ++v) all.insert(v);
            if (separates_geometric(sc, all, "s", "t"))
                fails.push_back("claimed no separator but the full set separates");
            return fails;
        }
        auto sep = result.at("separator").get<std::vector<int>>();
        std::set<int> keep(sep.begin(), sep.end());
        if (!separates_geometric(sc, keep, "s", "t"))
            fails.push_back("separator does not separate s from t");
        if (result.at("size").get<size_t>() != sep.size())
            fails.push_back("size field mismatch");
        check_cycle_json(sc, result.at("certificate"), 0, -1, fails, keep);
        if (n <= brute_cap) {
            auto best = brute_force_min_separator(sc, P, brute_cap);
            if (best.size() != sep.size())
                fails.push_back("separator size " + std::to_string(sep.size()) +
                                " is not minimum " + std::to_string(best.size()));
        }
    } else if (cmd == "remove") {
        bool exact = result.value("mode", "exact") == "exact";
        if (result.value("infeasible", false)) {
            if (!exact) {
                fails.push_back("approx mode cannot be infeasible");
                return fails;
            }
            int q = result.at("budget").get<int>();
            if (n <= brute_cap) {
                SeparationTable table(sc);
                int s = sc.point_index("s"), t = sc.point_index("t");
                // Feasible iff some deletion of size <= q unseparates.
                for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    int deleted = n - __builtin_popcount(mask);
                    if (deleted > q) continue;
                    if (!table.separates(mask, s, t)) {
                        fails.push_back("instance is feasible at the budget");
                        return fails;
                    }
                }
            }
            return fails;
        }
        auto deleted = result.at("deleted").get<std::vector<int>>();
        std::set<int> del(deleted.begin(), deleted.end());
        std::set<int> keep;
        for (int v = 0; v < n; ++v)
            if (!del.count(v)) keep.insert(v);
        if (separates_geometric(sc, keep, "s", "t"))
            fails.push_back("deleted set leaves s and t separated");
        if (exact && static_cast<int>(del.size()) > result.at("budget").get<int>())
            fails.push_back("deleted set exceeds budget");
        // Witness avoids every remaining obstacle.
        Polyline witness;
        for (const auto& pj : result.at("witness"))
            witness.vertices.push_back(point_from_json(pj));
        if (witness.vertices.size() < 2) {
            fails.push_back("witness too short");
        } else {
            int s = sc.point_index("s"), t = sc.point_index("t");
            if (witness.vertices.front() != sc.point_at(s) ||
                witness.vertices.back() != sc.point_at(t))
                fails.push_back("witness endpoints are not s and t");
            for (const auto& p : witness.vertices)
                for (int id : keep)
                    if (point_in_region(p, sc.obstacles[id]) != RegionSide::Outside)
                        fails.push_back("witness vertex inside a remaining obstacle");
            for (size_t i = 0; i + 1 < witness.vertices.size(); ++i) {
                Seg leg{witness.vertices[i], witness.vertices[i + 1]};
                for (int id : keep) {
                    const auto& bd = sc.obstacles[id].boundary.vertices;
                    for (size_t e = 0; e + 1 < bd.size(); ++e)
                        if (!std::holds_alternative<IntersectEmpty>(
                                segment_intersection(leg, Seg{bd[e], bd[e + 1]})))
                            fails.push_back("witness crosses a remaining boundary");
                }
            }
        }
        if (result.contains("lp_x")) {
            // LP feasibility: every odd cycle is covered within tolerance.
            auto rc = route_reference_curves(sc, LabelMode::ST, 0);
            LabeledMultigraph g = build_labeled_graph(sc, rc);
            std::vector<Rat> x;
            for (const auto& xj : result.at("lp_x")) {
                auto r = rat_parse(xj.get<std::string>());
                if (!r) {
                    fails.push_back("bad lp_x entry");
                    return fails;
                }
                x.push_back(*r);
            }
            if (static_cast<int>(x.size()) != n) {
                fails.push_back("lp_x length mismatch");
                return fails;
            }
            auto worst = shortest_odd_cycle(g, x);
            Rat tol(1, 1000000000);
            if (worst && cmp(worst->second, Rat(1) - tol) < 0)
                fails.push_back("lp solution violates an odd-cycle constraint");
            if (result.contains("lp_objective")) {
                Rat obj = *rat_parse(result.at("lp_objective").get<std::string>());
                Rat sum = 0;
                for (const auto& xi : x) sum += xi;
                if (cmp(obj, sum) != 0)
                    fails.push_back("lp objective does not match lp_x");
            }
        }
        if (exact && n <= brute_cap) {
            SeparationTable table(sc);
            int s = sc.point_index("s"), t = sc.point_index("t");
            size_t best = n + 1;
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                if (!table.separates(mask, s, t)) {
                    size_t d = static_cast<size_t>(n - __builtin_popcount(mask));
                    best = std::min(best, d);
                }
            }
            if (deleted.size() != best)
                fails.push_back("deleted set is not minimum");
        }
    } else if (cmd == "psep") {
        std::vector<std::pair<int, int>> P;
        for (const auto& pj : result.at("pairs")) {
            int a = sc.point_index(pj.at(0).get<std::string>());
            int b = sc.point_index(pj.at(1).get<std::string>());
            if (a < 0 || b < 0) {
                fails.push_back("pair references unknown point");
                return fails;
            }
            P.push_back({a, b});
        }
        if (result.value("no_separator", false)) {
            std::set<int> all;
            for (int v = 0; v < n; ++v) all.insert(v);
            for (auto [a, b] : P)
                if (!separates_geometric(sc, all, sc.points[a].first,
                                         sc.points[b].first))
                    return fails;  // confirmed: some pair unseparable
            if (!P.empty())
                fails.push_back("claimed no separator but the full set works");
            return fails;
        }
        auto sep = result.at("separator").get<std::vector<int>>();
        std::set<int> keep(sep.begin(), sep.end());
        for (auto [a, b] : P)
            if (!separates_geometric(sc, keep, sc.points[a].first,
                                     sc.points[b].first))
                fails.push_back("separator misses pair " + sc.points[a].first +
                                "," + sc.points[b].first);
        const auto& ws = result.at("pair_witnesses");
        if (ws.size() != P.size()) {
            fails.push_back("one witness per pair expected");
        } else {
            for (size_t i = 0; i < P.size(); ++i)
                check_cycle_json(sc, ws.at(i), P[i].first, P[i].second, fails, keep);
        }
        if (n <= brute_cap) {
            auto best = brute_force_min_separator(sc, P, brute_cap);
            if (best.size() != sep.size())
                fails.push_back("separator size is not minimum");
        }
    } else {
        fails.push_back("unknown command: " + cmd);
    }
    return fails;
}

}  // namespace sepgraph
