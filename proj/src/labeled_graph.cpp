#include "sepgraph/labeled_graph.hpp"

#include "sepgraph/routing.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace sepgraph {

std::string Label::str() const {
    std::string s(static_cast<size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
        if (!(mask >> i & 1u))
            s[static_cast<size_t>(i)] = '.';
        else if (bits >> i & 1u)
            s[static_cast<size_t>(i)] = '1';
    }
    return s;
}

void LabeledMultigraph::add_edge(int u, int v, Label lab) {
    if (u > v) std::swap(u, v);
    lab.bits &= lab.mask;  // unconstrained bits stored as 0
    for (const auto& e : edges)
        if (e.u == u && e.v == v && e.lab == lab) return;
    edges.push_back({u, v, lab});
}

LabeledMultigraph LabeledMultigraph::induced(const std::vector<int>& keep) const {
    unsigned mask = 0;
    for (int v : keep) mask |= 1u << v;
    return induced_mask(mask);
}

LabeledMultigraph LabeledMultigraph::induced_mask(unsigned keep_mask) const {
    LabeledMultigraph out;
    out.n = n;
    out.mode = mode;
    out.width = width;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const auto& ed = edges[e];
        if ((keep_mask >> ed.u & 1u) && (keep_mask >> ed.v & 1u)) {
            out.edges.push_back(ed);
            out.source_edges.push_back(source_edges.empty() ? e : source_edges[e]);
        }
    }
    return out;
}

LabeledMultigraph LabeledMultigraph::expand_masks() const {
    LabeledMultigraph out;
    out.n = n;
    out.mode = mode;
    out.width = width;
    std::uint32_t full = Label::full(width);
    std::set<std::tuple<int, int, std::uint32_t>> seen;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const auto& ed = edges[e];
        std::uint32_t free = full & ~ed.lab.mask;
        // Iterate all subsets of the free positions.
        std::uint32_t sub = 0;
        while (true) {
            std::uint32_t bits = ed.lab.bits | sub;
            if (seen.insert({ed.u, ed.v, bits}).second) {
                out.edges.push_back({ed.u, ed.v, Label::constrained(width, bits)});
                out.source_edges.push_back(source_edges.empty() ? e : source_edges[e]);
            }
            if (sub == free) break;
            sub = (sub - free) & free;
        }
    }
    return out;
}

LabeledMultigraph project(const LabeledMultigraph& g, int i) {
    LabeledMultigraph out;
    out.n = g.n;
    out.mode = LabelMode::ST;
    out.width = 1;
    std::set<std::tuple<int, int, std::uint32_t>> seen;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        const auto& ed = g.edges[e];
        std::vector<std::uint32_t> bits;
        if (ed.lab.mask >> i & 1u)
            bits.push_back(ed.lab.bits >> i & 1u);
        else {
            bits.push_back(0);
            bits.push_back(1);
        }
        for (std::uint32_t b : bits) {
            if (!seen.insert({ed.u, ed.v, b}).second) continue;
            out.edges.push_back({ed.u, ed.v, Label::constrained(1, b)});
            out.source_edges.push_back(g.source_edges.empty() ? e : g.source_edges[e]);
        }
    }
    return out;
}

namespace {

Rat linf(const Rat& x, const Rat& y) {
    Rat ax = abs(x), ay = abs(y);
    return cmp(ax, ay) >= 0 ? ax : ay;
}

bool on_any_boundary(const Scene& sc, const Point& p) {
    for (const auto& ob : sc.obstacles)
        if (point_on_polyline(p, ob.boundary)) return true;
    return false;
}

}  // namespace

std::vector<Point> reference_points(const Scene& sc) {
    std::vector<Point> named;
    for (const auto& [name, p] : sc.points) named.push_back(p);
    if (sc.anchor) named.push_back(*sc.anchor);

    std::vector<Point> refs(sc.obstacles.size());
    std::vector<Point> taken;
    for (const auto& ob : sc.obstacles) {
        const auto& v = ob.boundary.vertices;
        size_t m = v.size() - 1;
        // Vertices in lexicographic order; the smallest is convex, the rest
        // are fallbacks.
        std::vector<size_t> order(m);
        for (size_t i = 0; i < m; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return point_less(v[a], v[b]); });

        bool found = false;
        for (size_t oi = 0; oi < m && !found; ++oi) {
            size_t i = order[oi];
            const Point& cur = v[i];
            const Point& nxt = v[(i + 1) % m];
            const Point& prv = v[(i + m - 1) % m];
            Rat dn = linf(nxt.x - cur.x, nxt.y - cur.y);
            Rat dp = linf(prv.x - cur.x, prv.y - cur.y);
            Rat dirx = (nxt.x - cur.x) / dn + (prv.x - cur.x) / dp;
            Rat diry = (nxt.y - cur.y) / dn + (prv.y - cur.y) / dp;
            if (sign_of(dirx) == 0 && sign_of(diry) == 0) continue;
            Rat eps(1, 4);
            for (int iter = 0; iter < 128; ++iter, eps /= 2) {
                Point cand{cur.x + eps * dirx, cur.y + eps * diry};
                if (point_in_region(cand, ob) != RegionSide::Inside) continue;
                if (on_any_boundary(sc, cand)) continue;
                bool clash = false;
                for (const auto& p : named)
                    if (p == cand) clash = true;
                for (const auto& p : taken)
                    if (p == cand) clash = true;
                if (clash) continue;
                refs[ob.id] = cand;
                taken.push_back(cand);
                found = true;
                break;
            }
        }
        if (!found)
            throw RoutingFailed("no interior reference point for obstacle " +
                                std::to_string(ob.id));
    }
    return refs;
}

ReferenceCurveSet route_reference_curves(const Scene& sc, LabelMode mode,
                                         std::uint64_t seed) {
    auto violations = validate_scene(sc);
    if (!violations.empty())
        throw std::invalid_argument("invalid scene: " + violations[0].code +
                                    " " + violations[0].detail);

    ReferenceCurveSet rc;
    rc.mode = mode;
    if (mode == LabelMode::ST) {
        int s = sc.point_index("s"), t = sc.point_index("t");
        if (s < 0 || t < 0)
            throw std::invalid_argument("ST mode needs points named s and t");
        rc.endpoints.push_back({s, t});
    } else if (mode == LabelMode::Pairs) {
        for (auto [a, b] : sc.pairs) rc.endpoints.push_back({a, b});
    } else {
        if (!sc.anchor)
            throw std::invalid_argument("Points mode needs an anchor point");
        for (int i = 0; i < static_cast<int>(sc.points.size()); ++i)
            rc.endpoints.push_back({i, -1});
    }

    std::vector<int> all_ids(sc.obstacles.size());
    for (size_t i = 0; i < sc.obstacles.size(); ++i)
        all_ids[i] = static_cast<int>(i);

    std::vector<Point> refs = reference_points(sc);
    std::vector<Point> forbidden = refs;
    for (const auto& [name, p] : sc.points) forbidden.push_back(p);
    if (sc.anchor) forbidden.push_back(*sc.anchor);

    CellRouter router(sc, all_ids, forbidden, seed);
    for (auto [from, to] : rc.endpoints) {
        const Point& a = sc.point_at(from);
        const Point& b = to == -1 ? *sc.anchor : sc.point_at(to);
        rc.curves.push_back(router.route(a, b, false));
    }

    auto curve_violations = validate_curves(sc, rc);
    if (!curve_violations.empty())
        throw RoutingFailed("routed curves invalid: " + curve_violations[0].code +
                            " " + curve_violations[0].detail);
    return rc;
}

std::vector<Violation> validate_curves(const Scene& sc,
                                       const ReferenceCurveSet& rc) {
    std::vector<Violation> out;
    std::vector<Point> refs = reference_points(sc);

    // Boundary intersection points (for avoidance checks).
    std::vector<Point> boundary_crossings;
    for (size_t i = 0; i < sc.obstacles.size(); ++i) {
        for (size_t j = i + 1; j < sc.obstacles.size(); ++j) {
            const auto& vi = sc.obstacles[i].boundary.vertices;
            const auto& vj = sc.obstacles[j].boundary.vertices;
            for (size_t a = 0; a + 1 < vi.size(); ++a)
                for (size_t b = 0; b + 1 < vj.size(); ++b) {
                    auto res = segment_intersection(Seg{vi[a], vi[a + 1]},
                                                    Seg{vj[b], vj[b + 1]});
                    if (const auto* pt = std::get_if<IntersectPoint>(&res))
                        boundary_crossings.push_back(pt->p);
                }
        }
    }

    for (size_t c = 0; c < rc.curves.size(); ++c) {
        const auto& verts = rc.curves[c].vertices;
        std::string who = "curve " + std::to_string(c);
        if (verts.size() < 2) {
            out.push_back({"DegenerateCurve", who});
            continue;
        }
        const Point& a = verts.front();
        const Point& b = verts.back();

        // Interior vertices and segments avoid the protected point set.
        for (size_t i = 0; i + 1 < verts.size(); ++i) {
            Seg leg{verts[i], verts[i + 1]};
            if (leg.a == leg.b) {
                out.push_back({"ZeroLengthEdge", who});
                continue;
            }
            for (const auto& r : refs)
                if (on_segment(r, leg.a, leg.b))
                    out.push_back({"CurveHitsReferencePoint", who});
            for (const auto& [nm, q] : sc.points)
                if (q != a && q != b && on_segment(q, leg.a, leg.b))
                    out.push_back({"CurveHitsNamedPoint", who + " point " + nm});
            if (sc.anchor && *sc.anchor != a && *sc.anchor != b &&
                on_segment(*sc.anchor, leg.a, leg.b))
                out.push_back({"CurveHitsNamedPoint", who + " anchor"});
            for (const auto& x : boundary_crossings)
                if (on_segment(x, leg.a, leg.b))
                    out.push_back({"CurveHitsBoundaryCrossing", who});
        }

        // Transversality with every obstacle boundary: each incidence is
        // either a proper segment crossing or a curve vertex with its two
        // legs strictly on opposite sides of the boundary edge.
        for (const auto& ob : sc.obstacles) {
            const auto& bd = ob.boundary.vertices;
            for (size_t e = 0; e + 1 < bd.size(); ++e) {
                Seg bseg{bd[e], bd[e + 1]};
                for (size_t i = 0; i + 1 < verts.size(); ++i) {
                    Seg leg{verts[i], verts[i + 1]};
                    auto res = segment_intersection(leg, bseg);
                    if (std::holds_alternative<IntersectEmpty>(res)) continue;
                    if (std::holds_alternative<IntersectOverlap>(res)) {
                        out.push_back({"CurveOverlapsBoundary",
                                       who + " obstacle " + std::to_string(ob.id)});
                        continue;
                    }
                    const Point& z = std::get<IntersectPoint>(res).p;
                    if (z == bd[e] || z == bd[e + 1]) {
                        out.push_back({"CurveHitsObstacleVertex",
                                       who + " obstacle " + std::to_string(ob.id)});
                        continue;
                    }
                    if (segments_properly_cross(leg, bseg)) continue;
                    // Incidence at a curve vertex: legs must straddle.
                    bool ok = false;
                    if (z == leg.b && i + 2 < verts.size()) {
                        int s1 = orient(bseg.a, bseg.b, leg.a);
                        int s2 = orient(bseg.a, bseg.b, verts[i + 2]);
                        ok = s1 * s2 < 0;
                    } else if (z == leg.a && i > 0) {
                        // Already checked when the previous leg was in hand.
                        ok = true;
                    }
                    if (!ok)
                        out.push_back({"CurveTangentToBoundary",
                                       who + " obstacle " + std::to_string(ob.id)});
                }
            }
        }
    }

    // Pairwise curve transversality: overlaps and vertex incidences are
    // rejected; shared curve endpoints are permitted.
    for (size_t c1 = 0; c1 < rc.curves.size(); ++c1) {
        for (size_t c2 = c1 + 1; c2 < rc.curves.size(); ++c2) {
            const auto& u = rc.curves[c1].vertices;
            const auto& w = rc.curves[c2].vertices;
            auto shared_endpoint = [&](const Point& z) {
                bool end1 = z == u.front() || z == u.back();
                bool end2 = z == w.front() || z == w.back();
                return end1 && end2;
            };
            for (size_t i = 0; i + 1 < u.size(); ++i) {
                for (size_t j = 0; j + 1 < w.size(); ++j) {
                    Seg s1{u[i], u[i + 1]};
                    Seg s2{w[j], w[j + 1]};
                    auto res = segment_intersection(s1, s2);
                    if (std::holds_alternative<IntersectEmpty>(res)) continue;
                    if (std::holds_alternative<IntersectOverlap>(res)) {
                        out.push_back({"CurvesOverlap",
                                       std::to_string(c1) + "," + std::to_string(c2)});
                        continue;
                    }
                    const Point& z = std::get<IntersectPoint>(res).p;
                    if (shared_endpoint(z)) continue;
                    if (!segments_properly_cross(s1, s2))
                        out.push_back({"CurvesTouch",
                                       std::to_string(c1) + "," + std::to_string(c2)});
                }
            }
        }
    }
    return out;
}

namespace {

bool regions_intersect(const Scene& sc, int i, int j) {
    const auto& vi = sc.obstacles[i].boundary.vertices;
    const auto& vj = sc.obstacles[j].boundary.vertices;
    for (size_t a = 0; a + 1 < vi.size(); ++a)
        for (size_t b = 0; b + 1 < vj.size(); ++b) {
            auto res = segment_intersection(Seg{vi[a], vi[a + 1]}, Seg{vj[b], vj[b + 1]});
            if (!std::holds_alternative<IntersectEmpty>(res)) return true;
        }
    if (point_in_region(vi[0], sc.obstacles[j]) != RegionSide::Outside) return true;
    if (point_in_region(vj[0], sc.obstacles[i]) != RegionSide::Outside) return true;
    return false;
}

}  // namespace

LabeledMultigraph build_labeled_graph(const Scene& sc, const ReferenceCurveSet& rc) {
    LabeledMultigraph g;
    g.n = static_cast<int>(sc.obstacles.size());
    g.mode = rc.mode;
    g.width = static_cast<int>(rc.curves.size());
    if (g.width == 0) g.width = 1;
    std::uint32_t full = Label::full(g.width);

    std::vector<Point> refs = reference_points(sc);

    // Self-loops for contained relevant points.
    for (const auto& ob : sc.obstacles) {
        for (size_t c = 0; c < rc.curves.size(); ++c) {
            auto [from, to] = rc.endpoints[c];
            bool hit = point_in_region(sc.point_at(from), ob) != RegionSide::Outside;
            if (!hit && to >= 0)
                hit = point_in_region(sc.point_at(to), ob) != RegionSide::Outside;
            if (hit)
                g.add_edge(ob.id, ob.id,
                           Label{g.width, 1u << c, full});
        }
    }

    // Pair edges via reachability over (face, partial label) states.
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            if (!regions_intersect(sc, i, j)) continue;

            // Curves with no endpoint inside the union keep their bits.
            std::vector<int> constrained;
            for (size_t c = 0; c < rc.curves.size(); ++c) {
                auto [from, to] = rc.endpoints[c];
                bool excluded =
                    point_in_region(sc.point_at(from), sc.obstacles[i]) != RegionSide::Outside ||
                    point_in_region(sc.point_at(from), sc.obstacles[j]) != RegionSide::Outside;
                if (!excluded && to >= 0)
                    excluded =
                        point_in_region(sc.point_at(to), sc.obstacles[i]) != RegionSide::Outside ||
                        point_in_region(sc.point_at(to), sc.obstacles[j]) != RegionSide::Outside;
                if (!excluded) constrained.push_back(static_cast<int>(c));
            }
            std::map<int, int> curve_pos;
            for (size_t k = 0; k < constrained.size(); ++k)
                curve_pos[constrained[k]] = static_cast<int>(k);
            const int jbits = static_cast<int>(constrained.size());

            std::vector<std::pair<Seg, Provenance>> segs =
                boundary_segments(sc, {i, j});
            for (size_t c = 0; c < rc.curves.size(); ++c) {
                const auto& verts = rc.curves[c].vertices;
                for (size_t t = 0; t + 1 < verts.size(); ++t) {
                    Provenance prov{Provenance::Kind::ReferenceCurve,
                                    static_cast<int>(c),
                                    static_cast<int>(segs.size())};
                    segs.push_back({Seg{verts[t], verts[t + 1]}, prov});
                }
            }
            Arrangement arr = build_arrangement(segs);
            std::vector<bool> in_union(arr.faces.size(), false);
            for (size_t f = 0; f < arr.faces.size(); ++f)
                in_union[f] = face_inside_union(arr, static_cast<int>(f), sc, {i, j});

            int f_start = arr.locate(refs[i]);
            int f_goal = arr.locate(refs[j]);

            // BFS over (face, label over the constrained curves).
            FaceGraph fg = FaceGraph::of(arr);
            std::set<std::pair<int, std::uint32_t>> seen;
            std::queue<std::pair<int, std::uint32_t>> q;
            seen.insert({f_start, 0});
            q.push({f_start, 0});
            std::set<std::uint32_t> reached;
            while (!q.empty()) {
                auto [f, l] = q.front();
                q.pop();
                if (f == f_goal) reached.insert(l);
                for (int li : fg.adj[f]) {
                    const auto& lk = fg.links[li];
                    int nf = lk.face_a == f ? lk.face_b : lk.face_a;
                    if (nf == f || !in_union[nf]) continue;
                    const Provenance& prov = arr.halfedges[lk.halfedge].prov;
                    std::uint32_t theta = 0;
                    if (prov.kind == Provenance::Kind::ReferenceCurve) {
                        auto it = curve_pos.find(prov.id);
                        if (it != curve_pos.end()) theta = 1u << it->second;
                    }
                    std::uint32_t nl = l ^ theta;
                    if (seen.insert({nf, nl}).second) q.push({nf, nl});
                }
            }
            std::uint32_t cmask = 0;
            for (int c : constrained) cmask |= 1u << c;
            for (std::uint32_t l : reached) {
                std::uint32_t bits = 0;
                for (int k = 0; k < jbits; ++k)
                    if (l >> k & 1u) bits |= 1u << constrained[static_cast<size_t>(k)];
                g.add_edge(i, j, Label{g.width, bits, cmask});
            }
        }
    }
    return g;
}

std::string to_dot(const LabeledMultigraph& g) {
    std::ostringstream os;
    os << "graph G {\n";
    for (int v = 0; v < g.n; ++v) os << "  " << v << ";\n";
    for (const auto& e : g.edges)
        os << "  " << e.u << " -- " << e.v << " [label=\"" << e.lab.str()
           << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace sepgraph
