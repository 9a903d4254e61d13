#include "sepgraph/routing.hpp"

#include "sepgraph/labeled_graph.hpp"

#include <algorithm>
#include <queue>

namespace sepgraph {

namespace {

// Reduced fractions in (0,1): 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ...
Rat crossing_param(int index) {
    int seen = 0;
    for (long den = 2;; ++den) {
        for (long num = 1; num < den; ++num) {
            if (mpz_class(gcd(mpz_class(num), mpz_class(den))) != 1) continue;
            if (seen == index) return Rat(num, den);
            ++seen;
        }
    }
}

}  // namespace

CellRouter::CellRouter(const Scene& sc, const std::vector<int>& obstacle_ids,
                       std::vector<Point> forbidden, std::uint64_t seed)
    : forbidden_(std::move(forbidden)), seed_(seed) {
    std::vector<std::pair<Seg, Provenance>> segs = boundary_segments(sc, obstacle_ids);

    // Bounding box over obstacles, named points and the anchor.
    Rat xmin, xmax, ymin, ymax;
    bool first = true;
    auto feed = [&](const Point& p) {
        if (first || cmp(p.x, xmin) < 0) xmin = p.x;
        if (first || cmp(p.x, xmax) > 0) xmax = p.x;
        if (first || cmp(p.y, ymin) < 0) ymin = p.y;
        if (first || cmp(p.y, ymax) > 0) ymax = p.y;
        first = false;
    };
    for (const auto& [seg, prov] : segs) {
        feed(seg.a);
        feed(seg.b);
    }
    for (const auto& [name, p] : sc.points) feed(p);
    if (sc.anchor) feed(*sc.anchor);
    for (const auto& p : forbidden_) feed(p);
    if (first) feed(Point{Rat(0), Rat(0)});
    xmin -= 2;
    xmax += 2;
    ymin -= 2;
    ymax += 2;

    // Event x-coordinates: segment endpoints and pairwise intersections.
    std::vector<Rat> events;
    for (const auto& [seg, prov] : segs) {
        events.push_back(seg.a.x);
        events.push_back(seg.b.x);
    }
    for (size_t i = 0; i < segs.size(); ++i) {
        for (size_t j = i + 1; j < segs.size(); ++j) {
            auto res = segment_intersection(segs[i].first, segs[j].first);
            if (const auto* pt = std::get_if<IntersectPoint>(&res))
                events.push_back(pt->p.x);
        }
    }
    std::sort(events.begin(), events.end(),
              [](const Rat& a, const Rat& b) { return cmp(a, b) < 0; });
    events.erase(std::unique(events.begin(), events.end()), events.end());

    Provenance helper{Provenance::Kind::Helper, -1, -1};
    // Box sides.
    Point bl{xmin, ymin}, br{xmax, ymin}, tr{xmax, ymax}, tl{xmin, ymax};
    segs.push_back({Seg{bl, br}, helper});
    segs.push_back({Seg{br, tr}, helper});
    segs.push_back({Seg{tr, tl}, helper});
    segs.push_back({Seg{tl, bl}, helper});

    // Vertical scaffold lines through every event x, skipping stretches
    // already covered by vertical obstacle edges at the same x.
    for (const Rat& x : events) {
        if (cmp(x, xmin) <= 0 || cmp(x, xmax) >= 0) continue;
        std::vector<std::pair<Rat, Rat>> covered;
        for (const auto& [seg, prov] : segs) {
            if (prov.kind == Provenance::Kind::Helper) continue;
            if (cmp(seg.a.x, seg.b.x) != 0 || cmp(seg.a.x, x) != 0) continue;
            Rat lo = seg.a.y, hi = seg.b.y;
            if (cmp(lo, hi) > 0) std::swap(lo, hi);
            covered.push_back({lo, hi});
        }
        std::sort(covered.begin(), covered.end(),
                  [](const auto& a, const auto& b) { return cmp(a.first, b.first) < 0; });
        Rat cursor = ymin;
        for (const auto& [lo, hi] : covered) {
            if (cmp(cursor, lo) < 0)
                segs.push_back({Seg{Point{x, cursor}, Point{x, lo}}, helper});
            if (cmp(hi, cursor) > 0) cursor = hi;
        }
        if (cmp(cursor, ymax) < 0)
            segs.push_back({Seg{Point{x, cursor}, Point{x, ymax}}, helper});
    }

    arr_ = build_arrangement(segs);
    fg_ = FaceGraph::of(arr_);
}

std::vector<int> CellRouter::cells_of_point(const Point& p) const {
    // Interior of a cell, or the relative interior of a helper edge.
    for (int h = 0; h < static_cast<int>(arr_.halfedges.size()); h += 2) {
        const Point& a = arr_.vertices[arr_.halfedges[h].origin].p;
        const Point& b = arr_.vertices[arr_.halfedges[h].target].p;
        if (p == a || p == b)
            throw RoutingFailed("endpoint coincides with an arrangement vertex");
        if (!on_segment(p, a, b)) continue;
        if (arr_.halfedges[h].prov.kind != Provenance::Kind::Helper)
            throw RoutingFailed("endpoint lies on an obstacle boundary");
        int f1 = arr_.cycles[arr_.halfedges[h].cycle].face;
        int f2 = arr_.cycles[arr_.halfedges[h + 1].cycle].face;
        std::vector<int> out{f1};
        if (f2 != f1) out.push_back(f2);
        std::sort(out.begin(), out.end());
        return out;
    }
    return {arr_.locate(p)};
}

bool CellRouter::leg_ok(const Point& p, const Point& q, const Point& a,
                        const Point& b) const {
    if (p == q) return false;
    Seg leg{p, q};
    for (const auto& fp : forbidden_) {
        if (fp == a || fp == b) continue;  // this curve's own endpoints
        if (on_segment(fp, p, q)) return false;
    }
    for (const auto& prev : placed_) {
        for (const auto& pv : prev.vertices) {
            if (on_segment(pv, p, q)) {
                // A shared named endpoint of both curves is the only
                // permitted incidence.
                bool shared_end = (pv == a || pv == b) && (pv == p || pv == q) &&
                                  (pv == prev.first || pv == prev.last);
                if (!shared_end) return false;
            }
        }
        for (size_t i = 0; i + 1 < prev.vertices.size(); ++i) {
            Seg ps{prev.vertices[i], prev.vertices[i + 1]};
            auto res = segment_intersection(leg, ps);
            if (std::holds_alternative<IntersectOverlap>(res)) return false;
            if (const auto* pt = std::get_if<IntersectPoint>(&res)) {
                const Point& z = pt->p;
                bool shared_end = (z == a || z == b) && (z == p || z == q) &&
                                  (z == prev.first || z == prev.last);
                if (shared_end) continue;
                // Otherwise only proper interior-interior crossings pass.
                if (!segments_properly_cross(leg, ps)) return false;
            }
        }
    }
    return true;
}

bool CellRouter::add_leg_points(std::vector<Point>& out, int face, const Point& u,
                                const Point& w, const Point& a, const Point& b) {
    if (u == w) return true;
    // Direct chord: for boundary-to-boundary hops require a strictly
    // interior midpoint (convex cells make the whole open chord interior).
    Point mid{(u.x + w.x) / 2, (u.y + w.y) / 2};
    bool interior_ok = false;
    if (!arr_.on_any_edge(mid)) {
        try {
            interior_ok = arr_.locate(mid) == face;
        } catch (const OnBoundary&) {
            interior_ok = false;
        }
    }
    if (interior_ok && leg_ok(u, w, a, b)) {
        out.push_back(w);
        return true;
    }
    // Detour through an interior point of the cell.
    auto it = sample_cache_.find(face);
    if (it == sample_cache_.end())
        it = sample_cache_.emplace(face, arr_.face_sample(face)).first;
    const Point& cs = it->second;
    std::vector<Point> candidates;
    Rat lam(1, 1);
    for (int j = 0; j < 24; ++j, lam /= 2)
        candidates.push_back(Point{cs.x * lam + mid.x * (1 - lam),
                                   cs.y * lam + mid.y * (1 - lam)});
    for (const Point& v : candidates) {
        if (arr_.on_any_edge(v)) continue;
        try {
            if (arr_.locate(v) != face) continue;
        } catch (const OnBoundary&) {
            continue;
        }
        if (v == u || v == w) continue;
        // No folding back: neither endpoint may lie on the other leg.
        if (on_segment(u, v, w) || on_segment(w, u, v)) continue;
        if (!leg_ok(u, v, a, b) || !leg_ok(v, w, a, b)) continue;
        out.push_back(v);
        out.push_back(w);
        return true;
    }
    return false;
}

Point CellRouter::crossing_point(int halfedge, const Point& a, const Point& b) {
    int edge = halfedge / 2;
    const Point& p = arr_.vertices[arr_.halfedges[2 * edge].origin].p;
    const Point& q = arr_.vertices[arr_.halfedges[2 * edge].target].p;
    int& uses = edge_uses_[edge];
    if (uses == 0) uses = static_cast<int>(seed_ % 3);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Rat t = crossing_param(uses++);
        Point z{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
        bool bad = false;
        for (const auto& fp : forbidden_)
            if (fp == z) bad = true;
        if (z == a || z == b) bad = true;
        for (const auto& prev : placed_)
            for (const auto& pv : prev.vertices)
                if (pv == z) bad = true;
        if (!bad) return z;
    }
    throw RoutingFailed("no usable crossing parameter");
}

Polyline CellRouter::route(const Point& a, const Point& b, bool helper_only) {
    std::vector<int> sources = cells_of_point(a);
    std::vector<int> targets = cells_of_point(b);

    // Breadth-first search over bounded cells; seed rotates the neighbor
    // order for tie-break variety.
    const int F = static_cast<int>(arr_.faces.size());
    std::vector<int> prev_face(F, -1), prev_link(F, -1);
    std::vector<bool> seen(F, false);
    std::queue<int> q;
    for (int s : sources) {
        seen[s] = true;
        prev_face[s] = s;
        q.push(s);
    }
    int goal = -1;
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        if (std::find(targets.begin(), targets.end(), f) != targets.end()) {
            goal = f;
            break;
        }
        std::vector<int> links = fg_.adj[f];
        std::sort(links.begin(), links.end(), [&](int x, int y) {
            int gx = fg_.links[x].face_a == f ? fg_.links[x].face_b : fg_.links[x].face_a;
            int gy = fg_.links[y].face_a == f ? fg_.links[y].face_b : fg_.links[y].face_a;
            if (gx != gy) return gx < gy;
            return x < y;
        });
        if (!links.empty()) {
            size_t rot = static_cast<size_t>(seed_ % links.size());
            std::rotate(links.begin(), links.begin() + rot, links.end());
        }
        for (int li : links) {
            const auto& lk = fg_.links[li];
            int g = lk.face_a == f ? lk.face_b : lk.face_a;
            if (g == f || seen[g]) continue;
            if (arr_.faces[g].unbounded) continue;
            if (helper_only &&
                arr_.halfedges[lk.halfedge].prov.kind != Provenance::Kind::Helper)
                continue;
            seen[g] = true;
            prev_face[g] = f;
            prev_link[g] = li;
            q.push(g);
        }
    }
    if (goal == -1) throw RoutingFailed("no cell path between endpoints");

    std::vector<int> faces{goal};
    std::vector<int> hops;  // link per step, aligned with faces[1:]
    while (prev_face[faces.back()] != faces.back()) {
        hops.push_back(prev_link[faces.back()]);
        faces.push_back(prev_face[faces.back()]);
    }
    std::reverse(faces.begin(), faces.end());
    std::reverse(hops.begin(), hops.end());

    std::vector<Point> pts{a};
    Point cur = a;
    for (size_t i = 0; i < hops.size(); ++i) {
        Point x = crossing_point(fg_.links[hops[i]].halfedge, a, b);
        if (!add_leg_points(pts, faces[i], cur, x, a, b))
            throw RoutingFailed("cannot realize leg inside cell");
        cur = x;
    }
    if (!add_leg_points(pts, faces.back(), cur, b, a, b))
        throw RoutingFailed("cannot realize final leg");

    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 2) throw RoutingFailed("degenerate route");
    Polyline curve{pts};
    placed_.push_back({pts, a, b});
    return curve;
}

}  // namespace sepgraph
