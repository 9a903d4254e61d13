#include "sepgraph/arrangement.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace sepgraph {

namespace {

// CCW order of directions, starting from the positive x axis.
int direction_half(const Rat& dx, const Rat& dy) {
    int sy = sign_of(dy);
    if (sy != 0) return sy > 0 ? 0 : 1;
    return sign_of(dx) > 0 ? 0 : 1;
}

bool direction_less(const Point& o, const Point& a, const Point& b) {
    Rat ax = a.x - o.x, ay = a.y - o.y;
    Rat bx = b.x - o.x, by = b.y - o.y;
    int ha = direction_half(ax, ay), hb = direction_half(bx, by);
    if (ha != hb) return ha < hb;
    Rat cross = ax * by - ay * bx;
    int s = sign_of(cross);
    if (s != 0) return s > 0;
    return false;  // equal directions cannot happen for distinct edges at o
}

struct WalkPolygon {
    // Closed sequence of directed segment endpoints (origin of each edge).
    std::vector<std::pair<Point, Point>> edges;

    bool contains(const Point& p) const {
        bool inside = false;
        for (const auto& [a, b] : edges) {
            bool a_above = cmp(a.y, p.y) > 0;
            bool b_above = cmp(b.y, p.y) > 0;
            if (a_above == b_above) continue;
            Rat t = (p.y - a.y) / (b.y - a.y);
            Rat x_at = a.x + t * (b.x - a.x);
            if (cmp(x_at, p.x) > 0) inside = !inside;
        }
        return inside;
    }
};

struct DSU {
    std::vector<int> parent;
    explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Arrangement build_arrangement(const std::vector<std::pair<Seg, Provenance>>& segments) {
    const int m = static_cast<int>(segments.size());
    for (int i = 0; i < m; ++i)
        if (segments[i].first.a == segments[i].first.b)
            throw DegenerateError("zero-length input segment " + std::to_string(i));

    // Split points per input segment (endpoints + all pairwise intersections).
    std::vector<std::vector<Point>> splits(m);
    for (int i = 0; i < m; ++i) {
        splits[i].push_back(segments[i].first.a);
        splits[i].push_back(segments[i].first.b);
    }
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            SegIntersection res =
                segment_intersection(segments[i].first, segments[j].first);
            if (std::holds_alternative<IntersectOverlap>(res))
                throw OverlapError("segments " + std::to_string(i) + " and " +
                                   std::to_string(j) + " overlap");
            if (const auto* pt = std::get_if<IntersectPoint>(&res)) {
                splits[i].push_back(pt->p);
                splits[j].push_back(pt->p);
            }
        }
    }

    Arrangement arr;
    std::map<Point, int, decltype(&point_less)> vertex_id(&point_less);
    auto vid = [&](const Point& p) {
        auto it = vertex_id.find(p);
        if (it != vertex_id.end()) return it->second;
        int id = static_cast<int>(arr.vertices.size());
        arr.vertices.push_back({p, {}});
        vertex_id.emplace(p, id);
        return id;
    };

    for (int i = 0; i < m; ++i) {
        const Seg& s = segments[i].first;
        auto& pts = splits[i];
        Rat dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
        auto param_less = [&](const Point& p, const Point& q) {
            // Order along the segment direction.
            Rat tp = (p.x - s.a.x) * dx + (p.y - s.a.y) * dy;
            Rat tq = (q.x - s.a.x) * dx + (q.y - s.a.y) * dy;
            return cmp(tp, tq) < 0;
        };
        std::sort(pts.begin(), pts.end(), param_less);
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        for (size_t k = 0; k + 1 < pts.size(); ++k) {
            int u = vid(pts[k]);
            int v = vid(pts[k + 1]);
            int h = static_cast<int>(arr.halfedges.size());
            arr.halfedges.push_back({u, v, h + 1, -1, -1, segments[i].second});
            arr.halfedges.push_back({v, u, h, -1, -1, segments[i].second});
            arr.vertices[u].out.push_back(h);
            arr.vertices[v].out.push_back(h + 1);
        }
    }

    // CCW order of outgoing edges around every vertex.
    for (auto& v : arr.vertices) {
        std::sort(v.out.begin(), v.out.end(), [&](int h1, int h2) {
            const Point& a = arr.vertices[arr.halfedges[h1].target].p;
            const Point& b = arr.vertices[arr.halfedges[h2].target].p;
            return direction_less(v.p, a, b);
        });
    }

    // next(h): one step clockwise from twin(h) around the target vertex,
    // which traces every face cycle with the face interior on the left.
    for (int h = 0; h < static_cast<int>(arr.halfedges.size()); ++h) {
        int tw = arr.halfedges[h].twin;
        const auto& out = arr.vertices[arr.halfedges[h].target].out;
        auto it = std::find(out.begin(), out.end(), tw);
        size_t pos = static_cast<size_t>(it - out.begin());
        arr.halfedges[h].next = out[(pos + out.size() - 1) % out.size()];
    }

    // Trace cycles.
    std::vector<int> cycle_of(arr.halfedges.size(), -1);
    for (int h0 = 0; h0 < static_cast<int>(arr.halfedges.size()); ++h0) {
        if (cycle_of[h0] != -1) continue;
        Arrangement::Cycle cyc;
        cyc.area2 = 0;
        int h = h0;
        do {
            cycle_of[h] = static_cast<int>(arr.cycles.size());
            arr.halfedges[h].cycle = cycle_of[h];
            cyc.halfedges.push_back(h);
            const Point& po = arr.vertices[arr.halfedges[h].origin].p;
            const Point& pt = arr.vertices[arr.halfedges[h].target].p;
            cyc.area2 += po.x * pt.y - pt.x * po.y;
            h = arr.halfedges[h].next;
        } while (h != h0);
        arr.cycles.push_back(std::move(cyc));
    }

    // Connected components of the embedded graph.
    DSU dsu(static_cast<int>(arr.vertices.size()));
    for (const auto& he : arr.halfedges) dsu.unite(he.origin, he.target);
    std::map<int, int> comp_id;
    for (int v = 0; v < static_cast<int>(arr.vertices.size()); ++v) {
        int root = dsu.find(v);
        if (!comp_id.count(root)) {
            int id = static_cast<int>(comp_id.size());
            comp_id[root] = id;
        }
    }
    arr.num_components = static_cast<int>(comp_id.size());
    for (auto& cyc : arr.cycles)
        cyc.component = comp_id[dsu.find(arr.halfedges[cyc.halfedges[0]].origin)];

    // Bounded faces: one per positive-area cycle.
    std::vector<WalkPolygon> polys(arr.cycles.size());
    for (size_t c = 0; c < arr.cycles.size(); ++c)
        for (int h : arr.cycles[c].halfedges)
            polys[c].edges.push_back({arr.vertices[arr.halfedges[h].origin].p,
                                      arr.vertices[arr.halfedges[h].target].p});

    for (size_t c = 0; c < arr.cycles.size(); ++c) {
        if (sign_of(arr.cycles[c].area2) > 0) {
            arr.cycles[c].face = static_cast<int>(arr.faces.size());
            arr.faces.push_back({{static_cast<int>(c)}, false});
        }
    }
    arr.unbounded_face = static_cast<int>(arr.faces.size());
    arr.faces.push_back({{}, true});

    // Every non-positive cycle is the outer walk of its component; attach it
    // to the innermost bounded cycle of another component that contains it,
    // or to the unbounded face.
    for (size_t c = 0; c < arr.cycles.size(); ++c) {
        if (sign_of(arr.cycles[c].area2) > 0) continue;
        const Point& probe = arr.vertices[arr.halfedges[arr.cycles[c].halfedges[0]].origin].p;
        int best = -1;
        for (size_t d = 0; d < arr.cycles.size(); ++d) {
            if (sign_of(arr.cycles[d].area2) <= 0) continue;
            if (arr.cycles[d].component == arr.cycles[c].component) continue;
            if (!polys[d].contains(probe)) continue;
            if (best == -1 || cmp(arr.cycles[d].area2, arr.cycles[best].area2) < 0)
                best = static_cast<int>(d);
        }
        int face = best == -1 ? arr.unbounded_face : arr.cycles[best].face;
        arr.cycles[c].face = face;
        arr.faces[face].cycles.push_back(static_cast<int>(c));
    }
    return arr;
}

bool Arrangement::on_any_edge(const Point& p) const {
    for (const auto& v : vertices)
        if (v.p == p) return true;
    for (int h = 0; h < static_cast<int>(halfedges.size()); h += 2)
        if (on_segment(p, vertices[halfedges[h].origin].p,
                       vertices[halfedges[h].target].p))
            return true;
    return false;
}

int Arrangement::locate(const Point& p) const {
    if (on_any_edge(p)) throw OnBoundary("point on arrangement edge or vertex");
    int best_cycle = -1;
    for (size_t c = 0; c < cycles.size(); ++c) {
        if (sign_of(cycles[c].area2) <= 0) continue;
        WalkPolygon poly;
        for (int h : cycles[c].halfedges)
            poly.edges.push_back({vertices[halfedges[h].origin].p,
                                  vertices[halfedges[h].target].p});
        if (!poly.contains(p)) continue;
        if (best_cycle == -1 || cmp(cycles[c].area2, cycles[best_cycle].area2) < 0)
            best_cycle = static_cast<int>(c);
    }
    return best_cycle == -1 ? unbounded_face : cycles[best_cycle].face;
}

Point Arrangement::face_sample(int face) const {
    if (faces[face].unbounded) {
        Rat max_x = 0, max_y = 0;
        bool first = true;
        for (const auto& v : vertices) {
            if (first || cmp(v.p.x, max_x) > 0) max_x = v.p.x;
            if (first || cmp(v.p.y, max_y) > 0) max_y = v.p.y;
            first = false;
        }
        return Point{max_x + 1, max_y + 1};
    }
    // Walk midpoints of the outer cycle, pushed left into the interior,
    // with the exact locate() as the certificate. Face walks need not be
    // simple, so an ear-based pick is not reliable here.
    const Cycle& cyc = cycles[faces[face].cycles[0]];
    for (int h : cyc.halfedges) {
        const Point& a = vertices[halfedges[h].origin].p;
        const Point& b = vertices[halfedges[h].target].p;
        Point mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
        Rat nx = a.y - b.y, ny = b.x - a.x;  // left normal of a->b
        Rat eps(1, 2);
        for (int iter = 0; iter < 200; ++iter, eps /= 2) {
            Point cand{mid.x + eps * nx, mid.y + eps * ny};
            if (on_any_edge(cand)) continue;
            if (locate(cand) == face) return cand;
        }
    }
    throw std::logic_error("face_sample failed to find an interior point");
}

bool Arrangement::euler_ok() const {
    long v = static_cast<long>(vertices.size());
    long e = num_edges();
    long f = static_cast<long>(faces.size());
    return v - e + f == 1 + num_components;
}

FaceGraph FaceGraph::of(const Arrangement& arr) {
    FaceGraph fg;
    fg.num_faces = static_cast<int>(arr.faces.size());
    fg.adj.resize(fg.num_faces);
    for (int h = 0; h < static_cast<int>(arr.halfedges.size()); h += 2) {
        int fa = arr.cycles[arr.halfedges[h].cycle].face;
        int fb = arr.cycles[arr.halfedges[h + 1].cycle].face;
        int link = static_cast<int>(fg.links.size());
        fg.links.push_back({fa, fb, h});
        fg.adj[fa].push_back(link);
        if (fb != fa) fg.adj[fb].push_back(link);
    }
    return fg;
}

std::vector<std::pair<Seg, Provenance>> boundary_segments(
    const Scene& sc, const std::vector<int>& obstacle_ids) {
    std::vector<std::pair<Seg, Provenance>> out;
    for (int id : obstacle_ids) {
        const auto& v = sc.obstacles[id].boundary.vertices;
        for (size_t i = 0; i + 1 < v.size(); ++i) {
            Provenance prov{Provenance::Kind::ObstacleBoundary, id,
                            static_cast<int>(out.size())};
            out.push_back({Seg{v[i], v[i + 1]}, prov});
        }
    }
    return out;
}

bool face_inside_union(const Arrangement& arr, int face,
                       const Scene& sc, const std::vector<int>& obstacle_ids) {
    if (arr.faces[face].unbounded) return false;
    Point sample = arr.face_sample(face);
    for (int id : obstacle_ids)
        if (point_in_region(sample, sc.obstacles[id]) != RegionSide::Outside)
            return true;
    return false;
}

bool separates_geometric(const Scene& sc, const std::set<int>& keep,
                         const std::string& a, const std::string& b) {
    auto violations = validate_scene(sc);
    if (!violations.empty())
        throw std::invalid_argument("invalid scene: " + violations[0].code);
    int ia = sc.point_index(a), ib = sc.point_index(b);
    if (ia < 0 || ib < 0) throw std::invalid_argument("unknown point name");
    const Point& pa = sc.point_at(ia);
    const Point& pb = sc.point_at(ib);

    std::vector<int> kept(keep.begin(), keep.end());
    for (int id : kept) {
        if (point_in_region(pa, sc.obstacles[id]) != RegionSide::Outside) return true;
        if (point_in_region(pb, sc.obstacles[id]) != RegionSide::Outside) return true;
    }
    if (kept.empty()) return false;

    Arrangement arr = build_arrangement(boundary_segments(sc, kept));
    int fa = arr.locate(pa);
    int fb = arr.locate(pb);
    if (fa == fb) return false;

    // Connectivity of the complement across free faces. Since every
    // arrangement edge lies on a kept boundary, two free faces never share
    // an edge; the search is kept for the contract's sake.
    FaceGraph fg = FaceGraph::of(arr);
    std::vector<bool> free_face(arr.faces.size());
    for (size_t f = 0; f < arr.faces.size(); ++f)
        free_face[f] = !face_inside_union(arr, static_cast<int>(f), sc, kept);
    std::vector<bool> seen(arr.faces.size(), false);
    std::queue<int> q;
    q.push(fa);
    seen[fa] = true;
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        if (f == fb) return false;
        for (int li : fg.adj[f]) {
            int g = fg.links[li].face_a == f ? fg.links[li].face_b : fg.links[li].face_a;
            if (!seen[g] && free_face[g]) {
                seen[g] = true;
                q.push(g);
            }
        }
    }
    return true;
}

SeparationTable::SeparationTable(const Scene& sc) {
    n_ = static_cast<int>(sc.obstacles.size());
    std::vector<int> all(n_);
    std::iota(all.begin(), all.end(), 0);
    arr_ = build_arrangement(boundary_segments(sc, all));
    fg_ = FaceGraph::of(arr_);

    face_cover_.resize(arr_.faces.size(), 0);
    for (size_t f = 0; f < arr_.faces.size(); ++f) {
        if (arr_.faces[f].unbounded) continue;
        Point sample = arr_.face_sample(static_cast<int>(f));
        for (int id = 0; id < n_; ++id)
            if (point_in_region(sample, sc.obstacles[id]) != RegionSide::Outside)
                face_cover_[f] |= 1u << id;
    }
    point_cover_.resize(sc.points.size(), 0);
    point_face_.resize(sc.points.size());
    for (size_t i = 0; i < sc.points.size(); ++i) {
        for (int id = 0; id < n_; ++id)
            if (point_in_region(sc.points[i].second, sc.obstacles[id]) !=
                RegionSide::Outside)
                point_cover_[i] |= 1u << id;
        point_face_[i] = arr_.locate(sc.points[i].second);
    }
    link_obstacle_.resize(fg_.links.size());
    for (size_t li = 0; li < fg_.links.size(); ++li)
        link_obstacle_[li] = arr_.halfedges[fg_.links[li].halfedge].prov.id;
}

bool SeparationTable::separates(unsigned keep_mask, int a, int b) const {
    if (point_cover_[a] & keep_mask) return true;
    if (point_cover_[b] & keep_mask) return true;
    // Merge free faces across edges of discarded obstacles; faces covered
    // by a kept obstacle are blocked.
    DSU dsu(static_cast<int>(arr_.faces.size()));
    for (size_t li = 0; li < fg_.links.size(); ++li) {
        if (keep_mask & (1u << link_obstacle_[li])) continue;
        int fa = fg_.links[li].face_a, fb = fg_.links[li].face_b;
        if (face_cover_[fa] & keep_mask) continue;
        if (face_cover_[fb] & keep_mask) continue;
        dsu.unite(fa, fb);
    }
    // The points' faces are free of kept obstacles (their covers were
    // checked above and faces cannot straddle a boundary).
    return dsu.find(point_face_[a]) != dsu.find(point_face_[b]);
}

}  // namespace sepgraph
