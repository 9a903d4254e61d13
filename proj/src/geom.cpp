#include "sepgraph/geom.hpp"

#include <algorithm>
#include <map>

namespace sepgraph {

bool point_less(const Point& a, const Point& b) {
    int cx = cmp(a.x, b.x);
    if (cx != 0) return cx < 0;
    return cmp(a.y, b.y) < 0;
}

int Scene::point_index(const std::string& name) const {
    for (size_t i = 0; i < points.size(); ++i)
        if (points[i].first == name) return static_cast<int>(i);
    return -1;
}

int orient(const Point& a, const Point& b, const Point& c) {
    Rat cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return sign_of(cross);
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
    if (orient(a, b, p) != 0) return false;
    return cmp(p.x, std::min(a.x, b.x)) >= 0 && cmp(p.x, std::max(a.x, b.x)) <= 0 &&
           cmp(p.y, std::min(a.y, b.y)) >= 0 && cmp(p.y, std::max(a.y, b.y)) <= 0;
}

namespace {

// Intersection point of the supporting lines of two non-parallel segments.
Point line_intersection(const Seg& s, const Seg& t) {
    Rat a1 = s.b.y - s.a.y, b1 = s.a.x - s.b.x;
    Rat c1 = a1 * s.a.x + b1 * s.a.y;
    Rat a2 = t.b.y - t.a.y, b2 = t.a.x - t.b.x;
    Rat c2 = a2 * t.a.x + b2 * t.a.y;
    Rat det = a1 * b2 - a2 * b1;
    return Point{(b2 * c1 - b1 * c2) / det, (a1 * c2 - a2 * c1) / det};
}

}  // namespace

SegIntersection segment_intersection(const Seg& s1, const Seg& s2) {
    int d1 = orient(s2.a, s2.b, s1.a);
    int d2 = orient(s2.a, s2.b, s1.b);
    int d3 = orient(s1.a, s1.b, s2.a);
    int d4 = orient(s1.a, s1.b, s2.b);

    if (d1 == 0 && d2 == 0) {
        // Collinear: project on the dominant axis of s1.
        bool use_x = s1.a.x != s1.b.x;
        auto key = [&](const Point& p) { return use_x ? p.x : p.y; };
        Point lo1 = s1.a, hi1 = s1.b, lo2 = s2.a, hi2 = s2.b;
        if (cmp(key(lo1), key(hi1)) > 0) std::swap(lo1, hi1);
        if (cmp(key(lo2), key(hi2)) > 0) std::swap(lo2, hi2);
        const Point& lo = cmp(key(lo1), key(lo2)) >= 0 ? lo1 : lo2;
        const Point& hi = cmp(key(hi1), key(hi2)) <= 0 ? hi1 : hi2;
        int c = cmp(key(lo), key(hi));
        if (c > 0) return IntersectEmpty{};
        if (c == 0) return IntersectPoint{lo};
        return IntersectOverlap{lo, hi};
    }

    if (d1 * d2 < 0 && d3 * d4 < 0)
        return IntersectPoint{line_intersection(s1, s2)};

    // Touching cases: an endpoint of one segment on the other.
    if (d1 == 0 && on_segment(s1.a, s2.a, s2.b)) return IntersectPoint{s1.a};
    if (d2 == 0 && on_segment(s1.b, s2.a, s2.b)) return IntersectPoint{s1.b};
    if (d3 == 0 && on_segment(s2.a, s1.a, s1.b)) return IntersectPoint{s2.a};
    if (d4 == 0 && on_segment(s2.b, s1.a, s1.b)) return IntersectPoint{s2.b};
    return IntersectEmpty{};
}

bool segments_properly_cross(const Seg& s1, const Seg& s2) {
    int d1 = orient(s2.a, s2.b, s1.a);
    int d2 = orient(s2.a, s2.b, s1.b);
    int d3 = orient(s1.a, s1.b, s2.a);
    int d4 = orient(s1.a, s1.b, s2.b);
    return d1 * d2 < 0 && d3 * d4 < 0;
}

RegionSide point_in_region(const Point& p, const Obstacle& ob) {
    const auto& v = ob.boundary.vertices;
    bool inside = false;
    for (size_t i = 0; i + 1 < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[i + 1];
        if (on_segment(p, a, b)) return RegionSide::Boundary;
        // Even-odd ray cast to the right, half-open in y to handle vertices.
        bool a_above = cmp(a.y, p.y) > 0;
        bool b_above = cmp(b.y, p.y) > 0;
        if (a_above == b_above) continue;
        // x coordinate where the edge crosses the horizontal line through p.
        Rat t = (p.y - a.y) / (b.y - a.y);
        Rat x_at = a.x + t * (b.x - a.x);
        if (cmp(x_at, p.x) > 0) inside = !inside;
    }
    return inside ? RegionSide::Inside : RegionSide::Outside;
}

bool point_on_polyline(const Point& p, const Polyline& pl) {
    const auto& v = pl.vertices;
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (on_segment(p, v[i], v[i + 1])) return true;
    return false;
}

int crossing_parity(const Polyline& c1, const Polyline& c2) {
    const auto& u = c1.vertices;
    const auto& w = c2.vertices;
    auto is_vertex = [](const Point& p, const std::vector<Point>& vs) {
        for (const auto& v : vs)
            if (p == v) return true;
        return false;
    };
    int count = 0;
    for (size_t i = 0; i + 1 < u.size(); ++i) {
        Seg si{u[i], u[i + 1]};
        for (size_t j = 0; j + 1 < w.size(); ++j) {
            Seg sj{w[j], w[j + 1]};
            SegIntersection res = segment_intersection(si, sj);
            if (std::holds_alternative<IntersectEmpty>(res)) continue;
            if (std::holds_alternative<IntersectOverlap>(res))
                throw NotTransverse("curves overlap along a segment");
            const Point& q = std::get<IntersectPoint>(res).p;
            if (is_vertex(q, u) || is_vertex(q, w))
                throw NotTransverse("intersection at a polyline vertex");
            ++count;
        }
    }
    return count & 1;
}

Rat polygon_signed_area2(const Polyline& closed) {
    const auto& v = closed.vertices;
    Rat area = 0;
    for (size_t i = 0; i + 1 < v.size(); ++i)
        area += v[i].x * v[i + 1].y - v[i + 1].x * v[i].y;
    return area;
}

namespace {

void validate_boundary(const Obstacle& ob, std::vector<Violation>& out) {
    const auto& v = ob.boundary.vertices;
    std::string who = "obstacle " + std::to_string(ob.id);
    if (v.size() < 4 || v.front() != v.back()) {
        out.push_back({"OpenBoundary", who});
        return;
    }
    size_t m = v.size() - 1;  // number of edges
    for (size_t i = 0; i < m; ++i) {
        if (v[i] == v[i + 1]) {
            out.push_back({"ZeroLengthEdge", who + " edge " + std::to_string(i)});
            return;
        }
    }
    // Simplicity: non-adjacent edges disjoint, adjacent edges share one point.
    for (size_t i = 0; i < m; ++i) {
        Seg si{v[i], v[i + 1]};
        for (size_t j = i + 1; j < m; ++j) {
            Seg sj{v[j], v[j + 1]};
            bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
            SegIntersection res = segment_intersection(si, sj);
            if (std::holds_alternative<IntersectEmpty>(res)) continue;
            if (std::holds_alternative<IntersectOverlap>(res)) {
                out.push_back({"SelfIntersection", who});
                return;
            }
            const Point& q = std::get<IntersectPoint>(res).p;
            Point shared = (j == i + 1) ? v[j] : v[0];
            if (!adjacent || q != shared) {
                out.push_back({"SelfIntersection", who});
                return;
            }
        }
    }
    if (sign_of(polygon_signed_area2(ob.boundary)) <= 0)
        out.push_back({"NotCounterClockwise", who});
    if (point_in_region(ob.ref_point, ob) == RegionSide::Outside)
        out.push_back({"RefPointOutside", who});
}

}  // namespace

std::vector<Violation> validate_scene(const Scene& sc) {
    std::vector<Violation> out;
    const int n = static_cast<int>(sc.obstacles.size());

    std::vector<bool> seen(n, false);
    for (const auto& ob : sc.obstacles) {
        if (ob.id < 0 || ob.id >= n || seen[ob.id]) {
            out.push_back({"BadObstacleId", std::to_string(ob.id)});
            return out;
        }
        seen[ob.id] = true;
    }

    for (const auto& ob : sc.obstacles) validate_boundary(ob, out);
    if (!out.empty()) return out;  // later checks assume sane boundaries

    // Named points (and the anchor) stay off every obstacle boundary.
    auto check_point = [&](const std::string& name, const Point& p) {
        for (const auto& ob : sc.obstacles)
            if (point_on_polyline(p, ob.boundary))
                out.push_back({"PointOnBoundary",
                               name + " on obstacle " + std::to_string(ob.id)});
    };
    std::map<std::string, int> name_count;
    for (const auto& [name, p] : sc.points) {
        if (++name_count[name] == 2)
            out.push_back({"DuplicatePointName", name});
        check_point(name, p);
    }
    if (sc.anchor) check_point("anchor", *sc.anchor);

    // Boundary pairs: finitely many intersection points, all transverse.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& vi = sc.obstacles[i].boundary.vertices;
            const auto& vj = sc.obstacles[j].boundary.vertices;
            bool overlap = false, tangent = false;
            for (size_t a = 0; a + 1 < vi.size() && !overlap; ++a) {
                Seg sa{vi[a], vi[a + 1]};
                for (size_t b = 0; b + 1 < vj.size(); ++b) {
                    Seg sb{vj[b], vj[b + 1]};
                    SegIntersection res = segment_intersection(sa, sb);
                    if (std::holds_alternative<IntersectEmpty>(res)) continue;
                    if (std::holds_alternative<IntersectOverlap>(res)) {
                        overlap = true;
                        break;
                    }
                    if (!segments_properly_cross(sa, sb)) tangent = true;
                }
            }
            std::string who = std::to_string(sc.obstacles[i].id) + "," +
                              std::to_string(sc.obstacles[j].id);
            if (overlap)
                out.push_back({"OverlappingBoundaries", who});
            else if (tangent)
                out.push_back({"BoundaryTangency", who});
        }
    }

    for (auto [a, b] : sc.pairs) {
        if (a < 0 || b < 0 || a >= static_cast<int>(sc.points.size()) ||
            b >= static_cast<int>(sc.points.size()))
            out.push_back({"BadPair", std::to_string(a) + "," + std::to_string(b)});
        else if (a == b)
            out.push_back({"BadPair", "identical indices " + std::to_string(a)});
    }
    return out;
}

}  // namespace sepgraph
