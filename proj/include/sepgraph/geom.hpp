#ifndef SEPGRAPH_GEOM_HPP
#define SEPGRAPH_GEOM_HPP

#include "sepgraph/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sepgraph {

struct Point {
    Rat x;
    Rat y;

    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point& o) const { return !(*this == o); }
};

/// Lexicographic (x, y) order; used as the canonical point order everywhere.
bool point_less(const Point& a, const Point& b);

struct Seg {
    Point a;
    Point b;
};

/// Open polygonal curve, >= 2 vertices, consecutive vertices distinct.
struct Polyline {
    std::vector<Point> vertices;
};

/// Closed, simple, counterclockwise polygonal region (first vertex == last).
struct Obstacle {
    int id = 0;
    Polyline boundary;
    Point ref_point;
};

struct Scene {
    std::vector<Obstacle> obstacles;
    std::vector<std::pair<std::string, Point>> points;
    std::vector<std::pair<int, int>> pairs;  // indices into points
    std::optional<Point> anchor;

    int point_index(const std::string& name) const;
    const Point& point_at(int idx) const { return points[idx].second; }
};

// ---------------------------------------------------------------------------
// Predicates

/// Sign of the cross product (b-a) x (c-a): +1 left turn, 0 collinear, -1 right.
int orient(const Point& a, const Point& b, const Point& c);

/// True iff p lies on the closed segment [a, b].
bool on_segment(const Point& p, const Point& a, const Point& b);

struct IntersectEmpty {};
struct IntersectPoint {
    Point p;
};
struct IntersectOverlap {
    Point a;
    Point b;  // positive-length collinear overlap, a != b
};
using SegIntersection = std::variant<IntersectEmpty, IntersectPoint, IntersectOverlap>;

/// Exact classification of the intersection of two positive-length segments.
SegIntersection segment_intersection(const Seg& s1, const Seg& s2);

enum class RegionSide { Outside, Boundary, Inside };

/// Even-odd classification of p against the closed region of ob.
RegionSide point_in_region(const Point& p, const Obstacle& ob);

struct NotTransverse : std::runtime_error {
    explicit NotTransverse(const std::string& what) : std::runtime_error(what) {}
};

/// Parity (mod 2) of the number of proper crossings of c1 and c2.
/// Throws NotTransverse on overlaps or any vertex-on-curve incidence.
int crossing_parity(const Polyline& c1, const Polyline& c2);

// ---------------------------------------------------------------------------
// Scene validation

struct Violation {
    std::string code;
    std::string detail;
};

/// Empty iff every Scene invariant holds. Violations are data, not errors.
std::vector<Violation> validate_scene(const Scene& sc);

// Helpers shared by other modules.
Rat polygon_signed_area2(const Polyline& closed);  // twice the signed area
bool point_on_polyline(const Point& p, const Polyline& pl);
bool segments_properly_cross(const Seg& s1, const Seg& s2);

}  // namespace sepgraph

#endif
