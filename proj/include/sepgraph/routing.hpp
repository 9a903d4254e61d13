#ifndef SEPGRAPH_ROUTING_HPP
#define SEPGRAPH_ROUTING_HPP

#include "sepgraph/arrangement.hpp"
#include "sepgraph/geom.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace sepgraph {

/// Routes polylines through the convex cells of a slab decomposition:
/// obstacle boundaries plus a bounding box and vertical scaffold lines
/// through every event x-coordinate. Crossing points on shared cell edges
/// are chosen at pairwise-distinct rational parameters, and routed curves
/// stay transverse to boundaries and to each other.
class CellRouter {
  public:
    CellRouter(const Scene& sc, const std::vector<int>& obstacle_ids,
               std::vector<Point> forbidden, std::uint64_t seed = 0);

    /// Route a -> b. With helper_only set, legs cross scaffold edges only,
    /// so the result avoids every listed obstacle's closed region.
    Polyline route(const Point& a, const Point& b, bool helper_only = false);

    const Arrangement& cells() const { return arr_; }

  private:
    struct PlacedCurve {
        std::vector<Point> vertices;
        Point first;
        Point last;
    };

    std::vector<int> cells_of_point(const Point& p) const;
    bool leg_ok(const Point& p, const Point& q, const Point& a, const Point& b) const;
    bool add_leg_points(std::vector<Point>& out, int face, const Point& u,
                        const Point& w, const Point& a, const Point& b);
    Point crossing_point(int halfedge, const Point& a, const Point& b);

    Arrangement arr_;
    FaceGraph fg_;
    std::vector<Point> forbidden_;
    std::vector<PlacedCurve> placed_;
    std::map<int, int> edge_uses_;  // undirected edge index -> params used
    std::map<int, Point> sample_cache_;
    std::uint64_t seed_ = 0;
};

}  // namespace sepgraph

#endif
