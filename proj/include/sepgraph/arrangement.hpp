#ifndef SEPGRAPH_ARRANGEMENT_HPP
#define SEPGRAPH_ARRANGEMENT_HPP

#include "sepgraph/geom.hpp"

#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace sepgraph {

struct Provenance {
    enum class Kind { ObstacleBoundary, ReferenceCurve, Helper };
    Kind kind = Kind::Helper;
    int id = -1;           // obstacle id or curve index
    int input_index = -1;  // originating input segment

    bool operator==(const Provenance& o) const {
        return kind == o.kind && id == o.id && input_index == o.input_index;
    }
};

struct OverlapError : std::runtime_error {
    explicit OverlapError(const std::string& w) : std::runtime_error(w) {}
};
struct DegenerateError : std::runtime_error {
    explicit DegenerateError(const std::string& w) : std::runtime_error(w) {}
};
struct OnBoundary : std::runtime_error {
    explicit OnBoundary(const std::string& w) : std::runtime_error(w) {}
};

/// Planar subdivision of a set of pairwise non-overlapping segments.
/// Half-edges carry the provenance of their originating input segment.
class Arrangement {
  public:
    struct Vertex {
        Point p;
        std::vector<int> out;  // outgoing half-edges, CCW by direction
    };
    struct HalfEdge {
        int origin = -1;
        int target = -1;
        int twin = -1;
        int next = -1;
        int cycle = -1;
        Provenance prov;
    };
    struct Cycle {
        std::vector<int> halfedges;
        Rat area2;
        int component = -1;
        int face = -1;
    };
    struct Face {
        std::vector<int> cycles;
        bool unbounded = false;
    };

    std::vector<Vertex> vertices;
    std::vector<HalfEdge> halfedges;
    std::vector<Cycle> cycles;
    std::vector<Face> faces;
    int unbounded_face = -1;
    int num_components = 0;

    int num_edges() const { return static_cast<int>(halfedges.size()) / 2; }

    /// Face whose interior contains p; throws OnBoundary if p lies on an
    /// edge or vertex of the subdivision.
    int locate(const Point& p) const;

    /// A point strictly inside the given face, off every edge and vertex.
    Point face_sample(int face) const;

    /// V - E + F = 1 + C on the embedded graph.
    bool euler_ok() const;

    bool on_any_edge(const Point& p) const;
};

Arrangement build_arrangement(const std::vector<std::pair<Seg, Provenance>>& segments);

/// Dual graph of faces; one link per arrangement edge shared by two faces.
struct FaceGraph {
    struct Link {
        int face_a;
        int face_b;
        int halfedge;  // one of the two twins
    };
    int num_faces = 0;
    std::vector<Link> links;
    std::vector<std::vector<int>> adj;  // face -> link indices

    static FaceGraph of(const Arrangement& arr);
};

/// Boundary segments of the given obstacles, tagged with their provenance.
std::vector<std::pair<Seg, Provenance>> boundary_segments(
    const Scene& sc, const std::vector<int>& obstacle_ids);

/// True iff an interior sample point of the face lies inside (or on the
/// boundary of) some listed obstacle's closed region.
bool face_inside_union(const Arrangement& arr, int face,
                       const Scene& sc, const std::vector<int>& obstacle_ids);

/// Ground-truth separation oracle: a and b are separated by the union of
/// the kept obstacles' closed regions.
bool separates_geometric(const Scene& sc, const std::set<int>& keep,
                         const std::string& a, const std::string& b);

/// Per-scene exhaustive oracle: one arrangement of all boundaries, then
/// subset queries by merging faces across edges of discarded obstacles.
class SeparationTable {
  public:
    explicit SeparationTable(const Scene& sc);

    /// separates(keep_mask, point_index_a, point_index_b)
    bool separates(unsigned keep_mask, int a, int b) const;

  private:
    int n_ = 0;
    Arrangement arr_;
    FaceGraph fg_;
    std::vector<unsigned> face_cover_;   // face -> obstacle membership mask
    std::vector<unsigned> point_cover_;  // named point -> membership mask
    std::vector<int> point_face_;
    std::vector<int> link_obstacle_;  // face-graph link -> owning obstacle
};

}  // namespace sepgraph

#endif
