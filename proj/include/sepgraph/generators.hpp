#ifndef SEPGRAPH_GENERATORS_HPP
#define SEPGRAPH_GENERATORS_HPP

#include "sepgraph/geom.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sepgraph {

// Canonical regression scenes.

/// Two interlocking C-shaped polygons forming an annulus around s; either
/// one alone leaves a gap. Points s (inside the hole) and t (outside).
Scene scene_ring2();

/// A single square around s; t outside.
Scene scene_contain();

struct GeneratorSpec {
    enum class Family { Ring, NestedRings, Grid, RandomRects };
    Family family = Family::Ring;
    int m = 4;       // ring blocks
    int depth = 2;   // nested rings
    int w = 2, h = 2;  // grid slats
    int n = 4;       // random rectangles
    std::uint64_t seed = 0;
    int scale = 10;

    // Point layout: k separation points (named a0..a{k-1}, all-pairs P) or
    // the default s/t pair.
    int k_points = 0;
};

/// Seed-deterministic scene generation; every generated scene passes
/// validate_scene.
Scene generate_scene(const GeneratorSpec& spec);

/// m overlapping quadrilateral blocks forming a ring around s; the minimum
/// (s, t) separator is exactly m by construction.
Scene gen_ring(int m, int scale = 10);
Scene gen_nested_rings(int m, int depth, int scale = 10);
Scene gen_grid(int w, int h);
Scene gen_random_rects(int n, std::uint64_t seed, int k_points = 0);

}  // namespace sepgraph

#endif
