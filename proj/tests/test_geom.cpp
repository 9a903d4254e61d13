#include "sepgraph/geom.hpp"
#include "sepgraph/generators.hpp"

#include <doctest.h>

#include <random>

using namespace sepgraph;

namespace {

Point pt(long x, long y) { return Point{Rat(x), Rat(y)}; }
Point ptq(long xn, long xd, long yn, long yd) {
    return Point{rat(xn, xd), rat(yn, yd)};
}

Obstacle unit_square() {
    Obstacle ob;
    ob.id = 0;
    ob.boundary.vertices = {pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1), pt(0, 0)};
    ob.ref_point = ptq(1, 2, 1, 2);
    return ob;
}

// Independent crossing counter: plain pairwise segment tests.
int brute_crossings(const Polyline& a, const Polyline& b) {
    int count = 0;
    for (size_t i = 0; i + 1 < a.vertices.size(); ++i)
        for (size_t j = 0; j + 1 < b.vertices.size(); ++j) {
            auto res = segment_intersection(Seg{a.vertices[i], a.vertices[i + 1]},
                                            Seg{b.vertices[j], b.vertices[j + 1]});
            if (std::holds_alternative<IntersectPoint>(res)) ++count;
        }
    return count;
}

}  // namespace

TEST_CASE("orient basic examples") {
    CHECK(orient(pt(0, 0), pt(1, 0), pt(0, 1)) == 1);
    CHECK(orient(pt(0, 0), pt(1, 0), pt(2, 0)) == 0);
    CHECK(orient(pt(0, 0), pt(1, 0), pt(1, -1)) == -1);
}

TEST_CASE("orient properties: antisymmetry and translation invariance") {
    std::mt19937_64 rng(7);
    auto rp = [&]() {
        return Point{rat(static_cast<long>(rng() % 41) - 20,
                         static_cast<long>(rng() % 4) + 1),
                     rat(static_cast<long>(rng() % 41) - 20,
                         static_cast<long>(rng() % 4) + 1)};
    };
    for (int it = 0; it < 300; ++it) {
        Point a = rp(), b = rp(), c = rp();
        CHECK(orient(a, b, c) == -orient(a, c, b));
        Rat dx(static_cast<long>(rng() % 21) - 10);
        Rat dy(static_cast<long>(rng() % 21) - 10);
        Point a2{a.x + dx, a.y + dy}, b2{b.x + dx, b.y + dy}, c2{c.x + dx, c.y + dy};
        CHECK(orient(a, b, c) == orient(a2, b2, c2));
    }
}

TEST_CASE("segment intersection classification") {
    auto res = segment_intersection(Seg{pt(0, 0), pt(2, 0)}, Seg{pt(1, -1), pt(1, 1)});
    REQUIRE(std::holds_alternative<IntersectPoint>(res));
    CHECK(std::get<IntersectPoint>(res).p == pt(1, 0));

    res = segment_intersection(Seg{pt(0, 0), pt(1, 0)}, Seg{pt(2, 0), pt(3, 0)});
    CHECK(std::holds_alternative<IntersectEmpty>(res));

    res = segment_intersection(Seg{pt(0, 0), pt(2, 0)}, Seg{pt(1, 0), pt(3, 0)});
    REQUIRE(std::holds_alternative<IntersectOverlap>(res));
    CHECK(std::get<IntersectOverlap>(res).a == pt(1, 0));
    CHECK(std::get<IntersectOverlap>(res).b == pt(2, 0));

    // touching endpoints
    res = segment_intersection(Seg{pt(0, 0), pt(1, 1)}, Seg{pt(1, 1), pt(2, 0)});
    REQUIRE(std::holds_alternative<IntersectPoint>(res));
    CHECK(std::get<IntersectPoint>(res).p == pt(1, 1));
}

TEST_CASE("point in region") {
    Obstacle sq = unit_square();
    CHECK(point_in_region(ptq(1, 2, 1, 2), sq) == RegionSide::Inside);
    CHECK(point_in_region(pt(5, 5), sq) == RegionSide::Outside);
    CHECK(point_in_region(ptq(0, 1, 1, 2), sq) == RegionSide::Boundary);
    CHECK(point_in_region(pt(0, 0), sq) == RegionSide::Boundary);
    // just outside each wall
    CHECK(point_in_region(ptq(-1, 100, 1, 2), sq) == RegionSide::Outside);
    CHECK(point_in_region(ptq(101, 100, 1, 2), sq) == RegionSide::Outside);
}

TEST_CASE("crossing parity basic examples") {
    Polyline vertical{{pt(1, -1), pt(1, 1)}};
    Polyline horizontal{{pt(0, 0), pt(2, 0)}};
    CHECK(crossing_parity(vertical, horizontal) == 1);

    Polyline far{{pt(10, 10), pt(11, 11)}};
    CHECK(crossing_parity(vertical, far) == 0);

    // U-shaped polyline crossing a horizontal line twice
    Polyline u{{pt(0, 2), pt(0, -1), pt(3, -1), pt(3, 2)}};
    Polyline line{{pt(-1, 0), pt(4, 0)}};
    int brute = brute_crossings(u, line);
    CHECK(brute == 2);
    CHECK(crossing_parity(u, line) == brute % 2);
}

TEST_CASE("crossing parity rejects non-transverse inputs") {
    Polyline a{{pt(0, 0), pt(2, 0)}};
    Polyline shares_vertex{{pt(2, 0), pt(3, 1)}};
    CHECK_THROWS_AS((void)crossing_parity(a, shares_vertex), NotTransverse);

    Polyline overlapping{{pt(1, 0), pt(3, 0)}};
    CHECK_THROWS_AS((void)crossing_parity(a, overlapping), NotTransverse);

    Polyline vertex_on_curve{{pt(1, 0), pt(1, 5)}};  // its endpoint sits on a
    CHECK_THROWS_AS((void)crossing_parity(a, vertex_on_curve), NotTransverse);
}

TEST_CASE("crossing parity is symmetric") {
    std::mt19937_64 rng(11);
    auto rp = [&]() {
        return Point{Rat(static_cast<long>(rng() % 17) - 8),
                     Rat(static_cast<long>(rng() % 17) - 8)};
    };
    int checked = 0;
    for (int it = 0; it < 400 && checked < 120; ++it) {
        Polyline c1{{rp(), rp(), rp()}};
        Polyline c2{{rp(), rp(), rp()}};
        bool ok = true;
        for (size_t i = 0; i + 1 < c1.vertices.size() && ok; ++i)
            if (c1.vertices[i] == c1.vertices[i + 1]) ok = false;
        for (size_t i = 0; i + 1 < c2.vertices.size() && ok; ++i)
            if (c2.vertices[i] == c2.vertices[i + 1]) ok = false;
        if (!ok) continue;
        try {
            int p1 = crossing_parity(c1, c2);
            int p2 = crossing_parity(c2, c1);
            CHECK(p1 == p2);
            ++checked;
        } catch (const NotTransverse&) {
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("closed curve parity matches containment flips") {
    // For the square boundary and points a, b off it: a two-leg chain from a
    // to b crosses the boundary oddly iff exactly one endpoint is inside.
    Obstacle sq;
    sq.id = 0;
    sq.boundary.vertices = {pt(-2, -2), pt(2, -2), pt(2, 2), pt(-2, 2), pt(-2, -2)};
    sq.ref_point = pt(0, 0);

    std::mt19937_64 rng(23);
    auto rp = [&]() {
        return Point{rat(2 * (static_cast<long>(rng() % 9) - 4) + 1, 2),
                     rat(2 * (static_cast<long>(rng() % 9) - 4) + 1, 2)};
    };
    int checked = 0;
    for (int it = 0; it < 500 && checked < 150; ++it) {
        Point a = rp(), b = rp(), m = rp();
        if (a == b || a == m || b == m) continue;
        Polyline chain{{a, m, b}};
        try {
            int parity = crossing_parity(chain, sq.boundary);
            bool ia = point_in_region(a, sq) == RegionSide::Inside;
            bool ib = point_in_region(b, sq) == RegionSide::Inside;
            CHECK(parity == static_cast<int>(ia != ib));
            ++checked;
        } catch (const NotTransverse&) {
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("validate_scene accepts the canonical scenes") {
    CHECK(validate_scene(scene_ring2()).empty());
    CHECK(validate_scene(scene_contain()).empty());
}

TEST_CASE("validate_scene reports named violations") {
    Scene sc = scene_contain();
    sc.points[0].second = pt(2, 0);  // s on the right edge of the square
    auto v = validate_scene(sc);
    REQUIRE(!v.empty());
    CHECK(v[0].code == "PointOnBoundary");

    Scene sc2 = scene_contain();
    Obstacle dup = sc2.obstacles[0];
    dup.id = 1;
    // shares the full left edge with obstacle 0
    dup.boundary.vertices = {pt(-2, -2), pt(2, -2), pt(2, 2), pt(-2, 2), pt(-2, -2)};
    for (auto& p : dup.boundary.vertices) p.x -= 4;
    dup.ref_point = pt(-4, 0);
    sc2.obstacles.push_back(dup);
    auto v2 = validate_scene(sc2);
    REQUIRE(!v2.empty());
    CHECK(v2[0].code == "OverlappingBoundaries");

    Scene sc3 = scene_contain();
    std::reverse(sc3.obstacles[0].boundary.vertices.begin(),
                 sc3.obstacles[0].boundary.vertices.end());
    auto v3 = validate_scene(sc3);
    REQUIRE(!v3.empty());
    CHECK(v3[0].code == "NotCounterClockwise");

    Scene sc4 = scene_contain();
    sc4.pairs.push_back({0, 0});
    auto v4 = validate_scene(sc4);
    REQUIRE(!v4.empty());
    CHECK(v4[0].code == "BadPair");
}

TEST_CASE("tangential obstacle contacts are rejected") {
    Scene sc;
    Obstacle a;
    a.id = 0;
    a.boundary.vertices = {pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2), pt(0, 0)};
    a.ref_point = pt(1, 1);
    Obstacle b;
    b.id = 1;
    b.boundary.vertices = {pt(2, 2), pt(4, 2), pt(4, 4), pt(2, 4), pt(2, 2)};
    b.ref_point = pt(3, 3);
    sc.obstacles = {a, b};
    sc.points = {{"s", ptq(1, 2, 1, 2)}, {"t", pt(9, 9)}};
    sc.pairs = {{0, 1}};
    auto v = validate_scene(sc);
    REQUIRE(!v.empty());
    CHECK(v[0].code == "BoundaryTangency");
}
