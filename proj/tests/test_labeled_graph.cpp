#include "sepgraph/labeled_graph.hpp"
#include "sepgraph/arrangement.hpp"
#include "sepgraph/generators.hpp"
#include "sepgraph/parity.hpp"

#include <doctest.h>

#include <set>

using namespace sepgraph;

namespace {

Point pt(long x, long y) { return Point{Rat(x), Rat(y)}; }

Scene empty_scene() {
    Scene sc;
    sc.points = {{"s", pt(0, 0)}, {"t", pt(5, 0)}};
    sc.pairs = {{0, 1}};
    return sc;
}

Scene disjoint_squares() {
    Scene sc;
    Obstacle a;
    a.id = 0;
    a.boundary.vertices = {pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2), pt(0, 0)};
    a.ref_point = pt(1, 1);
    Obstacle b;
    b.id = 1;
    b.boundary.vertices = {pt(5, 0), pt(7, 0), pt(7, 2), pt(5, 2), pt(5, 0)};
    b.ref_point = pt(6, 1);
    sc.obstacles = {a, b};
    sc.points = {{"s", Point{rat(1, 2), Rat(-3)}}, {"t", pt(9, 9)}};
    sc.pairs = {{0, 1}};
    return sc;
}

bool has_edge(const LabeledMultigraph& g, int u, int v, std::uint32_t bits,
              std::uint32_t mask) {
    for (const auto& e : g.edges)
        if (e.u == std::min(u, v) && e.v == std::max(u, v) &&
            e.lab.bits == bits && e.lab.mask == mask)
            return true;
    return false;
}

// Exhaustive Theorem-1 check over every obstacle subset of a scene.
void check_theorem1(const Scene& sc, std::uint64_t seed) {
    auto rc = route_reference_curves(sc, LabelMode::ST, seed);
    REQUIRE(validate_curves(sc, rc).empty());
    LabeledMultigraph g = build_labeled_graph(sc, rc);
    LabeledMultigraph st = project(g, 0);
    SeparationTable table(sc);
    int s = sc.point_index("s"), t = sc.point_index("t");
    const int n = static_cast<int>(sc.obstacles.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        bool geo = table.separates(mask, s, t);
        bool cyc = detect_odd_cycle(st.induced_mask(mask)).has_value();
        CHECK(geo == cyc);
    }
}

}  // namespace

TEST_CASE("routing with no obstacles gives the straight segment") {
    Scene sc = empty_scene();
    auto rc = route_reference_curves(sc, LabelMode::ST);
    REQUIRE(rc.curves.size() == 1);
    CHECK(rc.curves[0].vertices.size() == 2);
    CHECK(rc.curves[0].vertices.front() == pt(0, 0));
    CHECK(rc.curves[0].vertices.back() == pt(5, 0));
}

TEST_CASE("routed curves validate on the canonical scenes") {
    for (std::uint64_t seed : {0ull, 1ull, 7ull}) {
        Scene sc = scene_ring2();
        auto rc = route_reference_curves(sc, LabelMode::ST, seed);
        CHECK(validate_curves(sc, rc).empty());
    }
    Scene sq = scene_contain();
    auto rc = route_reference_curves(sq, LabelMode::ST);
    CHECK(validate_curves(sq, rc).empty());
}

TEST_CASE("points-mode curves share only the anchor") {
    Scene sc = disjoint_squares();
    sc.points = {{"a0", pt(1, 1)}, {"a1", pt(6, 1)}};
    sc.pairs = {{0, 1}};
    sc.anchor = Point{Rat(3), Rat(7)};
    REQUIRE(validate_scene(sc).empty());
    auto rc = route_reference_curves(sc, LabelMode::Points);
    REQUIRE(rc.curves.size() == 2);
    CHECK(validate_curves(sc, rc).empty());
    CHECK(rc.curves[0].vertices.back() == *sc.anchor);
    CHECK(rc.curves[1].vertices.back() == *sc.anchor);
}

TEST_CASE("containment yields an odd self-loop") {
    Scene sc = scene_contain();
    auto rc = route_reference_curves(sc, LabelMode::ST);
    LabeledMultigraph g = build_labeled_graph(sc, rc);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].u == 0);
    CHECK(g.edges[0].v == 0);
    CHECK(g.edges[0].lab.bits == 1u);
    CHECK(g.edges[0].lab.mask == 1u);
}

TEST_CASE("ring2 carries both parities between its blocks") {
    Scene sc = scene_ring2();
    auto rc = route_reference_curves(sc, LabelMode::ST);
    LabeledMultigraph g = build_labeled_graph(sc, rc);
    CHECK(g.edges.size() == 2);
    CHECK(has_edge(g, 0, 1, 0u, 1u));
    CHECK(has_edge(g, 0, 1, 1u, 1u));
}

TEST_CASE("disjoint obstacles get no pair edges") {
    Scene sc = disjoint_squares();
    auto rc = route_reference_curves(sc, LabelMode::ST);
    LabeledMultigraph g = build_labeled_graph(sc, rc);
    CHECK(g.edges.empty());
}

TEST_CASE("project splits unconstrained bits") {
    LabeledMultigraph g;
    g.n = 2;
    g.width = 2;
    g.mode = LabelMode::Pairs;
    g.add_edge(0, 1, Label{2, 0b01, 0b11});
    LabeledMultigraph p0 = project(g, 0);
    REQUIRE(p0.edges.size() == 1);
    CHECK(p0.edges[0].lab.bits == 1u);

    LabeledMultigraph g2;
    g2.n = 2;
    g2.width = 2;
    g2.add_edge(0, 1, Label{2, 0b00, 0b01});  // bit 1 unconstrained
    LabeledMultigraph p1 = project(g2, 1);
    CHECK(p1.edges.size() == 2);  // both parities, collapsed per value
}

TEST_CASE("projecting ring2's graph reproduces the ST graph") {
    Scene sc = scene_ring2();
    auto rc = route_reference_curves(sc, LabelMode::ST);
    LabeledMultigraph g = build_labeled_graph(sc, rc);
    LabeledMultigraph p = project(g, 0);
    CHECK(p.edges.size() == g.edges.size());
    for (const auto& e : g.edges)
        CHECK(has_edge(p, e.u, e.v, e.lab.bits, e.lab.mask));
}

TEST_CASE("theorem-1 equivalence on canonical scenes") {
    check_theorem1(scene_ring2(), 0);
    check_theorem1(scene_contain(), 0);
    check_theorem1(disjoint_squares(), 0);
}

TEST_CASE("theorem-1 equivalence on random scenes") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
        check_theorem1(gen_random_rects(5, seed), 0);
}

TEST_CASE("theorem-1 equivalence on generated families") {
    check_theorem1(gen_ring(3, 10), 0);
    check_theorem1(gen_ring(4, 10), 0);
    check_theorem1(gen_grid(1, 1), 0);
}

TEST_CASE("re-routing with another seed never changes a verdict") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        Scene sc = gen_random_rects(4, 17);
        auto rc_a = route_reference_curves(sc, LabelMode::ST, 0);
        auto rc_b = route_reference_curves(sc, LabelMode::ST, seed);
        LabeledMultigraph ga = project(build_labeled_graph(sc, rc_a), 0);
        LabeledMultigraph gb = project(build_labeled_graph(sc, rc_b), 0);
        const int n = static_cast<int>(sc.obstacles.size());
        for (unsigned mask = 0; mask < (1u << n); ++mask)
            CHECK(detect_odd_cycle(ga.induced_mask(mask)).has_value() ==
                  detect_odd_cycle(gb.induced_mask(mask)).has_value());
    }
}

TEST_CASE("edge multiset is stable under obstacle renumbering") {
    Scene sc = scene_ring2();
    Scene swapped = sc;
    std::swap(swapped.obstacles[0], swapped.obstacles[1]);
    swapped.obstacles[0].id = 0;
    swapped.obstacles[1].id = 1;
    auto rc1 = route_reference_curves(sc, LabelMode::ST);
    auto rc2 = route_reference_curves(swapped, LabelMode::ST);
    LabeledMultigraph g1 = build_labeled_graph(sc, rc1);
    LabeledMultigraph g2 = build_labeled_graph(swapped, rc2);
    CHECK(g1.edges.size() == g2.edges.size());
}

TEST_CASE("label rendering uses dots for free bits") {
    Label l{3, 0b101, 0b101};
    CHECK(l.str() == "1.1");
    Label m{2, 0b01, 0b11};
    CHECK(m.str() == "10");
}
