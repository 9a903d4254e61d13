#include "sepgraph/arrangement.hpp"
#include "sepgraph/generators.hpp"

#include <doctest.h>

#include <queue>
#include <random>

using namespace sepgraph;

namespace {

Point pt(long x, long y) { return Point{Rat(x), Rat(y)}; }

std::vector<std::pair<Seg, Provenance>> tagged(const std::vector<Seg>& segs) {
    std::vector<std::pair<Seg, Provenance>> out;
    for (size_t i = 0; i < segs.size(); ++i)
        out.push_back({segs[i], Provenance{Provenance::Kind::Helper, -1,
                                           static_cast<int>(i)}});
    return out;
}

// Grid flood-fill separation oracle on quarter-offset sample points.
bool flood_separated(const Scene& sc, const std::set<int>& keep,
                     const Point& a, const Point& b) {
    auto covered = [&](const Point& p) {
        for (int id : keep)
            if (point_in_region(p, sc.obstacles[id]) != RegionSide::Outside)
                return true;
        return false;
    };
    if (covered(a) || covered(b)) return true;

    long xmin = 1000, xmax = -1000, ymin = 1000, ymax = -1000;
    auto feed = [&](double x, double y) {
        xmin = std::min(xmin, static_cast<long>(std::floor(x)) - 2);
        xmax = std::max(xmax, static_cast<long>(std::ceil(x)) + 2);
        ymin = std::min(ymin, static_cast<long>(std::floor(y)) - 2);
        ymax = std::max(ymax, static_cast<long>(std::ceil(y)) + 2);
    };
    for (const auto& ob : sc.obstacles)
        for (const auto& v : ob.boundary.vertices)
            feed(rat_to_double(v.x), rat_to_double(v.y));
    feed(rat_to_double(a.x), rat_to_double(a.y));
    feed(rat_to_double(b.x), rat_to_double(b.y));

    // Cell (i, j) has sample point (xmin + i/2 + 1/4, ymin + j/2 + 1/4).
    const long W = 2 * (xmax - xmin), H = 2 * (ymax - ymin);
    auto sample = [&](long i, long j) {
        return Point{rat(4 * xmin + 2 * i + 1, 4), rat(4 * ymin + 2 * j + 1, 4)};
    };
    auto cell_of = [&](const Point& p) {
        Rat ix = (p.x - Rat(xmin)) * 2;
        Rat iy = (p.y - Rat(ymin)) * 2;
        long i = static_cast<long>(rat_to_double(ix));
        long j = static_cast<long>(rat_to_double(iy));
        return std::make_pair(i, j);
    };
    std::vector<char> free_cell(static_cast<size_t>(W * H), 0);
    for (long i = 0; i < W; ++i)
        for (long j = 0; j < H; ++j)
            free_cell[static_cast<size_t>(i * H + j)] = !covered(sample(i, j));

    auto [si, sj] = cell_of(a);
    auto [ti, tj] = cell_of(b);
    std::queue<std::pair<long, long>> q;
    std::vector<char> seen(static_cast<size_t>(W * H), 0);
    q.push({si, sj});
    seen[static_cast<size_t>(si * H + sj)] = 1;
    while (!q.empty()) {
        auto [i, j] = q.front();
        q.pop();
        if (i == ti && j == tj) return false;
        const long di[] = {1, -1, 0, 0};
        const long dj[] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            long ni = i + di[d], nj = j + dj[d];
            if (ni < 0 || nj < 0 || ni >= W || nj >= H) continue;
            size_t idx = static_cast<size_t>(ni * H + nj);
            if (seen[idx] || !free_cell[idx]) continue;
            seen[idx] = 1;
            q.push({ni, nj});
        }
    }
    return true;
}

}  // namespace

TEST_CASE("two crossing segments") {
    Arrangement arr = build_arrangement(
        tagged({Seg{pt(0, 0), pt(2, 2)}, Seg{pt(0, 2), pt(2, 0)}}));
    CHECK(arr.vertices.size() == 5);
    CHECK(arr.num_edges() == 4);
    CHECK(arr.faces.size() == 1);
    CHECK(arr.faces[arr.unbounded_face].unbounded);
    CHECK(arr.euler_ok());
}

TEST_CASE("unit square boundary") {
    Arrangement arr = build_arrangement(
        tagged({Seg{pt(0, 0), pt(1, 0)}, Seg{pt(1, 0), pt(1, 1)},
                Seg{pt(1, 1), pt(0, 1)}, Seg{pt(0, 1), pt(0, 0)}}));
    CHECK(arr.vertices.size() == 4);
    CHECK(arr.num_edges() == 4);
    CHECK(arr.faces.size() == 2);
    CHECK(arr.euler_ok());
}

TEST_CASE("square with a bisecting segment") {
    Arrangement arr = build_arrangement(
        tagged({Seg{pt(0, 0), pt(2, 0)}, Seg{pt(2, 0), pt(2, 2)},
                Seg{pt(2, 2), pt(0, 2)}, Seg{pt(0, 2), pt(0, 0)},
                Seg{pt(-1, 1), pt(3, 1)}}));
    int bounded = 0;
    for (const auto& f : arr.faces)
        if (!f.unbounded) ++bounded;
    CHECK(bounded == 2);
    CHECK(arr.euler_ok());
}

TEST_CASE("overlap and degenerate inputs are rejected") {
    CHECK_THROWS_AS(build_arrangement(tagged({Seg{pt(0, 0), pt(2, 0)},
                                              Seg{pt(1, 0), pt(3, 0)}})),
                    OverlapError);
    CHECK_THROWS_AS(build_arrangement(tagged({Seg{pt(1, 1), pt(1, 1)}})),
                    DegenerateError);
}

TEST_CASE("locate") {
    Arrangement arr = build_arrangement(
        tagged({Seg{pt(0, 0), pt(2, 0)}, Seg{pt(2, 0), pt(2, 2)},
                Seg{pt(2, 2), pt(0, 2)}, Seg{pt(0, 2), pt(0, 0)},
                Seg{pt(-1, 1), pt(3, 1)}}));
    int center_low = arr.locate(Point{Rat(1), Rat(1, 2)});
    int center_high = arr.locate(Point{Rat(1), Rat(3, 2)});
    int outside = arr.locate(pt(100, 100));
    CHECK(center_low != center_high);
    CHECK(outside == arr.unbounded_face);
    CHECK(!arr.faces[center_low].unbounded);
    CHECK(!arr.faces[center_high].unbounded);
    CHECK_THROWS_AS((void)arr.locate(pt(1, 1)), OnBoundary);
    CHECK_THROWS_AS((void)arr.locate(pt(0, 0)), OnBoundary);
}

TEST_CASE("face samples land in their face") {
    Arrangement arr = build_arrangement(
        tagged({Seg{pt(0, 0), pt(4, 0)}, Seg{pt(4, 0), pt(4, 4)},
                Seg{pt(4, 4), pt(0, 4)}, Seg{pt(0, 4), pt(0, 0)},
                Seg{pt(1, 1), pt(3, 1)}, Seg{pt(3, 1), pt(3, 3)},
                Seg{pt(3, 3), pt(1, 3)}, Seg{pt(1, 3), pt(1, 1)}}));
    for (size_t f = 0; f < arr.faces.size(); ++f) {
        if (arr.faces[f].unbounded) continue;
        Point s = arr.face_sample(static_cast<int>(f));
        CHECK(arr.locate(s) == static_cast<int>(f));
    }
    // nested square: inner face, annular face, unbounded
    CHECK(arr.faces.size() == 3);
    CHECK(arr.euler_ok());
}

TEST_CASE("euler formula holds on random segment sets") {
    std::mt19937_64 rng(5);
    int built = 0;
    for (int it = 0; it < 200 && built < 120; ++it) {
        std::vector<Seg> segs;
        int m = 2 + static_cast<int>(rng() % 7);
        for (int i = 0; i < m; ++i) {
            Point a = pt(static_cast<long>(rng() % 9), static_cast<long>(rng() % 9));
            Point b = pt(static_cast<long>(rng() % 9), static_cast<long>(rng() % 9));
            if (a == b) continue;
            segs.push_back(Seg{a, b});
        }
        if (segs.empty()) continue;
        try {
            Arrangement arr = build_arrangement(tagged(segs));
            CHECK(arr.euler_ok());
            ++built;
        } catch (const OverlapError&) {
        }
    }
    CHECK(built >= 100);
}

TEST_CASE("face_inside_union basics") {
    Scene sc = scene_contain();
    Arrangement arr = build_arrangement(boundary_segments(sc, {0}));
    REQUIRE(arr.faces.size() == 2);
    int bounded = arr.unbounded_face == 0 ? 1 : 0;
    CHECK(face_inside_union(arr, bounded, sc, {0}));
    CHECK(!face_inside_union(arr, arr.unbounded_face, sc, {0}));
}

TEST_CASE("face_inside_union on a lens of two overlapping squares") {
    Scene sc;
    Obstacle a;
    a.id = 0;
    a.boundary.vertices = {pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4), pt(0, 0)};
    a.ref_point = pt(1, 1);
    Obstacle b;
    b.id = 1;
    b.boundary.vertices = {pt(2, -1), pt(6, -1), pt(6, 3), pt(2, 3), pt(2, -1)};
    b.ref_point = pt(5, 1);
    sc.obstacles = {a, b};
    sc.points = {{"s", Point{rat(1, 2), rat(1, 2)}}, {"t", pt(9, 9)}};
    sc.pairs = {{0, 1}};
    REQUIRE(validate_scene(sc).empty());

    Arrangement arr = build_arrangement(boundary_segments(sc, {0, 1}));
    // The lens face (inside both) sits around (3, 1).
    int lens = arr.locate(pt(3, 1));
    CHECK(face_inside_union(arr, lens, sc, {0}));
    CHECK(face_inside_union(arr, lens, sc, {1}));
}

TEST_CASE("separates_geometric canonical cases") {
    Scene sc = scene_ring2();
    CHECK(separates_geometric(sc, {0, 1}, "s", "t"));
    CHECK(!separates_geometric(sc, {0}, "s", "t"));
    CHECK(!separates_geometric(sc, {1}, "s", "t"));
    CHECK(!separates_geometric(sc, {}, "s", "t"));

    Scene sq = scene_contain();
    CHECK(separates_geometric(sq, {0}, "s", "t"));
}

TEST_CASE("separates_geometric is monotone and matches the flood fill") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        Scene sc = gen_random_rects(4, seed);
        const int n = static_cast<int>(sc.obstacles.size());
        const Point& a = sc.point_at(0);
        const Point& b = sc.point_at(1);
        std::vector<bool> sep(1u << n);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::set<int> keep;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1u) keep.insert(i);
            sep[mask] = separates_geometric(sc, keep, "s", "t");
            CHECK(sep[mask] == flood_separated(sc, keep, a, b));
        }
        for (unsigned mask = 0; mask < (1u << n); ++mask)
            for (int i = 0; i < n; ++i) {
                unsigned bigger = mask | (1u << i);
                if (bigger == mask) continue;
                if (sep[mask]) CHECK(sep[bigger]);
            }
    }
}

TEST_CASE("separation table agrees with the one-shot oracle") {
    for (std::uint64_t seed = 3; seed <= 8; ++seed) {
        Scene sc = gen_random_rects(5, seed);
        SeparationTable table(sc);
        const int n = static_cast<int>(sc.obstacles.size());
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::set<int> keep;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1u) keep.insert(i);
            CHECK(table.separates(mask, 0, 1) ==
                  separates_geometric(sc, keep, "s", "t"));
        }
    }
}
