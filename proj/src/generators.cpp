#include "sepgraph/generators.hpp"

#include "sepgraph/labeled_graph.hpp"

#include <cmath>
#include <random>

namespace sepgraph {

namespace {

Obstacle make_obstacle(int id, std::vector<Point> verts) {
    Obstacle ob;
    ob.id = id;
    verts.push_back(verts.front());
    ob.boundary.vertices = std::move(verts);
    ob.ref_point = ob.boundary.vertices[0];
    return ob;
}

void finalize_refs(Scene& sc) {
    auto refs = reference_points(sc);
    for (auto& ob : sc.obstacles) ob.ref_point = refs[ob.id];
}

// Exact rational unit vector approximating the given angle, via the
// tan-half-angle parametrization.
Point rational_dir(double angle) {
    const double pi = 3.14159265358979323846;
    while (angle > pi) angle -= 2 * pi;
    while (angle <= -pi) angle += 2 * pi;
    if (std::abs(angle - pi) < 1e-9 || std::abs(angle + pi) < 1e-9)
        return Point{Rat(-1), Rat(0)};
    double td = std::tan(angle / 2);
    long den = 512;
    long num = std::lround(td * static_cast<double>(den));
    Rat t(num, den);
    t.canonicalize();
    Rat one(1);
    Rat denom = one + t * t;
    return Point{(one - t * t) / denom, (2 * t) / denom};
}

}  // namespace

Scene scene_ring2() {
    Scene sc;
    auto P = [](long x, long y) { return Point{Rat(x), Rat(y)}; };
    sc.obstacles.push_back(make_obstacle(
        0, {P(-4, -3), P(3, -3), P(3, -1), P(-2, -1), P(-2, 1), P(3, 1), P(3, 3),
            P(-4, 3)}));
    sc.obstacles.push_back(make_obstacle(
        1, {P(-2, -4), P(4, -4), P(4, 4), P(-2, 4), P(-2, 2), P(2, 2), P(2, -2),
            P(-2, -2)}));
    sc.points = {{"s", P(0, 0)}, {"t", P(6, 0)}};
    sc.pairs = {{0, 1}};
    finalize_refs(sc);
    return sc;
}

Scene scene_contain() {
    Scene sc;
    auto P = [](long x, long y) { return Point{Rat(x), Rat(y)}; };
    sc.obstacles.push_back(
        make_obstacle(0, {P(-2, -2), P(2, -2), P(2, 2), P(-2, 2)}));
    sc.points = {{"s", P(0, 0)}, {"t", P(6, 0)}};
    sc.pairs = {{0, 1}};
    finalize_refs(sc);
    return sc;
}

namespace {

Scene try_ring(int m, int scale, int jitter, int id_base, Scene base,
               double radius_factor, double angle_offset) {
    const double pi = 3.14159265358979323846;
    double delta = 2 * pi / (8.0 * m) * (1.0 + 0.05 * jitter);
    Rat r1 = Rat(scale) * rat(std::lround(radius_factor * 16), 16);
    Rat r2 = r1 * 2;
    for (int i = 0; i < m; ++i) {
        double lo = 2 * pi * i / m - delta + angle_offset;
        double hi = 2 * pi * (i + 1) / m + delta + angle_offset;
        Point ulo = rational_dir(lo), uhi = rational_dir(hi);
        std::vector<Point> quad{
            Point{r1 * ulo.x, r1 * ulo.y}, Point{r2 * ulo.x, r2 * ulo.y},
            Point{r2 * uhi.x, r2 * uhi.y}, Point{r1 * uhi.x, r1 * uhi.y}};
        base.obstacles.push_back(make_obstacle(id_base + i, quad));
    }
    return base;
}

}  // namespace

Scene gen_ring(int m, int scale) {
    for (int jitter = 0; jitter < 8; ++jitter) {
        Scene sc;
        sc.points = {{"s", Point{Rat(0), Rat(0)}},
                     {"t", Point{Rat(4L * scale), rat(1, 3)}}};
        sc.pairs = {{0, 1}};
        sc = try_ring(m, scale, jitter, 0, sc, 1.0, 0.0);
        if (validate_scene(sc).empty()) {
            finalize_refs(sc);
            return sc;
        }
    }
    throw std::logic_error("ring generator failed validation repeatedly");
}

Scene gen_nested_rings(int m, int depth, int scale) {
    const double pi = 3.14159265358979323846;
    for (int jitter = 0; jitter < 8; ++jitter) {
        Scene sc;
        long out = scale;
        for (int d = 1; d < depth; ++d) out *= 4;
        sc.points = {{"s", Point{Rat(0), Rat(0)}},
                     {"t", Point{Rat(8L * out), rat(1, 3)}}};
        sc.pairs = {{0, 1}};
        bool ok = true;
        long sc_d = scale;
        for (int d = 0; d < depth; ++d) {
            sc = try_ring(m, static_cast<int>(sc_d), jitter, d * m, sc, 1.0,
                          d * pi / (3.0 * m));
            sc_d *= 4;
        }
        if (ok && validate_scene(sc).empty()) {
            finalize_refs(sc);
            return sc;
        }
    }
    throw std::logic_error("nested ring generator failed validation repeatedly");
}

Scene gen_grid(int w, int h) {
    Scene sc;
    auto P = [](long x, long y) { return Point{Rat(x), Rat(y)}; };
    int id = 0;
    for (int i = 0; i <= w; ++i)
        sc.obstacles.push_back(make_obstacle(
            id++, {P(3 * i, -1), P(3 * i + 1, -1), P(3 * i + 1, 3 * h + 2),
                   P(3 * i, 3 * h + 2)}));
    for (int j = 0; j <= h; ++j)
        sc.obstacles.push_back(make_obstacle(
            id++, {P(-2, 3 * j), P(3 * w + 2, 3 * j), P(3 * w + 2, 3 * j + 1),
                   P(-2, 3 * j + 1)}));
    sc.points = {{"s", Point{Rat(2), Rat(2)}},
                 {"t", Point{Rat(3L * w + 4), Rat(3L * h + 4)}}};
    sc.pairs = {{0, 1}};
    finalize_refs(sc);
    return sc;
}

namespace {

bool obstacles_compatible(const Scene& sc) {
    auto v = validate_scene(sc);
    for (const auto& viol : v)
        if (viol.code == "OverlappingBoundaries" || viol.code == "BoundaryTangency")
            return false;
    return v.empty();
}

}  // namespace

Scene gen_random_rects(int n, std::uint64_t seed, int k_points) {
    std::mt19937_64 rng(seed);
    auto ri = [&](int lo, int hi) {
        return static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)) + lo;
    };
    Scene sc;
    auto P = [](long x, long y) { return Point{Rat(x), Rat(y)}; };
    for (int i = 0; i < n; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < 400 && !placed; ++attempt) {
            int x1 = ri(0, 14), y1 = ri(0, 14);
            int x2 = x1 + ri(2, 7), y2 = y1 + ri(2, 7);
            Scene trial = sc;
            trial.obstacles.push_back(make_obstacle(
                i, {P(x1, y1), P(x2, y1), P(x2, y2), P(x1, y2)}));
            if (obstacles_compatible(trial)) {
                sc = std::move(trial);
                placed = true;
            }
        }
        if (!placed)
            throw std::logic_error("random rectangle placement starved");
    }
    // Points on the half-integer grid never meet rectangle boundaries. For
    // multi-point instances, a share of the points lands inside obstacles so
    // the corpus contains solvable separation requests.
    auto half_point = [&]() {
        return Point{rat(2 * ri(-2, 22) + 1, 2), rat(2 * ri(-2, 22) + 1, 2)};
    };
    auto point_inside = [&](const Obstacle& ob) {
        const auto& v = ob.boundary.vertices;
        long x1 = v[0].x.get_num().get_si(), y1 = v[0].y.get_num().get_si();
        long x2 = v[2].x.get_num().get_si(), y2 = v[2].y.get_num().get_si();
        return Point{rat(2 * (x1 + ri(0, static_cast<int>(x2 - x1 - 1))) + 1, 2),
                     rat(2 * (y1 + ri(0, static_cast<int>(y2 - y1 - 1))) + 1, 2)};
    };
    auto fresh = [&](const Point& cand) {
        for (const auto& [nm, p] : sc.points)
            if (p == cand) return false;
        return true;
    };
    if (k_points <= 0) {
        for (const char* name : {"s", "t"}) {
            Point p = half_point();
            while (!fresh(p)) p = half_point();
            sc.points.push_back({name, p});
        }
        sc.pairs = {{0, 1}};
    } else {
        for (int i = 0; i < k_points; ++i) {
            Point p = rng() % 2 && n > 0
                          ? point_inside(sc.obstacles[ri(0, n - 1)])
                          : half_point();
            while (!fresh(p))
                p = half_point();
            sc.points.push_back({"a" + std::to_string(i), p});
        }
        for (int i = 0; i < k_points; ++i)
            for (int j = i + 1; j < k_points; ++j) sc.pairs.push_back({i, j});
        sc.anchor = Point{rat(51, 2), rat(51, 2)};
    }
    auto violations = validate_scene(sc);
    if (!violations.empty())
        throw std::logic_error("random scene failed validation: " +
                               violations[0].code);
    finalize_refs(sc);
    return sc;
}

Scene generate_scene(const GeneratorSpec& spec) {
    switch (spec.family) {
        case GeneratorSpec::Family::Ring:
            return gen_ring(spec.m, spec.scale);
        case GeneratorSpec::Family::NestedRings:
            return gen_nested_rings(spec.m, spec.depth, spec.scale);
        case GeneratorSpec::Family::Grid:
            return gen_grid(spec.w, spec.h);
        case GeneratorSpec::Family::RandomRects:
        default:
            return gen_random_rects(spec.n, spec.seed, spec.k_points);
    }
}

}  // namespace sepgraph
