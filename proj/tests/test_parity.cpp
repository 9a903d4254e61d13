#include "sepgraph/parity.hpp"
#include "sepgraph/generators.hpp"
#include "sepgraph/labeled_graph.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace sepgraph;

namespace {

LabeledMultigraph triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    LabeledMultigraph g;
    g.n = 3;
    g.width = 1;
    g.add_edge(0, 1, Label::constrained(1, a));
    g.add_edge(1, 2, Label::constrained(1, b));
    g.add_edge(0, 2, Label::constrained(1, c));
    return g;
}

// Every simple cycle's parity, by brute-force path enumeration on the
// expanded graph (each cycle may appear more than once, which is harmless
// for meets and minima).
void brute_cycles(const LabeledMultigraph& g,
                  const std::function<void(const std::vector<int>&, std::uint32_t)>& fn) {
    LabeledMultigraph x = g.expand_masks();
    std::vector<std::vector<std::pair<int, int>>> adj(x.n);
    for (int e = 0; e < static_cast<int>(x.edges.size()); ++e) {
        const auto& ed = x.edges[e];
        if (ed.u == ed.v) {
            fn({ed.u}, ed.lab.bits);
            continue;
        }
        adj[ed.u].push_back({ed.v, e});
        adj[ed.v].push_back({ed.u, e});
    }
    std::vector<int> path;
    std::function<void(int, int, int, std::uint32_t, unsigned)> dfs =
        [&](int start, int cur, int first_edge, std::uint32_t parity,
            unsigned visited) {
            for (auto [nbr, e] : adj[cur]) {
                if (nbr == start) {
                    if (path.size() >= 2 ||
                        (path.size() == 1 && e != first_edge)) {
                        fn(path, parity ^ x.edges[e].lab.bits);
                    }
                    continue;
                }
                if (nbr < start || (visited >> nbr & 1u)) continue;
                path.push_back(nbr);
                dfs(start, nbr, first_edge, parity ^ x.edges[e].lab.bits,
                    visited | (1u << nbr));
                path.pop_back();
            }
        };
    for (int s = 0; s < x.n; ++s) {
        for (auto [nbr, e] : adj[s]) {
            if (nbr < s) continue;
            path = {s, nbr};
            dfs(s, nbr, e, x.edges[e].lab.bits, (1u << s) | (1u << nbr));
        }
    }
}

LabeledMultigraph random_graph(std::mt19937_64& rng, int max_n, int max_e, int k,
                               bool masked) {
    LabeledMultigraph g;
    g.n = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_n - 1));
    g.width = k;
    int e = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_e));
    for (int i = 0; i < e; ++i) {
        int u = static_cast<int>(rng() % static_cast<unsigned>(g.n));
        int v = static_cast<int>(rng() % static_cast<unsigned>(g.n));
        std::uint32_t bits =
            static_cast<std::uint32_t>(rng()) & Label::full(k);
        std::uint32_t mask = Label::full(k);
        if (masked && rng() % 4 == 0)
            mask &= static_cast<std::uint32_t>(rng());
        if (u == v && rng() % 2) continue;  // keep self-loops occasional
        g.add_edge(u, v, Label{k, bits & mask, mask});
    }
    return g;
}

Partition from_blocks(int k, std::vector<std::vector<int>> blocks) {
    return Partition::from_blocks(k, blocks);
}

}  // namespace

TEST_CASE("detect_odd_cycle basics") {
    auto cert = detect_odd_cycle(triangle(1, 0, 0));
    REQUIRE(cert.has_value());
    CHECK(cert->parity.bits == 1u);
    CHECK(cert->vertex_seq.front() == cert->vertex_seq.back());

    CHECK(!detect_odd_cycle(triangle(1, 1, 0)).has_value());

    LabeledMultigraph loop;
    loop.n = 1;
    loop.width = 1;
    loop.add_edge(0, 0, Label::constrained(1, 1));
    auto c2 = detect_odd_cycle(loop);
    REQUIRE(c2.has_value());
    CHECK(c2->edge_seq.size() == 1);
}

TEST_CASE("detect certificates recompute to odd parity") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 300; ++it) {
        LabeledMultigraph g = random_graph(rng, 7, 12, 1, true);
        auto cert = detect_odd_cycle(g);
        bool brute_odd = false;
        brute_cycles(g, [&](const std::vector<int>&, std::uint32_t parity) {
            if (parity & 1u) brute_odd = true;
        });
        CHECK(cert.has_value() == brute_odd);
        if (cert) {
            Label par = parity_of(g, *cert);
            CHECK((par.bits & 1u) == 1u);
        }
    }
}

TEST_CASE("shortest_odd_cycle basics") {
    Scene sc = scene_ring2();
    auto rc = route_reference_curves(sc, LabelMode::ST);
    LabeledMultigraph g = build_labeled_graph(sc, rc);
    std::vector<Rat> unit(g.n, Rat(1));
    auto best = shortest_odd_cycle(g, unit);
    REQUIRE(best.has_value());
    CHECK(best->second == Rat(2));

    LabeledMultigraph even = triangle(1, 1, 0);
    CHECK(!shortest_odd_cycle(even, std::vector<Rat>(3, Rat(1))).has_value());

    LabeledMultigraph loop;
    loop.n = 1;
    loop.width = 1;
    loop.add_edge(0, 0, Label::constrained(1, 1));
    auto lres = shortest_odd_cycle(loop, {Rat(3)});
    REQUIRE(lres.has_value());
    CHECK(lres->second == Rat(3));
}

TEST_CASE("shortest_odd_cycle equals brute force on random graphs") {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 200; ++it) {
        LabeledMultigraph g = random_graph(rng, 7, 12, 1, true);
        std::vector<Rat> w(g.n);
        for (auto& wi : w)
            wi = rat(static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3));
        auto best = shortest_odd_cycle(g, w);
        bool found = false;
        Rat best_brute;
        brute_cycles(g, [&](const std::vector<int>& verts, std::uint32_t parity) {
            if (!(parity & 1u)) return;
            std::set<int> distinct(verts.begin(), verts.end());
            Rat total = 0;
            for (int v : distinct) total += w[v];
            if (!found || cmp(total, best_brute) < 0) {
                found = true;
                best_brute = total;
            }
        });
        REQUIRE(best.has_value() == found);
        if (found) CHECK(cmp(best->second, best_brute) == 0);
    }
}

TEST_CASE("parity_of and partition_of_cycle") {
    LabeledMultigraph g;
    g.n = 2;
    g.width = 2;
    g.add_edge(0, 1, Label::constrained(2, 0b01));
    g.add_edge(0, 1, Label::constrained(2, 0b10));
    CycleCertificate c;
    c.vertex_seq = {0, 1, 0};
    c.edge_seq = {0, 1};
    c.resolved = {Label::constrained(2, 0b01), Label::constrained(2, 0b10)};
    Label par = parity_of(g, c);
    CHECK(par.bits == 0b11u);
    Partition phi = partition_of_cycle(g, c);
    CHECK(phi.num_blocks() == 1);  // both bits flipped together

    c.resolved[1] = Label::constrained(2, 0b00);
    CHECK_THROWS_AS((void)parity_of(g, c), EdgeNotInGraph);

    CycleCertificate c2;
    c2.vertex_seq = {0, 1, 0};
    c2.edge_seq = {0, 0};
    c2.resolved = {Label::constrained(2, 0b01), Label::constrained(2, 0b01)};
    Partition phi2 = partition_of_cycle(g, c2);
    CHECK(phi2.num_blocks() == 1);  // parity 00: single block of evens

    // parity 10: bits split
    CycleCertificate c3;
    c3.vertex_seq = {0, 1, 0};
    c3.edge_seq = {1, 0};
    c3.resolved = {Label::constrained(2, 0b10), Label::constrained(2, 0b00)};
    CHECK_THROWS_AS((void)parity_of(g, c3), EdgeNotInGraph);
}

TEST_CASE("partition meet algebra") {
    Partition a = from_blocks(3, {{0, 1}, {2}});
    Partition b = from_blocks(3, {{0}, {1, 2}});
    Partition m = partition_meet(a, b);
    CHECK(m == Partition::discrete(3));
    CHECK(partition_meet(a, a) == a);
    CHECK(partition_meet(a, Partition::single_block(3)) == a);

    CHECK_THROWS_AS((void)partition_meet(a, Partition::discrete(4)), SizeMismatch);

    std::mt19937_64 rng(31);
    auto rand_part = [&](int k) {
        Partition p;
        p.ground = k;
        p.block_of.resize(k);
        for (int i = 0; i < k; ++i)
            p.block_of[i] = static_cast<int>(rng() % 3);
        p.canonicalize();
        return p;
    };
    for (int it = 0; it < 200; ++it) {
        Partition x = rand_part(5), y = rand_part(5), z = rand_part(5);
        CHECK(partition_meet(x, y) == partition_meet(y, x));
        CHECK(partition_meet(partition_meet(x, y), z) ==
              partition_meet(x, partition_meet(y, z)));
    }
}

TEST_CASE("parity_partition examples") {
    LabeledMultigraph g;
    g.n = 3;
    g.width = 2;
    g.add_edge(0, 1, Label::constrained(2, 0b00));
    g.add_edge(1, 2, Label::constrained(2, 0b10));
    g.add_edge(0, 2, Label::constrained(2, 0b00));
    // single cycle with parity 10
    CHECK(parity_partition(g) == from_blocks(2, {{0}, {1}}));

    LabeledMultigraph forest;
    forest.n = 3;
    forest.width = 2;
    forest.add_edge(0, 1, Label::constrained(2, 0b01));
    CHECK(parity_partition(forest) == Partition::single_block(2));

    LabeledMultigraph two;
    two.n = 4;
    two.width = 2;
    two.add_edge(0, 1, Label::constrained(2, 0b10));
    two.add_edge(0, 1, Label::constrained(2, 0b00));
    two.add_edge(2, 3, Label::constrained(2, 0b01));
    two.add_edge(2, 3, Label::constrained(2, 0b00));
    CHECK(parity_partition(two) == Partition::discrete(2));
}

TEST_CASE("parity_partition equals the meet over all simple cycles") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 500; ++it) {
        int k = 1 + static_cast<int>(rng() % 4);
        LabeledMultigraph g = random_graph(rng, 8, 14, k, true);
        Partition got = parity_partition(g);
        Partition want = Partition::single_block(k);
        brute_cycles(g, [&](const std::vector<int>&, std::uint32_t parity) {
            std::vector<std::vector<int>> blocks(2);
            for (int i = 0; i < k; ++i) blocks[parity >> i & 1u].push_back(i);
            std::vector<std::vector<int>> nonempty;
            for (auto& b : blocks)
                if (!b.empty()) nonempty.push_back(b);
            want = partition_meet(want, Partition::from_blocks(k, nonempty));
        });
        CHECK(got == want);
    }
}

TEST_CASE("is_P_good and is_well_behaved") {
    LabeledMultigraph g;
    g.n = 3;
    g.width = 2;
    g.add_edge(0, 1, Label::constrained(2, 0b00));
    g.add_edge(1, 2, Label::constrained(2, 0b10));
    g.add_edge(0, 2, Label::constrained(2, 0b00));
    CHECK(is_P_good(g, {{0, 1}}));

    LabeledMultigraph flat;
    flat.n = 2;
    flat.width = 2;
    flat.add_edge(0, 1, Label::constrained(2, 0b11));
    flat.add_edge(0, 1, Label::constrained(2, 0b00));
    CHECK(!is_P_good(flat, {{0, 1}}));

    // two labeled triangles sharing no vertices, odd in each bit
    LabeledMultigraph wb;
    wb.n = 6;
    wb.width = 2;
    wb.add_edge(0, 1, Label::constrained(2, 0b01));
    wb.add_edge(1, 2, Label::constrained(2, 0b00));
    wb.add_edge(0, 2, Label::constrained(2, 0b00));
    wb.add_edge(3, 4, Label::constrained(2, 0b10));
    wb.add_edge(4, 5, Label::constrained(2, 0b00));
    wb.add_edge(3, 5, Label::constrained(2, 0b00));
    CHECK(is_well_behaved(wb));
    LabeledMultigraph nb = wb;
    nb.edges.erase(nb.edges.begin());  // kill the bit-0 odd cycle
    CHECK(!is_well_behaved(nb));
}

TEST_CASE("minimal generating subsets stay below the ground size") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 200; ++it) {
        int k = 2 + static_cast<int>(rng() % 4);
        int r = 1 + static_cast<int>(rng() % 6);
        std::vector<Partition> ps;
        for (int i = 0; i < r; ++i) {
            Partition p;
            p.ground = k;
            p.block_of.resize(k);
            for (int j = 0; j < k; ++j)
                p.block_of[j] = static_cast<int>(rng() % static_cast<unsigned>(k));
            p.canonicalize();
            ps.push_back(p);
        }
        auto T = minimal_generating_subset(k, ps);
        CHECK(static_cast<int>(T.size()) < k);
        std::vector<Partition> sub;
        for (int idx : T) sub.push_back(ps[idx]);
        CHECK(partition_meet(k, sub) == partition_meet(k, ps));
        // inclusion-minimality
        for (size_t drop = 0; drop < T.size(); ++drop) {
            std::vector<Partition> fewer;
            for (size_t j = 0; j < T.size(); ++j)
                if (j != drop) fewer.push_back(ps[T[j]]);
            CHECK(!(partition_meet(k, fewer) == partition_meet(k, ps)));
        }
    }
}

TEST_CASE("minimal generating subset degenerate inputs") {
    Partition one = Partition::single_block(3);
    auto T = minimal_generating_subset(3, {one});
    CHECK(T.empty());
    Partition d = Partition::discrete(3);
    auto T2 = minimal_generating_subset(3, {d, d, d});
    CHECK(T2.size() == 1);
}

TEST_CASE("enumerate_coarsenings counts") {
    Partition d3 = Partition::discrete(3);
    CHECK(enumerate_coarsenings(d3, 1).size() == 3);
    CHECK(enumerate_coarsenings(d3, 0).size() == 1);
    Partition d2 = Partition::discrete(2);
    auto one = enumerate_coarsenings(d2, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == Partition::single_block(2));
}

TEST_CASE("coarsening counts match direct set-partition generation") {
    // Coarsenings of a z-block partition by d merges correspond to
    // partitions of the block set [z] into z - d parts.
    auto count_partitions = [](int z, int parts) {
        // enumerate all set partitions of [z] by restricted growth strings
        int count = 0;
        std::vector<int> a(static_cast<size_t>(z), 0);
        std::function<void(int, int)> rec = [&](int i, int used) {
            if (i == z) {
                if (used == parts) ++count;
                return;
            }
            for (int b = 0; b <= used; ++b) {
                a[static_cast<size_t>(i)] = b;
                rec(i + 1, std::max(used, b + 1));
            }
        };
        rec(0, 0);
        return count;
    };
    for (int z = 2; z <= 6; ++z) {
        Partition phi = Partition::discrete(z);
        for (int d = 0; d <= 3 && d < z; ++d) {
            auto got = enumerate_coarsenings(phi, d);
            CHECK(static_cast<int>(got.size()) == count_partitions(z, z - d));
            std::set<std::vector<int>> uniq;
            for (const auto& p : got) {
                CHECK(p.num_blocks() == z - d);
                CHECK(p.coarsens(phi));
                uniq.insert(p.block_of);
            }
            CHECK(uniq.size() == got.size());
        }
    }
}
