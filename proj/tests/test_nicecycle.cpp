#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "surf/errors.hpp"
#include "surf/nicecycle.hpp"
#include "surf/surgery.hpp"
#include "surf/toolkit.hpp"
#include "surf/topology.hpp"

using namespace surf;

static std::vector<Vertex> column(int m, int n, int j) {
    std::vector<Vertex> c;
    for (int i = 0; i < m; ++i) c.push_back(i * n + j);
    return c;
}

TEST_CASE("collar: exact layers, sorted vertex union, orderliness") {
    EmbeddedGraph g = gen_torus_grid(12, 12);
    auto mer = make_cycle(g, column(12, 12, 0));
    CollarSubgraph cs = collar(g, mer, 4);
    CHECK(cs.radius == 4);
    CHECK(cs.orderly);
    LayerSet ls = neighborhood_layers(g, mer.vertices, 4);
    REQUIRE(cs.layers.size() == 5);
    for (int r = 0; r <= 4; ++r) {
        std::vector<Vertex> expect = ls.layers[r];
        std::sort(expect.begin(), expect.end());
        std::vector<Vertex> got = cs.layers[r];
        std::sort(got.begin(), got.end());
        CHECK(got == expect);
    }
    CHECK(std::is_sorted(cs.vertices.begin(), cs.vertices.end()));
    size_t total = 0;
    for (const auto& layer : cs.layers) total += layer.size();
    CHECK(cs.vertices.size() == total);

    CollarSubgraph tight = collar(g, mer, 0);
    std::vector<Vertex> base = mer.vertices;
    std::sort(base.begin(), base.end());
    CHECK(tight.vertices == base);

    // A stacked vertex inside the collar breaks orderliness.
    auto sd = detail::subdivide_face(g, 0);
    auto mer2 = make_cycle(sd.graph, column(12, 12, 0));
    CHECK(!collar(sd.graph, mer2, 4).orderly);
}

TEST_CASE("is_nice: parity or a low-degree vertex") {
    EmbeddedGraph even = gen_torus_grid(12, 12);
    CHECK(is_nice(even, make_cycle(even, column(12, 12, 3))));

    EmbeddedGraph odd = gen_torus_grid(13, 13);
    CHECK(!is_nice(odd, make_cycle(odd, column(13, 13, 3))));

    // Subdividing one meridian edge inserts a degree-4 vertex and makes the
    // odd cycle nice.
    EmbeddedGraph g = gen_torus_grid(6, 6);
    EmbeddedGraph sub = testutil::subdivide_edge(g, 18, 24);  // rows 3, 4 of column 0
    Vertex z = 36;
    CHECK(sub.degree(z) == 4);
    std::vector<Vertex> vs{0, 6, 12, 18, z, 24, 30};
    auto c = make_cycle(sub, vs);
    CHECK(c.length() == 7);
    CHECK(!has_chord(sub, c));
    CHECK(is_nice(sub, c));
}

TEST_CASE("optimal shortcut keeps an already optimal cycle") {
    EmbeddedGraph g = gen_torus_grid(13, 13);
    auto mer = make_cycle(g, column(13, 13, 0));
    REQUIRE(*ncdist(g, mer).value >= 12);
    Shortcut sc = optimal_six_shortcut(g, mer);
    CHECK(sc.resulting_cycle.length() == 13);
    CHECK(canonical_cycle_key(sc.resulting_cycle.vertices) ==
          canonical_cycle_key(mer.vertices));

    // Preconditions: a short cycle and a thin instance are both refused.
    EmbeddedGraph small = gen_torus_grid(6, 6);
    CHECK_THROWS_AS(optimal_six_shortcut(small, make_cycle(small, column(6, 6, 0))),
                    hypothesis_error);
    EmbeddedGraph thin = gen_torus_grid(8, 8);
    CHECK_THROWS_AS(optimal_six_shortcut(thin, make_cycle(thin, column(8, 8, 0))),
                    hypothesis_error);
}

TEST_CASE("nice_cycle returns even cycles unchanged") {
    EmbeddedGraph g = gen_torus_grid(12, 12);
    auto mer = make_cycle(g, column(12, 12, 5));
    NiceCycleResult r = nice_cycle(g, mer, 2);
    CHECK(canonical_cycle_key(r.cycle.vertices) == canonical_cycle_key(mer.vertices));
    CHECK(is_nice(g, r.cycle));
    CHECK(!r.case_taken.empty());
}

TEST_CASE("nice_cycle preconditions") {
    EmbeddedGraph g = gen_torus_grid(12, 12);
    auto mer = make_cycle(g, column(12, 12, 0));
    CHECK_THROWS_AS(nice_cycle(g, mer, 1), hypothesis_error);   // d >= 2
    CHECK_THROWS_AS(nice_cycle(g, mer, 3), hypothesis_error);   // ncdist 12 < 16

    // A blister inside the collar breaks the orderliness hypothesis.
    auto sd = detail::subdivide_face(g, 0);
    auto mer2 = make_cycle(sd.graph, column(12, 12, 0));
    CHECK_THROWS_AS(nice_cycle(sd.graph, mer2, 2), hypothesis_error);
}

TEST_CASE("zigzag core: the odd one-sided cycle is replaced, using both sides") {
    ZigzagInstance z = gen_zigzag_klein(12);
    const EmbeddedGraph& g = z.graph;
    auto core = make_cycle(g, z.core);
    REQUIRE(core.length() == 13);
    REQUIRE(core.sidedness == Sidedness::one_sided);
    REQUIRE(!has_chord(g, core));
    CHECK(!is_nice(g, core));

    int d = 2;
    REQUIRE(*ncdist(g, core).value >= 4 * (d + 1));
    NiceCycleResult r = nice_cycle(g, core, d);
    const CycleOnSurface& cp = r.cycle;
    CHECK(is_nice(g, cp));
    CHECK(!has_chord(g, cp));
    auto nd = ncdist(g, cp);
    REQUIRE(!nd.infinite());
    CHECK(*nd.value >= 4 * d - 2);

    CollarSubgraph cs = collar(g, core, 4);
    for (Vertex v : cp.vertices)
        CHECK(std::binary_search(cs.vertices.begin(), cs.vertices.end(), v));

    // The replacement leaves the core: it detours to both sides.
    SidePartition sp = side_partition(g, core, 0, core.length() / 2, 1);
    std::set<Vertex> rhs(sp.right.begin(), sp.right.end());
    std::set<Vertex> lhs(sp.left.begin(), sp.left.end());
    bool uses_right = false, uses_left = false;
    for (Vertex v : cp.vertices) {
        if (rhs.count(v)) uses_right = true;
        if (lhs.count(v)) uses_left = true;
    }
    CHECK(uses_right);
    CHECK(uses_left);
    CHECK(!r.case_taken.empty());
}

TEST_CASE("zigzag right degrees alternate between 1 and 3") {
    ZigzagInstance z = gen_zigzag_klein(8);
    auto core = make_cycle(z.graph, z.core);
    std::vector<int> degs;
    for (Vertex v : core.vertices) degs.push_back(right_degree(z.graph, core, v));
    int ones = 0, threes = 0;
    for (int x : degs) {
        CHECK((x == 1 || x == 3));
        (x == 1 ? ones : threes)++;
    }
    CHECK(ones > 0);
    CHECK(threes > 0);
    int alternations = 0;
    for (size_t i = 0; i < degs.size(); ++i)
        if (degs[i] != degs[(i + 1) % degs.size()]) ++alternations;
    CHECK(alternations >= static_cast<int>(degs.size()) - 1);
}
