#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "surf/embedding.hpp"
#include "surf/errors.hpp"
#include "surf/toolkit.hpp"
#include "surf/topology.hpp"

using namespace surf;

static std::vector<Vertex> column(int m, int n, int j) {
    std::vector<Vertex> c;
    for (int i = 0; i < m; ++i) c.push_back(i * n + j);
    return c;
}

static std::vector<Vertex> row(int n, int i) {
    std::vector<Vertex> c;
    for (int j = 0; j < n; ++j) c.push_back(i * n + j);
    return c;
}

TEST_CASE("make_cycle validates and reverse is an involution") {
    EmbeddedGraph g = gen_torus_grid(6, 6);
    auto mer = make_cycle(g, column(6, 6, 0));
    CHECK(mer.length() == 6);
    CHECK(mer.vertices.size() == 6);
    for (int i = 0; i < 6; ++i) {
        CHECK(g.tail(mer.darts[i]) == mer.vertices[i]);
        CHECK(g.head(mer.darts[i]) == mer.vertices[(i + 1) % 6]);
    }
    auto rev = reverse_cycle(g, mer);
    CHECK(rev.vertices[0] == mer.vertices[0]);
    auto rev2 = reverse_cycle(g, rev);
    CHECK(rev2.vertices == mer.vertices);
    CHECK(rev2.darts == mer.darts);

    // Nonadjacent consecutive vertices are rejected.
    std::vector<Vertex> bad{0, 2, 4};
    CHECK_THROWS(make_cycle(g, bad));
    // Repeated vertices are rejected.
    std::vector<Vertex> rep{0, 1, 0, 6};
    CHECK_THROWS(make_cycle(g, rep));
}

TEST_CASE("canonical traversal is independent of the starting vertex") {
    EmbeddedGraph g = gen_torus_grid(7, 7);
    std::vector<Vertex> vs = column(7, 7, 3);
    auto a = canonical_traversal(g, make_cycle(g, vs));
    std::rotate(vs.begin(), vs.begin() + 4, vs.end());
    auto b = canonical_traversal(g, make_cycle(g, vs));
    std::reverse(vs.begin() + 1, vs.end());
    auto c = canonical_traversal(g, make_cycle(g, vs));
    CHECK(a.vertices == b.vertices);
    CHECK(a.vertices == c.vertices);
    CHECK(canonical_cycle_key(a.vertices) == canonical_cycle_key(b.vertices));
}

TEST_CASE("chords") {
    EmbeddedGraph g = gen_torus_grid(6, 6);
    CHECK(!has_chord(g, make_cycle(g, column(6, 6, 2))));
    // (0,0),(0,1),(1,1),(1,0) has the diagonal (0,0)-(1,1) as a chord.
    std::vector<Vertex> quad{0, 1, 7, 6};
    CHECK(has_chord(g, make_cycle(g, quad)));
}

TEST_CASE("sidedness: torus cycles two-sided, projective core one-sided") {
    EmbeddedGraph t = gen_torus_grid(6, 8);
    CHECK(cycle_sidedness(t, make_cycle(t, column(6, 8, 0))) == Sidedness::two_sided);
    CHECK(cycle_sidedness(t, make_cycle(t, row(8, 0))) == Sidedness::two_sided);

    EmbeddedGraph p = gen_projective_grid(6);
    auto core = shortest_noncontractible_cycle(p);
    CHECK(core.length() == 6);
    CHECK(core.sidedness == Sidedness::one_sided);

    // Klein grid: columns two-sided.  A row closes into a cycle only when the
    // glide reflection fixes it (odd m, middle row), and then it crosses the
    // seam once, so it is one-sided.
    EmbeddedGraph k = gen_klein_grid(7, 6);
    CHECK(cycle_sidedness(k, make_cycle(k, column(7, 6, 1))) == Sidedness::two_sided);
    CHECK(cycle_sidedness(k, make_cycle(k, row(6, 3))) == Sidedness::one_sided);
}

TEST_CASE("contractibility: faces yes, meridians no") {
    EmbeddedGraph g = gen_torus_grid(6, 6);
    std::vector<Vertex> tri{0, 1, 7};  // a face of the grid
    CHECK(is_contractible(g, make_cycle(g, tri)));
    CHECK(!is_contractible(g, make_cycle(g, column(6, 6, 0))));
    CHECK(!is_contractible(g, make_cycle(g, row(6, 0))));
    // A face's disk side is just the triangle itself.
    auto side = disk_interior(g, make_cycle(g, tri));
    std::sort(side.begin(), side.end());
    CHECK(side == tri);
    CHECK_THROWS_AS(disk_interior(g, make_cycle(g, column(6, 6, 0))), hypothesis_error);
}

TEST_CASE("width matches the exhaustive oracle on small instances") {
    EmbeddedGraph k7 = testutil::k7_torus();
    int wk7 = width(k7);
    CHECK(wk7 == testutil::oracle_width_exhaustive(k7, 7));
    CHECK(wk7 == 3);

    for (auto [m, n] : {std::pair{5, 5}, {5, 6}, {6, 6}}) {
        EmbeddedGraph t = gen_torus_grid(m, n);
        int w = width(t);
        CHECK(w == std::min(m, n));
        CHECK(w == testutil::oracle_width_exhaustive(t, std::min(m, n) + 1));
    }
    EmbeddedGraph kl = gen_klein_grid(5, 6);
    CHECK(width(kl) == testutil::oracle_width_exhaustive(kl, 7));
    EmbeddedGraph pr = gen_projective_grid(5);
    CHECK(width(pr) == 5);
    CHECK(width(pr) == testutil::oracle_width_exhaustive(pr, 6));
}

TEST_CASE("width matches the BFS-tree oracle on medium instances") {
    for (auto [m, n] : {std::pair{8, 8}, {7, 9}}) {
        EmbeddedGraph t = gen_torus_grid(m, n);
        CHECK(width(t) == testutil::oracle_width_bfs(t));
    }
    EmbeddedGraph k = gen_klein_grid(8, 8);
    CHECK(width(k) == testutil::oracle_width_bfs(k));
    EmbeddedGraph p = gen_projective_grid(8);
    CHECK(width(p) == testutil::oracle_width_bfs(p));
}

TEST_CASE("shortest noncontractible cycle is noncontractible and chordless") {
    for (EmbeddedGraph g : {gen_torus_grid(6, 7), gen_klein_grid(6, 6),
                            gen_projective_grid(6), testutil::k7_torus()}) {
        auto c = shortest_noncontractible_cycle(g);
        CHECK(c.length() == width(g));
        CHECK(!is_contractible(g, c));
        CHECK(!has_chord(g, c));
    }
    CHECK_THROWS_AS(shortest_noncontractible_cycle(testutil::octahedron()),
                    hypothesis_error);
}

// A distance witness is either an open walk between two cycle vertices
// (value+1 entries) or a closed walk rooted on the cycle, listed with its
// root once (value entries, last entry adjacent to the root).
static void check_distance_witness(const EmbeddedGraph& g, const CycleOnSurface& c,
                                   const DistanceReport& r) {
    REQUIRE(!r.infinite());
    std::set<Vertex> on(c.vertices.begin(), c.vertices.end());
    const auto& w = r.witness;
    const size_t val = static_cast<size_t>(*r.value);
    REQUIRE((w.size() == val || w.size() == val + 1));
    CHECK(on.count(w.front()));
    for (size_t i = 0; i + 1 < w.size(); ++i) CHECK(g.adjacent(w[i], w[i + 1]));
    if (w.size() == val) {
        CHECK(g.adjacent(w.back(), w.front()));
        for (size_t i = 1; i < w.size(); ++i) CHECK(!on.count(w[i]));
    } else {
        CHECK(on.count(w.back()));
        for (size_t i = 1; i + 1 < w.size(); ++i) CHECK(!on.count(w[i]));
    }
}

TEST_CASE("ncdist: oracle agreement, width bound, relation to ctdist") {
    EmbeddedGraph t = gen_torus_grid(6, 6);
    auto mer = make_cycle(t, column(6, 6, 0));
    auto nd = ncdist(t, mer);
    REQUIRE(!nd.infinite());
    CHECK(*nd.value == testutil::oracle_ncdist_exhaustive(t, mer, 8));
    auto cd = ctdist(t, mer);
    REQUIRE(!cd.infinite());
    CHECK(*cd.value == *nd.value);
    CHECK(*nd.value * 2 >= width(t));

    // On a nonsquare grid the closed diagonal witness undercuts every
    // crossing path, so only the inequality holds.
    EmbeddedGraph t2 = gen_torus_grid(5, 7);
    auto mer2 = make_cycle(t2, column(5, 7, 2));
    auto nd2 = ncdist(t2, mer2);
    auto cd2 = ctdist(t2, mer2);
    REQUIRE(!nd2.infinite());
    CHECK(*nd2.value == testutil::oracle_ncdist_exhaustive(t2, mer2, 9));
    CHECK(*nd2.value <= *cd2.value);

    check_distance_witness(t, mer, nd);
    check_distance_witness(t, mer, cd);
    check_distance_witness(t2, mer2, nd2);
    check_distance_witness(t2, mer2, cd2);
}

TEST_CASE("ncdist on one-sided cores matches the oracle") {
    EmbeddedGraph p = gen_projective_grid(5);
    auto core = shortest_noncontractible_cycle(p);
    auto nd = ncdist(p, core);
    REQUIRE(!nd.infinite());
    CHECK(*nd.value == testutil::oracle_ncdist_exhaustive(p, core, 7));
    CHECK(*nd.value * 2 >= width(p));
}

TEST_CASE("ctdist is infinite across a separating neck") {
    EmbeddedGraph a = gen_torus_grid(5, 5);
    EmbeddedGraph b = gen_torus_grid(5, 5);
    EmbeddedGraph s = connect_sum(a, b, 0, 0);
    std::vector<Vertex> neck;
    for (Dart d : a.faces()[0].darts) neck.push_back(a.tail(d));
    auto c = make_cycle(s, neck);
    CHECK(!is_contractible(s, c));
    CHECK(cycle_sidedness(s, c) == Sidedness::two_sided);
    auto cd = ctdist(s, c);
    CHECK(cd.infinite());
    auto nd = ncdist(s, c);
    CHECK(!nd.infinite());
}

TEST_CASE("canonical cycles against the disk oracle") {
    EmbeddedGraph g = gen_torus_grid(10, 10);
    Vertex x = 3 * 10 + 3;
    for (int k = 1; k <= 4; ++k) {
        auto c = canonical_cycle(g, x, k);
        auto oracle = testutil::disk_oracle(g, x, k);
        std::vector<Vertex> got = c.vertices;
        std::sort(got.begin(), got.end());
        CHECK(got == oracle.boundary_vertices);
        CHECK(c.length() == oracle.boundary_edges);
        CHECK(c.length() == 6 * k);
        std::vector<int> dist = testutil::bfs_dist(g, x);
        for (Vertex v : c.vertices) CHECK(dist[v] == k);
        CHECK(!has_chord(g, c));
        CHECK(is_contractible(g, c));
        // The disk side is the closed ball of radius k.
        auto inside = disk_interior(g, c);
        std::sort(inside.begin(), inside.end());
        std::vector<Vertex> ball;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (dist[v] <= k) ball.push_back(v);
        CHECK(inside == ball);
    }
    CHECK_THROWS_AS(canonical_cycle(g, x, 5), hypothesis_error);
}

TEST_CASE("canonical cycle is independent of rotation roots") {
    EmbeddedGraph g = gen_torus_grid(8, 8);
    std::vector<std::vector<Dart>> rot;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto r = g.rotation(v);
        std::rotate(r.begin(), r.begin() + (v % r.size()), r.end());
        rot.push_back(r);
    }
    EmbeddedGraph h = EmbeddedGraph::from_parts(g.vertex_count(), g.edges(), rot);
    auto a = canonical_cycle(g, 27, 2);
    auto b = canonical_cycle(h, 27, 2);
    CHECK(a.vertices == b.vertices);
}

TEST_CASE("side partition: disjoint sides with no joining edge") {
    EmbeddedGraph g = gen_torus_grid(8, 8);
    auto mer = make_cycle(g, column(8, 8, 0));
    int w = width(g);
    for (int k = 1; 2 * k + 2 <= w; ++k) {
        SidePartition sp = side_partition(g, mer, k);
        std::set<Vertex> rhs, lhs;
        for (const auto& layer : sp.right_layers)
            rhs.insert(layer.begin(), layer.end());
        for (const auto& layer : sp.left_layers) lhs.insert(layer.begin(), layer.end());
        for (Vertex v : rhs) CHECK(!lhs.count(v));
        for (const EdgeRec& r : g.edges()) {
            bool joins = (rhs.count(r.u) && lhs.count(r.v)) ||
                         (rhs.count(r.v) && lhs.count(r.u));
            CHECK(!joins);
        }
        CHECK(static_cast<int>(sp.right_layers.size()) == k);
        // Layer i holds vertices at distance exactly i+1 from the cycle.
        LayerSet ls = neighborhood_layers(g, mer.vertices, k);
        for (int i = 0; i < k; ++i) {
            for (Vertex v : sp.right_layers[i]) CHECK(ls.depth[v] == i + 1);
            for (Vertex v : sp.left_layers[i]) CHECK(ls.depth[v] == i + 1);
        }
    }
}

TEST_CASE("one-sided subpath partition: the local variant stays disjoint") {
    EmbeddedGraph p = gen_projective_grid(8);
    auto core = shortest_noncontractible_cycle(p);
    int m = core.length() / 2;
    for (int k = 1; 2 * k + 2 <= width(p); ++k) {
        SidePartition sp = side_partition(p, core, 0, m, k);
        std::set<Vertex> rhs(sp.right.begin(), sp.right.end());
        std::set<Vertex> lhs(sp.left.begin(), sp.left.end());
        for (Vertex v : rhs) CHECK(!lhs.count(v));
        for (const EdgeRec& r : p.edges()) {
            bool joins = (rhs.count(r.u) && lhs.count(r.v)) ||
                         (rhs.count(r.v) && lhs.count(r.u));
            CHECK(!joins);
        }
    }
}

TEST_CASE("right and left degrees on a straight meridian") {
    EmbeddedGraph g = gen_torus_grid(7, 7);
    auto mer = make_cycle(g, column(7, 7, 3));
    for (Vertex v : mer.vertices) {
        CHECK(right_degree(g, mer, v) == 2);
        CHECK(left_degree(g, mer, v) == 2);
    }
}

TEST_CASE("bigon homotopy accepts local detours and rejects wraps") {
    EmbeddedGraph g = gen_torus_grid(6, 6);
    auto mer = make_cycle(g, column(6, 6, 0));
    // Local detour through the next column bounds a bigon with the arc.
    std::vector<Vertex> detour{0, 7, 13, 19, 18};
    CHECK(bigon_homotopic(g, mer, 0, 3, detour));
    // A path wrapping horizontally does not.
    std::vector<Vertex> wrap{0, 1, 2, 3, 4, 5, 6};
    CHECK(bigon_homotopic(g, mer, 0, 1, wrap) == false);
}

TEST_CASE("walk contractibility handles spurs and repeated vertices") {
    EmbeddedGraph g = gen_torus_grid(6, 6);
    // A facial triangle with a spur is still contractible.
    std::vector<Vertex> spur{0, 1, 7, 13, 7};
    CHECK(detail::walk_contractible(g, spur));
    // The meridian with a spur is still noncontractible.
    std::vector<Vertex> mer{0, 1, 0, 6, 12, 18, 24, 30};
    CHECK(!detail::walk_contractible(g, mer));
}
