#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "surf/coloring.hpp"
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

TEST_CASE("four_color: complete graph on four vertices") {
    EmbeddedGraph k4 = gen_stacked_disk(4, 1);
    REQUIRE(k4.vertex_count() == 4);
    Coloring col = four_color(k4);
    CHECK(testutil::proper_coloring(k4, col.assignment, 4));
    std::set<int> used(col.assignment.begin(), col.assignment.end());
    CHECK(used.size() == 4);
    CHECK(col.palette_used() == used);
}

TEST_CASE("four_color: icosahedron") {
    EmbeddedGraph ico = testutil::icosahedron();
    Coloring col = four_color(ico);
    CHECK(testutil::proper_coloring(ico, col.assignment, 4));
}

TEST_CASE("four_color is deterministic") {
    EmbeddedGraph g = gen_stacked_disk(60, 42);
    Coloring a = four_color(g);
    Coloring b = four_color(g);
    CHECK(a.assignment == b.assignment);
}

TEST_CASE("four_color with a precolored triangle") {
    EmbeddedGraph g = gen_stacked_disk(30, 5);
    PartialColoring pre;
    pre.assignment.assign(g.vertex_count(), 0);
    pre.assignment[0] = 1;
    pre.assignment[1] = 2;
    pre.assignment[2] = 3;
    REQUIRE(g.adjacent(0, 1));
    REQUIRE(g.adjacent(1, 2));
    REQUIRE(g.adjacent(0, 2));
    auto col = four_color(g, pre);
    REQUIRE(col.has_value());
    CHECK(col->assignment[0] == 1);
    CHECK(col->assignment[1] == 2);
    CHECK(col->assignment[2] == 3);
    CHECK(testutil::proper_coloring(g, col->assignment, 4));

    // An improper precoloring is reported as inextensible, not an error.
    PartialColoring bad;
    bad.assignment.assign(g.vertex_count(), 0);
    bad.assignment[0] = 1;
    bad.assignment[1] = 1;
    CHECK(!four_color(g, bad).has_value());
}

TEST_CASE("four_color respects its node cap") {
    EmbeddedGraph g = gen_stacked_disk(80, 9);
    CHECK_THROWS_AS(four_color(g, 10), resource_limit_error);
}

#ifdef SURF_HAVE_BOOST
TEST_CASE("four_color refuses non-planar input") {
    CHECK_THROWS_AS(four_color(testutil::k7_torus()), hypothesis_error);
}
#endif

TEST_CASE("kempe_change: chain flip on a path") {
    std::vector<std::vector<std::pair<int, int>>> nbrs{
        {{1, 1}}, {{0, 1}, {2, 1}}, {{1, 1}, {3, 1}}, {{2, 1}}};
    EmbeddedGraph path = testutil::build_from_neighbors(4, nbrs);
    Coloring col;
    col.assignment = {1, 2, 1, 2};
    Coloring flipped = kempe_change(path, col, 0, 1, 2);
    CHECK(flipped.assignment == std::vector<int>{2, 1, 2, 1});
    // A color absent from the neighborhood flips just the vertex.
    Coloring lone = kempe_change(path, col, 3, 2, 3);
    CHECK(lone.assignment == std::vector<int>{1, 2, 1, 3});
}

TEST_CASE("kempe_change: involution and properness on random disks") {
    for (std::uint64_t seed : {11u, 22u, 33u, 44u, 55u}) {
        EmbeddedGraph g = gen_stacked_disk(40, seed);
        Coloring col = four_color(g);
        for (Vertex v = 0; v < g.vertex_count(); v += 7) {
            int a = col.assignment[v];
            int b = a % 4 + 1;
            Coloring once = kempe_change(g, col, v, a, b);
            CHECK(testutil::proper_coloring(g, once.assignment, 5));
            CHECK(once.assignment[v] == b);
            Coloring twice = kempe_change(g, once, v, a, b);
            CHECK(twice.assignment == col.assignment);
        }
    }
}

TEST_CASE("kempe_change rejects bad inputs") {
    EmbeddedGraph g = gen_stacked_disk(10, 3);
    Coloring col = four_color(g);
    CHECK_THROWS_AS(kempe_change(g, col, 0, 2, 2), hypothesis_error);
    CHECK_THROWS_AS(kempe_change(g, col, 0, 0, 1), hypothesis_error);
    int a = col.assignment[0];
    int c = 1 + (a % 5);
    int d = 1 + (c % 5);
    if (c != a && d != a && c != d)
        CHECK_THROWS_AS(kempe_change(g, col, 0, c, d), hypothesis_error);
    Coloring improper = col;
    improper.assignment[1] = improper.assignment[0];
    if (g.adjacent(0, 1))
        CHECK_THROWS_AS(kempe_change(g, improper, 0, improper.assignment[0],
                                     improper.assignment[0] % 4 + 1),
                        hypothesis_error);
}

TEST_CASE("lift: even cycle alternates base and five") {
    EmbeddedGraph g = gen_torus_grid(6, 6);
    auto mer = make_cycle(g, column(6, 6, 0));
    PartialColoring pc;
    pc.assignment.assign(g.vertex_count(), 0);
    PartialColoring out = lift_cycle_coloring(g, mer, 3, pc);
    for (int i = 0; i < mer.length(); ++i)
        CHECK(out.assignment[mer.vertices[i]] == (i % 2 ? 5 : 3));
    // Off-cycle vertices are untouched.
    std::set<Vertex> on(mer.vertices.begin(), mer.vertices.end());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!on.count(v)) CHECK(out.assignment[v] == 0);
}

TEST_CASE("lift: odd cycle pivots at its low-degree vertex") {
    EmbeddedGraph g = gen_torus_grid(6, 6);
    EmbeddedGraph sub = testutil::subdivide_edge(g, 18, 24);
    Vertex z = 36;
    std::vector<Vertex> vs{0, 6, 12, 18, z, 24, 30};
    auto c = make_cycle(sub, vs);
    REQUIRE(is_nice(sub, c));
    PartialColoring pc;
    pc.assignment.assign(sub.vertex_count(), 0);
    PartialColoring out = lift_cycle_coloring(sub, c, 1, pc);
    for (Vertex v : vs) CHECK(out.assignment[v] != 0);
    // Proper along the cycle, z wears neither neighbor color.
    for (int i = 0; i < c.length(); ++i) {
        int a = out.assignment[c.vertices[i]];
        int b = out.assignment[c.vertices[(i + 1) % c.length()]];
        CHECK(a != b);
    }
    CHECK(out.assignment[z] != 5);
    CHECK(out.assignment[z] != 1);

    // A pre-colored 5 next to the cycle is flagged, not absorbed.
    PartialColoring clash;
    clash.assignment.assign(sub.vertex_count(), 0);
    clash.assignment[7] = 5;  // neighbor of cycle vertex 6
    CHECK_THROWS_AS(lift_cycle_coloring(sub, c, 1, clash), hypothesis_error);
}

TEST_CASE("lift rejects non-nice cycles and colored targets") {
    EmbeddedGraph odd = gen_torus_grid(7, 7);
    auto mer = make_cycle(odd, column(7, 7, 0));
    PartialColoring pc;
    pc.assignment.assign(odd.vertex_count(), 0);
    CHECK_THROWS_AS(lift_cycle_coloring(odd, mer, 1, pc), hypothesis_error);

    EmbeddedGraph even = gen_torus_grid(6, 6);
    auto mer6 = make_cycle(even, column(6, 6, 0));
    PartialColoring taken;
    taken.assignment.assign(even.vertex_count(), 0);
    taken.assignment[0] = 2;
    CHECK_THROWS_AS(lift_cycle_coloring(even, mer6, 1, taken), internal_error);
}

TEST_CASE("patch_triangle: identity, single interior, and a larger disk") {
    EmbeddedGraph k4 = gen_stacked_disk(4, 1);
    PatchRegion one;
    one.boundary = {0, 1, 2};
    one.interior = {3};
    PartialColoring out = patch_triangle(k4, one, {1, 2, 3});
    CHECK(out.assignment[0] == 1);
    CHECK(out.assignment[1] == 2);
    CHECK(out.assignment[2] == 3);
    CHECK(out.assignment[3] == 4);
    PartialColoring alt = patch_triangle(k4, one, {2, 3, 5});
    CHECK(alt.assignment[3] == 1);

    EmbeddedGraph disk = gen_stacked_disk(50, 7);
    auto tri = make_cycle(disk, std::vector<Vertex>{0, 1, 2});
    std::vector<Vertex> side = disk_interior(disk, tri);
    PatchRegion big;
    big.boundary = {0, 1, 2};
    std::set<Vertex> bset(big.boundary.begin(), big.boundary.end());
    for (Vertex v : side)
        if (!bset.count(v)) big.interior.push_back(v);
    if (big.interior.empty()) {
        // The smaller side is bare; patch the populated side instead.
        std::set<Vertex> small(side.begin(), side.end());
        for (Vertex v = 0; v < disk.vertex_count(); ++v)
            if (!small.count(v) && !bset.count(v)) big.interior.push_back(v);
    }
    REQUIRE(!big.interior.empty());
    PartialColoring full = patch_triangle(disk, big, {4, 2, 1});
    CHECK(full.assignment[0] == 4);
    CHECK(full.assignment[1] == 2);
    CHECK(full.assignment[2] == 1);
    // Proper inside the patch, untouched outside it.
    std::set<Vertex> region(big.interior.begin(), big.interior.end());
    region.insert(bset.begin(), bset.end());
    for (const EdgeRec& r : disk.edges())
        if (region.count(r.u) && region.count(r.v))
            CHECK(full.assignment[r.u] != full.assignment[r.v]);
    for (Vertex v = 0; v < disk.vertex_count(); ++v)
        if (!region.count(v))
            CHECK(full.assignment[v] == 0);
        else
            CHECK(full.assignment[v] != 0);
}

TEST_CASE("patch_quad: apex case and the four boundary patterns") {
    EmbeddedGraph oct = testutil::octahedron();
    PatchRegion apex;
    apex.boundary = {1, 2, 3, 4};
    apex.interior = {0};

    PartialColoring p1 = patch_quad(oct, apex, {1, 2, 1, 2});
    CHECK(p1.assignment[1] == 1);
    CHECK(p1.assignment[2] == 2);
    CHECK(p1.assignment[3] == 1);
    CHECK(p1.assignment[4] == 2);
    CHECK(p1.assignment[0] >= 3);
    CHECK(p1.assignment[0] != 2);  // case keeps color 2 off the interior
    CHECK(p1.assignment[5] == 0);

    // (a, b, a, c): the interior avoids c.
    PartialColoring p2 = patch_quad(oct, apex, {1, 2, 1, 3});
    CHECK(p2.assignment[0] != 3);
    CHECK(p2.assignment[0] != 1);  // adjacent to all four corners
    CHECK(p2.assignment[0] != 2);

    // (a, b, c, b): the interior avoids b.
    PartialColoring p3 = patch_quad(oct, apex, {1, 2, 3, 2});
    CHECK(p3.assignment[0] != 2);

    // (a, b, c, d): the interior avoids d.
    PartialColoring p4 = patch_quad(oct, apex, {1, 2, 3, 4});
    CHECK(p4.assignment[0] == 5);  // all four colors sit on its neighbors
}

TEST_CASE("patch_quad: ten interior vertices, both major cases") {
    // Grow ten vertices inside the 0-side of the octahedron equator.
    EmbeddedGraph g = testutil::octahedron();
    std::set<Vertex> inside{0};
    while (inside.size() < 10) {
        int target = -1;
        const auto& faces = g.faces();
        for (int f = 0; f < static_cast<int>(faces.size()) && target < 0; ++f)
            for (Dart d : faces[f].darts)
                if (inside.count(g.tail(d))) {
                    target = f;
                    break;
                }
        REQUIRE(target >= 0);
        auto sd = detail::subdivide_face(g, target);
        g = sd.graph;
        inside.insert(sd.apex);
    }
    PatchRegion region;
    region.boundary = {1, 2, 3, 4};
    region.interior.assign(inside.begin(), inside.end());

    for (auto colors : std::vector<std::array<int, 4>>{
             {1, 2, 1, 2}, {1, 2, 1, 3}, {1, 2, 3, 2}, {1, 2, 3, 4}, {2, 3, 2, 5}}) {
        PartialColoring out = patch_quad(g, region, colors);
        for (int i = 0; i < 4; ++i)
            CHECK(out.assignment[region.boundary[i]] == colors[i]);
        std::set<Vertex> rset(region.interior.begin(), region.interior.end());
        rset.insert(region.boundary.begin(), region.boundary.end());
        for (const EdgeRec& r : g.edges())
            if (rset.count(r.u) && rset.count(r.v))
                CHECK(out.assignment[r.u] != out.assignment[r.v]);
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            if (rset.count(v)) {
                CHECK(out.assignment[v] >= 1);
                CHECK(out.assignment[v] <= 5);
            } else {
                CHECK(out.assignment[v] == 0);
            }
        }
    }

    // The fourth boundary color of (a, b, c, d) stays off the interior.
    PartialColoring abcd = patch_quad(g, region, {1, 2, 3, 4});
    for (Vertex v : region.interior) CHECK(abcd.assignment[v] != 4);
    // And pattern (a, b, a, b) keeps b off the interior.
    PartialColoring abab = patch_quad(g, region, {1, 2, 1, 2});
    for (Vertex v : region.interior) CHECK(abab.assignment[v] != 2);
}

TEST_CASE("patch_quad rejects improper and chorded boundaries") {
    EmbeddedGraph oct = testutil::octahedron();
    PatchRegion apex;
    apex.boundary = {1, 2, 3, 4};
    apex.interior = {0};
    CHECK_THROWS_AS(patch_quad(oct, apex, {1, 1, 2, 3}), internal_error);

    EmbeddedGraph t = gen_torus_grid(6, 6);
    PatchRegion chorded;
    chorded.boundary = {0, 1, 7, 6};  // diagonal 0-7 is a chord
    chorded.interior = {14};
    CHECK_THROWS_AS(patch_quad(t, chorded, {1, 2, 1, 2}), internal_error);
}

TEST_CASE("five_color: torus grid end to end") {
    EmbeddedGraph g = gen_torus_grid(12, 12);
    Coloring col = five_color(g, 2, true);
    CHECK(testutil::proper_coloring(g, col.assignment, 5));
    ColoringCheck chk = verify_coloring(g, col, 5);
    CHECK(chk.ok);
    CHECK(chk.violations.empty());
}

TEST_CASE("five_color: projective grid end to end") {
    EmbeddedGraph g = gen_projective_grid(10);
    Coloring col = five_color(g, 2, true);
    CHECK(testutil::proper_coloring(g, col.assignment, 5));
    CHECK(verify_coloring(g, col, 5).ok);
}

TEST_CASE("five_color refuses the sphere") {
    CHECK_THROWS_AS(five_color(testutil::icosahedron(), 2, true), hypothesis_error);
}

TEST_CASE("verify_coloring pinpoints defects") {
    EmbeddedGraph g = gen_stacked_disk(25, 4);
    Coloring col = four_color(g);
    CHECK(verify_coloring(g, col, 4).ok);
    CHECK(verify_coloring(g, col, 5).ok);

    Coloring broken = col;
    Vertex v0 = 0;
    Vertex nb = g.neighbors(v0)[0];
    broken.assignment[v0] = broken.assignment[nb];
    ColoringCheck chk = verify_coloring(g, broken, 5);
    CHECK(!chk.ok);
    int expected = 0;
    for (Vertex w : g.neighbors(v0))
        if (broken.assignment[w] == broken.assignment[v0]) ++expected;
    CHECK(static_cast<int>(chk.violations.size()) == expected);

    Coloring ranged = col;
    ranged.assignment[3] = 7;
    CHECK(!verify_coloring(g, ranged, 5).ok);

    Coloring partial = col;
    partial.assignment.pop_back();
    CHECK(!verify_coloring(g, partial, 5).ok);
}
