#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "surf/embedding.hpp"
#include "surf/errors.hpp"
#include "surf/toolkit.hpp"

using namespace surf;

static std::string fixture(const char* name) {
    std::string path = std::string(SURF_TEST_DATA_DIR) + "/" + name;
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

TEST_CASE("darts: twin and edge arithmetic") {
    CHECK(twin(0) == 1);
    CHECK(twin(1) == 0);
    CHECK(twin(7) == 6);
    CHECK(dart_edge(0) == 0);
    CHECK(dart_edge(1) == 0);
    CHECK(dart_edge(9) == 4);
}

TEST_CASE("k7 fixture: parse, surface, round trip") {
    EmbeddedGraph g = parse_embedding(fixture("k7_torus.rot"));
    CHECK(g.vertex_count() == 7);
    CHECK(g.edge_count() == 21);
    SurfaceInfo s = g.surface();
    CHECK(s.faces == 14);
    CHECK(s.euler_characteristic == 0);
    CHECK(s.euler_genus == 2);
    CHECK(s.orientable);
    CHECK(is_triangulation(g));

    // serialize . parse is the identity on the serialized form.
    std::string text = serialize(g);
    EmbeddedGraph h = parse_embedding(text);
    CHECK(h == g);
    CHECK(serialize(h) == text);

    // The fixture matches the programmatic construction.
    CHECK(g == testutil::k7_torus());
}

TEST_CASE("rotation access and dart bookkeeping") {
    EmbeddedGraph g = testutil::k7_torus();
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        CHECK(g.degree(v) == 6);
        int idx = 0;
        for (Dart d : g.rotation(v)) {
            CHECK(g.tail(d) == v);
            CHECK(g.head(d) == g.tail(twin(d)));
            CHECK(g.rotation_index(d) == idx);
            CHECK(g.rotation_successor(g.rotation_predecessor(d)) == d);
            ++idx;
        }
    }
    CHECK(g.adjacent(0, 1));
    CHECK(g.find_edge(0, 3).has_value());
    CHECK(!g.find_edge(0, 0).has_value());
    auto d = g.find_dart(2, 5);
    REQUIRE(d.has_value());
    CHECK(g.tail(*d) == 2);
    CHECK(g.head(*d) == 5);
}

TEST_CASE("sphere fixtures: octahedron and icosahedron") {
    EmbeddedGraph oct = testutil::octahedron();
    SurfaceInfo so = oct.surface();
    CHECK(so.euler_characteristic == 2);
    CHECK(so.euler_genus == 0);
    CHECK(so.orientable);
    CHECK(so.faces == 8);
    CHECK(is_triangulation(oct));

    EmbeddedGraph ico = testutil::icosahedron();
    SurfaceInfo si = ico.surface();
    CHECK(si.euler_characteristic == 2);
    CHECK(si.faces == 20);
    CHECK(si.orientable);
    CHECK(is_triangulation(ico));
    for (Vertex v = 0; v < 12; ++v) CHECK(ico.degree(v) == 5);
}

TEST_CASE("non-triangulation: square faces") {
    // A 4-cycle on the sphere: two square faces.
    std::vector<EdgeRec> edges{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}};
    std::vector<std::vector<Dart>> rot{{0, 7}, {1, 2}, {3, 4}, {5, 6}};
    EmbeddedGraph g = EmbeddedGraph::from_parts(4, edges, rot);
    SurfaceInfo s = g.surface();
    CHECK(s.euler_characteristic == 2);
    CHECK(s.faces == 2);
    CHECK(!is_triangulation(g));
}

TEST_CASE("parse errors carry line numbers and reasons") {
    CHECK_THROWS_AS(parse_embedding("V 2\nE 1\nedge 0 0 5 +\nrot 0 0\nrot 1 1\n"),
                    parse_error);
    CHECK_THROWS_AS(parse_embedding("E 1\nV 2\n"), parse_error);
    CHECK_THROWS_AS(parse_embedding("V 2\nE 1\nedge 0 0 1 +\nrot 0 0 0\nrot 1 1\n"),
                    parse_error);
    CHECK_THROWS_AS(parse_embedding("V 2\nE 1\nedge 0 0 1 +\nrot 0 0\n"), parse_error);
    CHECK_THROWS_AS(parse_embedding("V 2\nE 1\nedge 0 0 1 ?\nrot 0 0\nrot 1 1\n"),
                    parse_error);
    // Loops are rejected outright.
    CHECK_THROWS_AS(parse_embedding("V 1\nE 1\nedge 0 0 0 +\nrot 0 0 1\n"), parse_error);
}

TEST_CASE("multi edges: rejected unless allowed") {
    std::string text =
        "V 2\nE 2\nedge 0 0 1 +\nedge 1 0 1 +\nrot 0 0 2\nrot 1 1 3\n";
    CHECK_THROWS_AS(parse_embedding(text), parse_error);
    EmbeddedGraph g = parse_embedding(text, true);
    CHECK(g.multi_allowed());
    CHECK(!g.is_simple());
    CHECK(g.edge_count() == 2);
    SurfaceInfo s = g.surface();
    CHECK(s.euler_characteristic == 2);
}

TEST_CASE("edge signs round trip") {
    EmbeddedGraph g = gen_klein_grid(6, 6);
    bool any_neg = false;
    for (const EdgeRec& r : g.edges())
        if (r.sign < 0) any_neg = true;
    CHECK(any_neg);
    EmbeddedGraph h = parse_embedding(serialize(g));
    CHECK(h == g);
}

TEST_CASE("neighborhood layers: exact distances on the torus grid") {
    EmbeddedGraph g = gen_torus_grid(8, 8);
    LayerSet ls = neighborhood_layers(g, {0});
    CHECK(ls.layers[0] == std::vector<Vertex>{0});
    for (int i = 0; i <= ls.radius(); ++i)
        for (Vertex v : ls.layers[i]) CHECK(ls.depth[v] == i);
    std::vector<int> dist = testutil::bfs_dist(g, 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK(ls.depth[v] == dist[v]);

    LayerSet capped = neighborhood_layers(g, {0}, 2);
    CHECK(capped.radius() == 2);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        CHECK(capped.depth[v] == (dist[v] <= 2 ? dist[v] : -1));

    // Multi-seed layers take the minimum over seeds.
    LayerSet two = neighborhood_layers(g, {0, 27});
    std::vector<int> d27 = testutil::bfs_dist(g, 27);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        CHECK(two.depth[v] == std::min(dist[v], d27[v]));
}

TEST_CASE("induced subgraph: ids, rotations, provenance") {
    EmbeddedGraph g = gen_torus_grid(6, 6);
    LayerSet ls = neighborhood_layers(g, {7}, 2);
    std::vector<Vertex> keep;
    for (const auto& layer : ls.layers) keep.insert(keep.end(), layer.begin(), layer.end());
    InducedSubgraph sub = induced_subgraph(g, keep);
    CHECK(sub.graph.vertex_count() == static_cast<int>(keep.size()));
    for (Vertex v = 0; v < sub.graph.vertex_count(); ++v) {
        Vertex pv = sub.to_parent[v];
        CHECK(sub.from_parent[pv] == v);
        // Neighbor rotation order is the parent's order restricted to keep.
        std::vector<Vertex> expect;
        for (Vertex w : g.neighbors(pv))
            if (sub.from_parent[w] != -1) expect.push_back(sub.from_parent[w]);
        CHECK(sub.graph.neighbors(v) == expect);
    }
    // Edges of the subgraph are exactly the induced ones.
    int induced = 0;
    for (const EdgeRec& r : g.edges())
        if (sub.from_parent[r.u] != -1 && sub.from_parent[r.v] != -1) ++induced;
    CHECK(sub.graph.edge_count() == induced);
}

TEST_CASE("components and connectivity") {
    EmbeddedGraph g = testutil::octahedron();
    CHECK(g.connected());
    CHECK(g.components().size() == 1);
}

TEST_CASE("faces_of_edge is consistent with the face list") {
    EmbeddedGraph g = testutil::k7_torus();
    const auto& faces = g.faces();
    for (Edge e = 0; e < g.edge_count(); ++e) {
        auto [f1, f2] = g.faces_of_edge(e);
        int hits = 0;
        for (int f : {f1, f2})
            for (Dart d : faces[f].darts)
                if (dart_edge(d) == e) ++hits;
        CHECK(hits == 2);
    }
}
