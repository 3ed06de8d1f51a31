#include "surf/toolkit.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "surf/errors.hpp"
#include "surf/surgery.hpp"

namespace surf {

namespace {

// Assembles a simple embedded graph from per-vertex neighbor lists given in
// cyclic order.  Edges must be registered first so ids are deterministic.
struct Builder {
    int n;
    std::vector<EdgeRec> edges;
    std::unordered_map<std::uint64_t, Edge> index;

    explicit Builder(int vertices) : n(vertices) {}

    static std::uint64_t key(Vertex a, Vertex b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    }

    void add(Vertex u, Vertex v, int sign) {
        SURF_CHECK(u != v, "generator produced a loop");
        auto [it, fresh] = index.emplace(key(u, v), static_cast<Edge>(edges.size()));
        SURF_CHECK(fresh, "generator produced a parallel edge");
        (void)it;
        edges.push_back(EdgeRec{u, v, sign});
    }

    Dart dart(Vertex from, Vertex to) const {
        auto it = index.find(key(from, to));
        SURF_CHECK(it != index.end(), "generator referenced a missing edge");
        Edge e = it->second;
        return 2 * e + (edges[e].u == from ? 0 : 1);
    }

    EmbeddedGraph finish(const std::vector<std::vector<Vertex>>& neighbor_rotations) const {
        std::vector<std::vector<Dart>> rot(n);
        for (Vertex v = 0; v < n; ++v) {
            rot[v].reserve(neighbor_rotations[v].size());
            for (Vertex w : neighbor_rotations[v]) rot[v].push_back(dart(v, w));
        }
        return EmbeddedGraph::from_parts(n, edges, std::move(rot), false);
    }
};

}  // namespace

EmbeddedGraph gen_torus_grid(int m, int n) {
    if (m < 3 || n < 3) throw parse_error("torus grid needs m, n >= 3");
    auto id = [n](int i, int j) { return i * n + j; };
    auto wrap = [](int x, int mod) { return ((x % mod) + mod) % mod; };

    Builder b(m * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            Vertex v = id(i, j);
            b.add(v, id(i, wrap(j + 1, n)), +1);           // east
            b.add(v, id(wrap(i + 1, m), j), +1);           // south
            b.add(v, id(wrap(i + 1, m), wrap(j + 1, n)), +1);  // southeast
        }

    std::vector<std::vector<Vertex>> rot(m * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            rot[id(i, j)] = {
                id(i, wrap(j + 1, n)),                   // east
                id(wrap(i + 1, m), wrap(j + 1, n)),      // southeast
                id(wrap(i + 1, m), j),                   // south
                id(i, wrap(j - 1, n)),                   // west
                id(wrap(i - 1, m), wrap(j - 1, n)),      // northwest
                id(wrap(i - 1, m), j),                   // north
            };
        }
    return b.finish(rot);
}

EmbeddedGraph gen_klein_grid(int m, int n) {
    if (m < 3 || n < 3) throw parse_error("Klein grid needs m, n >= 3");
    auto id = [n](int i, int j) { return i * n + j; };
    auto wrap = [](int x, int mod) { return ((x % mod) + mod) % mod; };

    // Column n-1 meets column 0 through a glide reflection sending row r to
    // row m-1-r.  East seam edges join r to m-1-r; the seam squares keep the
    // diagonal that the reflection maps onto a normal southeast diagonal,
    // which is the northeast-going one, joining r to (m-r) mod m.
    Builder b(m * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            Vertex v = id(i, j);
            if (j < n - 1) {
                b.add(v, id(i, j + 1), +1);                        // east
                b.add(v, id(wrap(i + 1, m), j), +1);               // south
                b.add(v, id(wrap(i + 1, m), j + 1), +1);           // southeast
            } else {
                b.add(v, id(m - 1 - i, 0), -1);                    // east across seam
                b.add(v, id(wrap(i + 1, m), j), +1);               // south
                b.add(v, id(wrap(m - i, m), 0), -1);               // northeast across seam
            }
        }

    std::vector<std::vector<Vertex>> rot(m * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            Vertex east = (j < n - 1) ? id(i, j + 1) : id(m - 1 - i, 0);
            Vertex west = (j > 0) ? id(i, j - 1) : id(m - 1 - i, n - 1);
            Vertex northwest = (j > 0) ? id(wrap(i - 1, m), j - 1) : id(wrap(m - i, m), n - 1);
            if (j < n - 1) {
                rot[id(i, j)] = {
                    east,
                    id(wrap(i + 1, m), j + 1),  // southeast
                    id(wrap(i + 1, m), j),      // south
                    west,
                    northwest,
                    id(wrap(i - 1, m), j),      // north
                };
            } else {
                rot[id(i, j)] = {
                    east,
                    id(wrap(i + 1, m), j),      // south
                    west,
                    northwest,
                    id(wrap(i - 1, m), j),      // north
                    id(wrap(m - i, m), 0),      // northeast across seam
                };
            }
        }
    return b.finish(rot);
}

EmbeddedGraph gen_projective_grid(int n) {
    if (n < 3) throw parse_error("projective grid needs n >= 3");
    auto id = [n](int i, int j) { return i * n + j; };

    // Moebius strip: an n x n grid whose column n-1 meets column 0 through
    // the glide reflection r -> n-1-r, the Klein grid's east seam without the
    // vertical wrap.  Rows 0 and n-1 together with the two outermost seam
    // edges bound a single 2n-gon; capping that face with an apex vertex
    // closes the projective plane.
    Builder b(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vertex v = id(i, j);
            if (j < n - 1) b.add(v, id(i, j + 1), +1);
            else b.add(v, id(n - 1 - i, 0), -1);                     // east across seam
            if (i < n - 1) b.add(v, id(i + 1, j), +1);               // south
            if (i < n - 1 && j < n - 1) b.add(v, id(i + 1, j + 1), +1);  // southeast
            if (i >= 1 && j == n - 1) b.add(v, id(n - i, 0), -1);    // northeast across seam
        }

    std::vector<std::vector<Vertex>> rot(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Vertex> r;
            // Clockwise slot order: east, southeast, south, west, northwest,
            // north, northeast; strip-boundary vertices simply skip the
            // directions that do not exist.
            if (j < n - 1) r.push_back(id(i, j + 1));
            else r.push_back(id(n - 1 - i, 0));
            if (i < n - 1 && j < n - 1) r.push_back(id(i + 1, j + 1));
            if (i < n - 1) r.push_back(id(i + 1, j));
            if (j > 0) r.push_back(id(i, j - 1));
            else r.push_back(id(n - 1 - i, n - 1));
            if (i > 0 && j > 0) r.push_back(id(i - 1, j - 1));
            if (i > 0 && j == 0) r.push_back(id(n - i, n - 1));
            if (i > 0) r.push_back(id(i - 1, j));
            if (i >= 1 && j == n - 1) r.push_back(id(n - i, 0));
            rot[id(i, j)] = std::move(r);
        }
    const EmbeddedGraph strip = b.finish(rot);

    int cap = -1;
    const auto& fs = strip.faces();
    for (std::size_t f = 0; f < fs.size(); ++f)
        if (fs[f].size() != 3) {
            SURF_CHECK(cap < 0, "strip has more than one non-triangle face");
            cap = static_cast<int>(f);
        }
    SURF_CHECK(cap >= 0 && fs[cap].size() == 2 * n, "strip boundary face is malformed");
    return detail::subdivide_face(strip, cap).graph;
}

ZigzagInstance gen_zigzag_klein(int n) {
    if (n < 8 || n % 2 != 0) throw parse_error("zigzag instance needs even n >= 8");
    const int N = n + 1;
    EmbeddedGraph g = gen_klein_grid(N, N);

    // Start row solving the one-sweep closure: east steps at even columns,
    // southeast at odd ones, crossing the seam by the edge type that exists
    // for this residue of N.
    int a = (N % 4 == 1) ? (N - 1) / 4 : (N + 1) / 4;
    std::vector<Vertex> core;
    core.reserve(N);
    for (int c = 0; c < N; ++c) core.push_back((a + c / 2) * N + c);
    for (int k = 0; k + 1 < N; ++k)
        SURF_CHECK(g.adjacent(core[k], core[k + 1]), "zigzag step missing");
    SURF_CHECK(g.adjacent(core[N - 1], core[0]), "zigzag closure missing");
    return ZigzagInstance{std::move(g), std::move(core)};
}

namespace {

// Reorient a face walk so that consecutive darts satisfy the all-positive
// successor rule; valid only when every edge sign is +1.
std::vector<Dart> succ_oriented_walk(const EmbeddedGraph& g, const FaceWalk& f) {
    std::vector<Dart> w = f.darts;
    SURF_CHECK(w.size() >= 2, "degenerate face walk");
    if (g.rotation_successor(twin(w[0])) == w[1]) return w;
    std::reverse(w.begin(), w.end());
    for (Dart& d : w) d = twin(d);
    SURF_CHECK(g.rotation_successor(twin(w[0])) == w[1], "face walk not orientable");
    return w;
}

}  // namespace

EmbeddedGraph gen_stacked_disk(int vertex_target, std::uint64_t seed) {
    if (vertex_target < 3) throw parse_error("stacked disk needs at least 3 vertices");
    std::vector<EdgeRec> edges = {{0, 1, +1}, {1, 2, +1}, {2, 0, +1}};
    std::vector<std::vector<Dart>> rot = {{0, 5}, {2, 1}, {4, 3}};
    EmbeddedGraph g = EmbeddedGraph::from_parts(3, edges, rot, false);

    std::mt19937_64 rng(seed);
    while (g.vertex_count() < vertex_target) {
        int f = static_cast<int>(rng() % static_cast<std::uint64_t>(g.face_count()));
        std::vector<Dart> walk = succ_oriented_walk(g, g.faces()[f]);
        SURF_CHECK(walk.size() == 3, "stacking a non-triangle");

        const Vertex w = g.vertex_count();
        std::vector<EdgeRec> es = g.edges();
        std::vector<std::vector<Dart>> rs(w + 1);
        for (Vertex v = 0; v < w; ++v) rs[v] = g.rotation(v);
        // New edges to the corners x, y, z; insert each new dart right after
        // the twin of the walk dart entering that corner.
        Vertex x = g.tail(walk[0]), y = g.tail(walk[1]), z = g.tail(walk[2]);
        Edge ex = static_cast<Edge>(es.size());
        es.push_back(EdgeRec{x, w, +1});
        Edge ey = static_cast<Edge>(es.size());
        es.push_back(EdgeRec{y, w, +1});
        Edge ez = static_cast<Edge>(es.size());
        es.push_back(EdgeRec{z, w, +1});
        auto insert_after = [&](Vertex at, Dart after, Dart novel) {
            auto& r = rs[at];
            auto it = std::find(r.begin(), r.end(), after);
            SURF_CHECK(it != r.end(), "rotation insertion anchor missing");
            r.insert(it + 1, novel);
        };
        insert_after(y, twin(walk[0]), 2 * ey);
        insert_after(z, twin(walk[1]), 2 * ez);
        insert_after(x, twin(walk[2]), 2 * ex);
        rs[w] = {2 * ey + 1, 2 * ex + 1, 2 * ez + 1};
        g = EmbeddedGraph::from_parts(w + 1, std::move(es), std::move(rs), false);
    }
    return g;
}

EmbeddedGraph connect_sum(const EmbeddedGraph& a, const EmbeddedGraph& b, int face_a, int face_b) {
    SURF_REQUIRE(is_triangulation(a) && is_triangulation(b), "connected sum needs triangulations");
    for (const EdgeRec& r : a.edges()) SURF_REQUIRE(r.sign > 0, "connected sum needs positive signs");
    for (const EdgeRec& r : b.edges()) SURF_REQUIRE(r.sign > 0, "connected sum needs positive signs");
    SURF_REQUIRE(face_a >= 0 && face_a < a.face_count(), "face_a out of range");
    SURF_REQUIRE(face_b >= 0 && face_b < b.face_count(), "face_b out of range");

    std::vector<Dart> wa = succ_oriented_walk(a, a.faces()[face_a]);
    std::vector<Dart> wb = succ_oriented_walk(b, b.faces()[face_b]);
    const int na = a.vertex_count();
    const int ma = a.edge_count();

    Vertex av[3] = {a.tail(wa[0]), a.tail(wa[1]), a.tail(wa[2])};
    // Reverse one boundary so the band's faces close up.
    Vertex bv[3] = {b.tail(wb[0]) + na, b.tail(wb[2]) + na, b.tail(wb[1]) + na};
    // wb walks c1 -> c2 -> c3; with (b1,b2,b3) = (c1,c3,c2):
    //   b1->b2 = c1->c3 = twin(wb[2]),  b2->b3 = c3->c2 = twin(wb[1]),
    //   b3->b1 = c2->c1 = twin(wb[0]).
    Dart b_anchor[3];
    b_anchor[0] = twin(wb[2]) + 2 * ma;
    b_anchor[1] = twin(wb[1]) + 2 * ma;
    b_anchor[2] = twin(wb[0]) + 2 * ma;

    std::vector<EdgeRec> es = a.edges();
    es.reserve(ma + b.edge_count() + 6);
    for (const EdgeRec& r : b.edges()) es.push_back(EdgeRec{r.u + na, r.v + na, r.sign});
    Edge rung[3], diag[3];
    for (int i = 0; i < 3; ++i) {
        rung[i] = static_cast<Edge>(es.size());
        es.push_back(EdgeRec{av[i], bv[i], +1});
    }
    for (int i = 0; i < 3; ++i) {
        diag[i] = static_cast<Edge>(es.size());
        es.push_back(EdgeRec{av[i], bv[(i + 1) % 3], +1});
    }

    std::vector<std::vector<Dart>> rs(na + b.vertex_count());
    for (Vertex v = 0; v < na; ++v) rs[v] = a.rotation(v);
    for (Vertex v = 0; v < b.vertex_count(); ++v) {
        rs[na + v].reserve(b.degree(v));
        for (Dart d : b.rotation(v)) rs[na + v].push_back(d + 2 * ma);
    }
    auto insert_pair_after = [&](Vertex at, Dart after, Dart first, Dart second) {
        auto& r = rs[at];
        auto it = std::find(r.begin(), r.end(), after);
        SURF_CHECK(it != r.end(), "rotation insertion anchor missing");
        it = r.insert(it + 1, second);
        r.insert(it, first);
    };
    for (int i = 0; i < 3; ++i) {
        // At a_i, inside the removed corner (right after a_i -> a_{i-1}):
        // first the rung to b_i, then the diagonal to b_{i+1}.
        Dart back = twin(wa[(i + 2) % 3]);
        insert_pair_after(av[i], back, 2 * rung[i], 2 * diag[i]);
        // At b_i, inside the removed corner (right after b_i -> b_{i+1}):
        // first the rung back to a_i, then the diagonal to a_{i-1}.
        insert_pair_after(bv[i], b_anchor[i], 2 * rung[i] + 1, 2 * diag[(i + 2) % 3] + 1);
    }
    return EmbeddedGraph::from_parts(na + b.vertex_count(), std::move(es), std::move(rs), false);
}

}  // namespace surf
