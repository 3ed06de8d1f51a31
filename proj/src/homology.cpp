#include "surf/homology.hpp"

#include <algorithm>
#include <queue>

#include "surf/detail/graph_data.hpp"
#include "surf/errors.hpp"

namespace surf {

namespace {

// Tree-cotree labeling.  Fills the label fields of `c`; caller holds c.mu and
// has already materialized the face fields.
void compute_labels(const EmbeddedGraph& g, detail::GraphCache& c, int genus) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    const int nf = static_cast<int>(c.faces.size());

    // Breadth-first spanning tree from vertex 0, neighbors in rotation order.
    std::vector<char> in_tree(m, 0);
    {
        std::vector<char> seen(n, 0);
        std::queue<Vertex> q;
        seen[0] = 1;
        q.push(0);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            for (Dart d : g.rotation(v)) {
                Vertex w = g.head(d);
                if (!seen[w]) {
                    seen[w] = 1;
                    in_tree[dart_edge(d)] = 1;
                    q.push(w);
                }
            }
        }
        SURF_CHECK(std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; }),
                   "spanning tree must reach every vertex");
    }

    // Spanning tree of the dual through the remaining edges.  dual_parent[f]
    // is the edge leading back toward face 0; order[] records discovery order.
    std::vector<Edge> dual_parent(nf, -1);
    std::vector<char> face_seen(nf, 0);
    std::vector<int> order;
    order.reserve(nf);
    {
        std::queue<int> q;
        face_seen[0] = 1;
        q.push(0);
        order.push_back(0);
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            for (Dart d : c.faces[f].darts) {
                Edge e = dart_edge(d);
                if (in_tree[e]) continue;
                auto [f1, f2] = c.edge_faces[e];
                int o = (f1 == f) ? f2 : f1;
                if (!face_seen[o]) {
                    face_seen[o] = 1;
                    dual_parent[o] = e;
                    order.push_back(o);
                    q.push(o);
                }
            }
        }
        SURF_CHECK(static_cast<int>(order.size()) == nf, "dual graph must be connected");
    }

    std::vector<char> in_dual(m, 0);
    for (int f = 0; f < nf; ++f)
        if (dual_parent[f] >= 0) in_dual[dual_parent[f]] = 1;

    // Leftover edges generate H1.  Their count is the Euler genus.
    std::vector<Edge> leftover;
    for (Edge e = 0; e < m; ++e)
        if (!in_tree[e] && !in_dual[e]) leftover.push_back(e);

    SURF_CHECK(static_cast<int>(leftover.size()) == genus,
               "leftover edge count must equal the Euler genus");
    if (genus > 64)
        throw resource_limit_error("homology labels support Euler genus at most 64");

    std::vector<std::uint64_t> label(m, 0);
    for (std::size_t i = 0; i < leftover.size(); ++i)
        label[leftover[i]] = std::uint64_t{1} << i;

    // Walk the dual tree leaves-first; each face then has exactly one
    // unresolved edge, its dual parent, fixed by making the face XOR to zero.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int f = *it;
        Edge ef = dual_parent[f];
        if (ef < 0) continue;
        std::uint64_t acc = 0;
        for (Dart d : c.faces[f].darts) {
            Edge e = dart_edge(d);
            if (e != ef) acc ^= label[e];
        }
        label[ef] = acc;
    }

    for (const FaceWalk& fw : c.faces) {
        std::uint64_t acc = 0;
        for (Dart d : fw.darts) acc ^= label[dart_edge(d)];
        SURF_CHECK(acc == 0, "every face walk must be null-homologous");
    }

    c.h1_dim = genus;
    c.edge_label = std::move(label);
    c.leftover_edges = std::move(leftover);
    c.labels_done = true;
}

detail::GraphCache& labels_cache(const EmbeddedGraph& g) {
    auto& c = g.cache();
    {
        std::lock_guard<std::mutex> lk(c.mu);
        if (c.labels_done) return c;
    }
    SURF_REQUIRE(g.vertex_count() > 0 && g.connected(),
                 "homology labels need a connected nonempty graph");
    g.faces();
    const int genus = g.surface().euler_genus;
    std::lock_guard<std::mutex> lk(c.mu);
    if (!c.labels_done) compute_labels(g, c, genus);
    return c;
}

}  // namespace

int h1_dimension(const EmbeddedGraph& g) { return labels_cache(g).h1_dim; }

const std::vector<std::uint64_t>& edge_labels(const EmbeddedGraph& g) {
    return labels_cache(g).edge_label;
}

std::uint64_t walk_label(const EmbeddedGraph& g, std::span<const Dart> walk) {
    const auto& label = edge_labels(g);
    std::uint64_t acc = 0;
    for (Dart d : walk) acc ^= label[dart_edge(d)];
    return acc;
}

std::uint64_t cycle_label(const EmbeddedGraph& g, std::span<const Vertex> cycle) {
    const auto& label = edge_labels(g);
    std::uint64_t acc = 0;
    const int t = static_cast<int>(cycle.size());
    for (int i = 0; i < t; ++i) {
        auto e = g.find_edge(cycle[i], cycle[(i + 1) % t]);
        SURF_CHECK(e.has_value(), "cycle must follow edges of the graph");
        acc ^= label[*e];
    }
    return acc;
}

}  // namespace surf
