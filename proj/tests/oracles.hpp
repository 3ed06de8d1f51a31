#pragma once

// Shared fixtures and brute-force oracles for the test suite.  Everything
// here is deliberately naive: independent re-derivations used to check the
// real implementations, never the other way around.

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "surf/embedding.hpp"
#include "surf/topology.hpp"

namespace testutil {

using surf::Dart;
using surf::Edge;
using surf::EmbeddedGraph;
using surf::Vertex;

// Builds a simple embedded graph from per-vertex neighbor lists given in
// rotation order.  nbrs[v] holds (neighbor, sign) pairs; each undirected
// edge must appear once from both ends with equal signs.
inline EmbeddedGraph build_from_neighbors(
    int n, const std::vector<std::vector<std::pair<int, int>>>& nbrs) {
    std::map<std::pair<int, int>, Edge> ids;
    std::vector<surf::EdgeRec> edges;
    std::vector<std::vector<Dart>> rot(n);
    for (int v = 0; v < n; ++v) {
        for (auto [w, sign] : nbrs[v]) {
            auto key = std::minmax(v, w);
            auto it = ids.find(key);
            Edge e;
            if (it == ids.end()) {
                e = static_cast<Edge>(edges.size());
                ids.emplace(key, e);
                edges.push_back({v, w, sign});
            } else {
                e = it->second;
            }
            rot[v].push_back(edges[e].u == v ? 2 * e : 2 * e + 1);
        }
    }
    return EmbeddedGraph::from_parts(n, std::move(edges), std::move(rot));
}

// K7 with the classic toroidal rotation (i+1, i+2, i+4, i+6, i+5, i+3).
inline EmbeddedGraph k7_torus() {
    std::vector<std::vector<std::pair<int, int>>> nbrs(7);
    const int off[6] = {1, 3, 2, 6, 4, 5};
    for (int i = 0; i < 7; ++i)
        for (int k = 0; k < 6; ++k) nbrs[i].push_back({(i + off[k]) % 7, 1});
    return build_from_neighbors(7, nbrs);
}

// Icosahedron on the sphere: apex 0, upper ring 1..5, lower ring 6..10
// (6+i sits under the ring edge (1+i, 1+(i+1)%5)), antipode 11.
inline EmbeddedGraph icosahedron() {
    std::vector<std::vector<std::pair<int, int>>> nbrs(12);
    auto U = [](int i) { return 1 + ((i % 5) + 5) % 5; };
    auto L = [](int i) { return 6 + ((i % 5) + 5) % 5; };
    for (int i = 0; i < 5; ++i) nbrs[0].push_back({U(i), 1});
    for (int i = 0; i < 5; ++i) {
        nbrs[U(i)] = {{0, 1}, {U(i - 1), 1}, {L(i - 1), 1}, {L(i), 1}, {U(i + 1), 1}};
        nbrs[L(i)] = {{11, 1}, {L(i + 1), 1}, {U(i + 1), 1}, {U(i), 1}, {L(i - 1), 1}};
    }
    for (int i = 4; i >= 0; --i) nbrs[11].push_back({L(i), 1});
    return build_from_neighbors(12, nbrs);
}

// Octahedron on the sphere: poles 0 and 5, equator 1..4.
inline EmbeddedGraph octahedron() {
    std::vector<std::vector<std::pair<int, int>>> nbrs(6);
    auto Q = [](int i) { return 1 + ((i % 4) + 4) % 4; };
    for (int i = 0; i < 4; ++i) nbrs[0].push_back({Q(i), 1});
    for (int i = 0; i < 4; ++i)
        nbrs[Q(i)] = {{5, 1}, {Q(i + 1), 1}, {0, 1}, {Q(i - 1), 1}};
    for (int i = 3; i >= 0; --i) nbrs[5].push_back({Q(i), 1});
    return build_from_neighbors(6, nbrs);
}

// Subdivides edge (u, v) of a triangulation with all-positive signs: the
// edge is replaced by a path u-z-v and z is joined to the two opposite
// face corners, keeping a triangulation on the same surface.  z gets the
// largest vertex id.
inline EmbeddedGraph subdivide_edge(const EmbeddedGraph& g, Vertex u, Vertex v) {
    auto eo = g.find_edge(u, v);
    if (!eo) throw std::logic_error("subdivide_edge: no such edge");
    Edge e = *eo;
    // Opposite corners: the third vertices of the two faces on e.
    std::vector<Vertex> corners;
    for (const surf::FaceWalk& f : g.faces()) {
        std::vector<Vertex> vs;
        for (Dart d : f.darts) vs.push_back(g.tail(d));
        if (vs.size() != 3) throw std::logic_error("subdivide_edge: not a triangulation");
        bool hasu = std::count(vs.begin(), vs.end(), u);
        bool hasv = std::count(vs.begin(), vs.end(), v);
        if (hasu && hasv)
            for (Vertex w : vs)
                if (w != u && w != v) corners.push_back(w);
    }
    if (corners.size() != 2) throw std::logic_error("subdivide_edge: bad corner count");
    Vertex w = corners[0], x = corners[1];

    int n = g.vertex_count(), z = n;
    Edge m = g.edge_count();
    std::vector<surf::EdgeRec> edges = g.edges();
    bool u_is_tail = edges[e].u == u;
    edges[e] = {u, z, 1};                    // slot e reused for (u, z)
    edges.push_back({z, v, 1});              // id m
    edges.push_back({z, w, 1});              // id m + 1
    edges.push_back({z, x, 1});              // id m + 2
    Dart du_z = 2 * e;                       // leaves u
    Dart dz_u = 2 * e + 1;
    Dart dv_z = 2 * m + 1;                   // leaves v
    Dart dz_v = 2 * m;
    Dart dz_w = 2 * (m + 1), dw_z = 2 * (m + 1) + 1;
    Dart dz_x = 2 * (m + 2), dx_z = 2 * (m + 2) + 1;

    std::vector<std::vector<Dart>> base(n + 1);
    for (Vertex t = 0; t < n; ++t) base[t] = g.rotation(t);
    Dart old_u_dart = u_is_tail ? 2 * e : 2 * e + 1;
    Dart old_v_dart = u_is_tail ? 2 * e + 1 : 2 * e;
    std::replace(base[u].begin(), base[u].end(), old_u_dart, du_z);
    std::replace(base[v].begin(), base[v].end(), old_v_dart, dv_z);

    int old_genus = g.surface().euler_genus;
    // z goes into the unique corner of w (and of x) between the darts
    // toward u and v.  Only the orientation of z's own rotation is free;
    // keep the one preserving the surface and the triangulation.
    auto insert_at = [&](std::vector<std::vector<Dart>>& rot, Vertex host, Dart nd) {
        auto& r = rot[host];
        for (size_t i = 0; i < r.size(); ++i) {
            Vertex a = g.head(r[i]);
            Vertex b = g.head(r[(i + 1) % r.size()]);
            if ((a == u && b == v) || (a == v && b == u)) {
                r.insert(r.begin() + static_cast<long>(i) + 1, nd);
                return true;
            }
        }
        return false;
    };
    for (int zdir = 0; zdir < 2; ++zdir) {
        std::vector<std::vector<Dart>> rot = base;
        rot[z] = zdir ? std::vector<Dart>{dz_u, dz_w, dz_v, dz_x}
                      : std::vector<Dart>{dz_u, dz_x, dz_v, dz_w};
        if (!insert_at(rot, w, dw_z)) continue;
        if (!insert_at(rot, x, dx_z)) continue;
        try {
            EmbeddedGraph out = EmbeddedGraph::from_parts(n + 1, edges, std::move(rot));
            if (!out.connected()) continue;
            if (!surf::is_triangulation(out)) continue;
            if (out.surface().euler_genus != old_genus) continue;
            if (out.surface().orientable != g.surface().orientable) continue;
            return out;
        } catch (const std::exception&) {
            continue;
        }
    }
    throw std::logic_error("subdivide_edge: no valid rotation found");
}

// BFS distances from a single source.
inline std::vector<int> bfs_dist(const EmbeddedGraph& g, Vertex s) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<Vertex> q{s};
    dist[s] = 0;
    for (size_t h = 0; h < q.size(); ++h) {
        Vertex v = q[h];
        for (Vertex w : g.neighbors(v))
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

// Exhaustive width oracle: enumerates every simple cycle of length at most
// max_len (canonical root: minimum vertex first, second neighbor below the
// last) and returns the shortest noncontractible length, or INT_MAX.
inline int oracle_width_exhaustive(const EmbeddedGraph& g, int max_len) {
    int best = INT_MAX;
    std::vector<Vertex> path;
    std::vector<char> used(g.vertex_count(), 0);
    auto close_check = [&](Vertex last) {
        if (static_cast<int>(path.size()) < 3) return;
        if (!g.adjacent(last, path[0])) return;
        if (path[1] > path.back()) return;  // one direction per cycle
        auto c = surf::make_cycle(g, path);
        if (!surf::is_contractible(g, c)) best = std::min(best, c.length());
    };
    std::function<void(Vertex)> grow = [&](Vertex v) {
        if (static_cast<int>(path.size()) >= std::min(best, max_len + 1)) return;
        close_check(v);
        if (static_cast<int>(path.size()) == std::min(best - 1, max_len)) return;
        for (Vertex w : g.neighbors(v)) {
            if (used[w] || w <= path[0]) continue;
            used[w] = 1;
            path.push_back(w);
            grow(w);
            path.pop_back();
            used[w] = 0;
        }
    };
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        path = {s};
        std::fill(used.begin(), used.end(), 0);
        used[s] = 1;
        grow(s);
    }
    return best;
}

// BFS-tree width oracle: the shortest noncontractible cycle is realized by
// a fundamental cycle x -> root -> y + edge (x, y) of some BFS tree whose
// two tree paths meet only at their lowest common ancestor.
inline int oracle_width_bfs(const EmbeddedGraph& g) {
    int n = g.vertex_count();
    int best = INT_MAX;
    for (Vertex r = 0; r < n; ++r) {
        std::vector<int> dist(n, -1), par(n, -1);
        std::vector<Vertex> q{r};
        dist[r] = 0;
        for (size_t h = 0; h < q.size(); ++h) {
            Vertex v = q[h];
            for (Vertex w : g.neighbors(v))
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    par[w] = v;
                    q.push_back(w);
                }
        }
        auto path_up = [&](Vertex v) {
            std::vector<Vertex> p{v};
            while (par[p.back()] != -1) p.push_back(par[p.back()]);
            return p;
        };
        for (Edge e = 0; e < g.edge_count(); ++e) {
            Vertex u = g.edge(e).u, v = g.edge(e).v;
            if (par[u] == v || par[v] == u) continue;
            std::vector<Vertex> pu = path_up(u), pv = path_up(v);
            // Strip the common tail above the lowest common ancestor.
            while (pu.size() >= 2 && pv.size() >= 2 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
                pu.pop_back();
                pv.pop_back();
            }
            std::set<Vertex> seen(pu.begin(), pu.end());
            bool simple = true;
            for (size_t i = 0; i + 1 < pv.size(); ++i)
                if (seen.count(pv[i])) simple = false;
            if (!simple) continue;
            std::vector<Vertex> cyc(pu.begin(), pu.end());
            for (size_t i = pv.size() - 1; i-- > 0;) cyc.push_back(pv[i]);
            if (cyc.size() < 3 || static_cast<int>(cyc.size()) >= best) continue;
            auto c = surf::make_cycle(g, cyc);
            if (!surf::is_contractible(g, c)) best = std::min(best, c.length());
        }
    }
    return best;
}

// Exhaustive ncdist oracle per the definition: the shortest path P with
// both endpoints on C and interior off C such that P is itself a
// noncontractible cycle (closed case) or both P-plus-arc cycles are
// noncontractible (open case).  Lengths above cap report INT_MAX.
inline int oracle_ncdist_exhaustive(const EmbeddedGraph& g, const surf::CycleOnSurface& c,
                                    int cap) {
    int n = g.vertex_count();
    std::vector<int> pos(n, -1);
    for (int i = 0; i < c.length(); ++i) pos[c.vertices[i]] = i;
    int best = INT_MAX;

    auto arc = [&](int i, int j) {  // forward arc i -> j
        std::vector<Vertex> out;
        for (int t = i; t != j; t = (t + 1) % c.length()) out.push_back(c.vertices[t]);
        out.push_back(c.vertices[j]);
        return out;
    };
    auto qualifies = [&](const std::vector<Vertex>& p) {
        int i = pos[p.front()], j = pos[p.back()];
        if (i == j) {
            std::vector<Vertex> loop(p.begin(), p.end() - 1);
            if (loop.size() < 3) return false;
            auto cc = surf::make_cycle(g, loop);
            return !surf::is_contractible(g, cc);
        }
        for (int dir = 0; dir < 2; ++dir) {
            std::vector<Vertex> a = dir ? arc(j, i) : arc(i, j);
            std::vector<Vertex> cyc;  // arc then path interior back
            if (dir) {
                cyc = a;  // j .. i
                for (size_t t = 1; t + 1 < p.size(); ++t) cyc.push_back(p[t]);
            } else {
                cyc = a;  // i .. j
                for (size_t t = p.size() - 1; t-- > 1;) cyc.push_back(p[t]);
            }
            if (cyc.size() < 3) return false;
            auto cc = surf::make_cycle(g, cyc);
            if (surf::is_contractible(g, cc)) return false;
        }
        return true;
    };

    std::vector<Vertex> path;
    std::vector<char> used(n, 0);
    std::function<void()> grow = [&]() {
        Vertex v = path.back();
        if (static_cast<int>(path.size()) - 1 >= std::min(best, cap)) return;
        for (Vertex w : g.neighbors(v)) {
            if (pos[w] >= 0) {
                if (path.size() >= 2 || w != path.front()) {
                    path.push_back(w);
                    if (static_cast<int>(path.size()) - 1 <= cap && qualifies(path))
                        best = std::min(best, static_cast<int>(path.size()) - 1);
                    path.pop_back();
                }
                continue;
            }
            if (used[w]) continue;
            used[w] = 1;
            path.push_back(w);
            grow();
            path.pop_back();
            used[w] = 0;
        }
    };
    for (int i = 0; i < c.length(); ++i) {
        path = {c.vertices[i]};
        std::fill(used.begin(), used.end(), 0);
        grow();
    }
    return best;
}

// Independent canonical-disk oracle: BFS distances from x, faces whose
// corners all lie within distance k, face-connected component around x,
// boundary edges of that component.  Returns the sorted boundary vertex
// set plus the boundary edge count.
struct DiskOracle {
    std::vector<Vertex> boundary_vertices;
    int boundary_edges = 0;
};

inline DiskOracle disk_oracle(const EmbeddedGraph& g, Vertex x, int k) {
    std::vector<int> dist = bfs_dist(g, x);
    const auto& faces = g.faces();
    int nf = static_cast<int>(faces.size());
    std::vector<char> ok(nf, 0);
    for (int f = 0; f < nf; ++f) {
        bool all = true;
        for (Dart d : faces[f].darts)
            if (dist[g.tail(d)] > k) all = false;
        ok[f] = all;
    }
    // Face component around x via shared edges.
    std::vector<char> in(nf, 0);
    std::vector<int> stack;
    for (int f = 0; f < nf; ++f)
        if (ok[f])
            for (Dart d : faces[f].darts)
                if (g.tail(d) == x && !in[f]) {
                    in[f] = 1;
                    stack.push_back(f);
                }
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (Dart d : faces[f].darts) {
            auto [f1, f2] = g.faces_of_edge(surf::dart_edge(d));
            for (int nxt : {f1, f2})
                if (ok[nxt] && !in[nxt]) {
                    in[nxt] = 1;
                    stack.push_back(nxt);
                }
        }
    }
    DiskOracle out;
    std::set<Vertex> bverts;
    for (Edge e = 0; e < g.edge_count(); ++e) {
        auto [f1, f2] = g.faces_of_edge(e);
        if ((in[f1] != 0) + (in[f2] != 0) == 1) {
            ++out.boundary_edges;
            bverts.insert(g.edge(e).u);
            bverts.insert(g.edge(e).v);
        }
    }
    out.boundary_vertices.assign(bverts.begin(), bverts.end());
    return out;
}

// Plain properness check used to cross-examine verify_coloring.
inline bool proper_coloring(const EmbeddedGraph& g, const std::vector<int>& colors,
                            int max_color) {
    if (static_cast<int>(colors.size()) != g.vertex_count()) return false;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (colors[v] < 1 || colors[v] > max_color) return false;
    for (Edge e = 0; e < g.edge_count(); ++e)
        if (g.edge(e).u != g.edge(e).v && colors[g.edge(e).u] == colors[g.edge(e).v])
            return false;
    return true;
}

}  // namespace testutil
