#include "surf/coloring.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <exception>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "surf/errors.hpp"
#include "surf/nicecycle.hpp"
#include "surf/planarize.hpp"

namespace surf {

namespace {

using Adj = std::vector<std::vector<Vertex>>;

// Multiplicity-blind adjacency: parallel edges collapse, loops are dropped.
Adj collapsed_adjacency(const EmbeddedGraph& g) {
    Adj adj(g.vertex_count());
    for (const EdgeRec& e : g.edges()) {
        if (e.u == e.v) continue;
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return adj;
}

[[maybe_unused]] std::vector<std::pair<Vertex, Vertex>> undirected_edges(const Adj& adj) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < static_cast<Vertex>(adj.size()); ++u)
        for (Vertex v : adj[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

// nullopt when this build carries no planarity oracle.
std::optional<bool> planar_if_checkable(const Adj& adj) {
#ifdef SURF_HAVE_BOOST
    return edges_planar(static_cast<int>(adj.size()), undirected_edges(adj));
#else
    (void)adj;
    return std::nullopt;
#endif
}

bool row_has(const Adj& adj, Vertex u, Vertex v) {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

// Exact 4-coloring by backtracking: saturation-degree vertex order, forward
// checking on 4-bit domains, components solved independently.  In a component
// with no fixed vertex, color c may be used only once colors 1..c-1 appear,
// which removes palette symmetry without losing completeness.
struct ExactColorer {
    const Adj& adj;
    long long cap;
    long long nodes = 0;
    std::vector<int> color;
    std::vector<unsigned> domain;
    std::vector<Vertex> trail;

    ExactColorer(const Adj& a, long long node_cap)
        : adj(a), cap(node_cap), color(a.size(), 0), domain(a.size(), 0xFu) {}

    bool solve(const std::vector<int>& fixed) {
        const int n = static_cast<int>(adj.size());
        if (!fixed.empty())
            for (Vertex v = 0; v < n; ++v)
                if (fixed[v]) {
                    color[v] = fixed[v];
                    domain[v] = 1u << (fixed[v] - 1);
                }
        for (Vertex v = 0; v < n; ++v) {
            if (!color[v]) continue;
            for (Vertex w : adj[v]) {
                if (color[w]) {
                    if (color[w] == color[v]) return false;
                    continue;
                }
                domain[w] &= ~(1u << (color[v] - 1));
                if (!domain[w]) return false;
            }
        }
        std::vector<char> seen(n, 0);
        for (Vertex v0 = 0; v0 < n; ++v0) {
            if (seen[v0]) continue;
            std::vector<Vertex> verts{v0};
            seen[v0] = 1;
            for (std::size_t h = 0; h < verts.size(); ++h)
                for (Vertex w : adj[verts[h]])
                    if (!seen[w]) {
                        seen[w] = 1;
                        verts.push_back(w);
                    }
            std::sort(verts.begin(), verts.end());
            int uncolored = 0;
            bool any_fixed = false;
            for (Vertex v : verts) {
                uncolored += color[v] == 0;
                any_fixed |= color[v] != 0;
            }
            if (uncolored && !extend(verts, uncolored, 0, !any_fixed)) return false;
        }
        return true;
    }

    bool extend(const std::vector<Vertex>& verts, int uncolored, int max_used, bool symmetric) {
        if (uncolored == 0) return true;
        Vertex best = -1;
        int best_sat = -1, best_deg = -1;
        for (Vertex v : verts) {
            if (color[v]) continue;
            const int sat = 4 - std::popcount(domain[v]);
            const int deg = static_cast<int>(adj[v].size());
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        const int limit = symmetric ? std::min(4, max_used + 1) : 4;
        for (int c = 1; c <= limit; ++c) {
            const unsigned bit = 1u << (c - 1);
            if (!(domain[best] & bit)) continue;
            if (++nodes > cap) throw resource_limit_error("four-coloring search exceeded its node cap");
            color[best] = c;
            const std::size_t mark = trail.size();
            bool dead = false;
            for (Vertex w : adj[best]) {
                if (color[w] || !(domain[w] & bit)) continue;
                domain[w] &= ~bit;
                trail.push_back(w);
                if (!domain[w]) dead = true;
            }
            if (!dead && extend(verts, uncolored - 1, std::max(max_used, c), symmetric)) return true;
            for (std::size_t k = mark; k < trail.size(); ++k) domain[trail[k]] |= bit;
            trail.resize(mark);
            color[best] = 0;
        }
        return false;
    }
};

template <class F>
auto tagged_stage(int k, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const hypothesis_error& e) {
        throw hypothesis_error("stage (" + std::to_string(k) + "): " + e.what());
    }
}

}  // namespace

std::set<int> Coloring::palette_used() const {
    std::set<int> out;
    for (int c : assignment)
        if (c != 0) out.insert(c);
    return out;
}

Coloring four_color(const EmbeddedGraph& gp, long long node_cap) {
    const Adj adj = collapsed_adjacency(gp);
    const std::optional<bool> planar = planar_if_checkable(adj);
    SURF_REQUIRE(!planar || *planar, "four_color requires a planar graph");
    ExactColorer ec(adj, node_cap);
    if (!ec.solve({})) {
        if (planar) throw internal_error("a planar graph resisted the exact four-coloring search");
        throw hypothesis_error("graph admits no four-coloring");
    }
    return Coloring{std::move(ec.color)};
}

std::optional<Coloring> four_color(const EmbeddedGraph& gp, const PartialColoring& precolored,
                                   long long node_cap) {
    const int n = gp.vertex_count();
    SURF_REQUIRE(static_cast<int>(precolored.assignment.size()) == n,
                 "precoloring does not cover the graph");
    for (int c : precolored.assignment)
        SURF_REQUIRE(c >= 0 && c <= 4, "precoloring colors must lie in 1..4");
    const Adj adj = collapsed_adjacency(gp);
    const std::optional<bool> planar = planar_if_checkable(adj);
    SURF_REQUIRE(!planar || *planar, "four_color requires a planar graph");
    ExactColorer ec(adj, node_cap);
    if (!ec.solve(precolored.assignment)) return std::nullopt;
    return Coloring{std::move(ec.color)};
}

Coloring kempe_change(const EmbeddedGraph& gp, const Coloring& coloring, Vertex v, int a, int b) {
    const int n = gp.vertex_count();
    SURF_REQUIRE(v >= 0 && v < n, "kempe_change vertex out of range");
    SURF_REQUIRE(a >= 1 && a <= 5 && b >= 1 && b <= 5 && a != b,
                 "kempe_change colors must be two distinct members of 1..5");
    SURF_REQUIRE(static_cast<int>(coloring.assignment.size()) == n,
                 "coloring does not cover the graph");
    for (const EdgeRec& e : gp.edges())
        SURF_REQUIRE(e.u == e.v || coloring.assignment[e.u] != coloring.assignment[e.v],
                     "kempe_change requires a proper coloring");
    const int cv = coloring.assignment[v];
    SURF_REQUIRE(cv == a || cv == b, "kempe_change vertex wears neither swapped color");

    const Adj adj = collapsed_adjacency(gp);
    Coloring out = coloring;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        out.assignment[u] = coloring.assignment[u] == a ? b : a;
        for (Vertex w : adj[u]) {
            if (seen[w]) continue;
            const int cw = coloring.assignment[w];
            if (cw != a && cw != b) continue;
            seen[w] = 1;
            stack.push_back(w);
        }
    }
    return out;
}

PartialColoring lift_cycle_coloring(const EmbeddedGraph& g, const CycleOnSurface& nice_cycle,
                                    int base_color, PartialColoring coloring) {
    const int n = g.vertex_count();
    SURF_REQUIRE(base_color >= 1 && base_color <= 4, "lift base color must lie in 1..4");
    SURF_REQUIRE(static_cast<int>(coloring.assignment.size()) == n,
                 "partial coloring does not cover the graph");
    SURF_REQUIRE(is_nice(g, nice_cycle), "lift target cycle is not nice");
    const auto& vs = nice_cycle.vertices;
    const int t = static_cast<int>(vs.size());
    for (Vertex v : vs) SURF_CHECK(!coloring.colored(v), "lift target cycle is already colored");

    if (t % 2 == 0) {
        for (int k = 0; k < t; ++k) coloring.assignment[vs[k]] = k % 2 ? 5 : base_color;
    } else {
        int pivot = -1;
        for (int k = 0; k < t && pivot < 0; ++k)
            if (g.degree(vs[k]) <= 4) pivot = k;
        SURF_CHECK(pivot >= 0, "odd nice cycle lacks a low-degree vertex");
        for (int off = 0; off + 1 < t; ++off)
            coloring.assignment[vs[(pivot + 1 + off) % t]] = off % 2 ? 5 : base_color;
        unsigned used = 0;
        for (Vertex w : g.neighbors(vs[pivot]))
            if (coloring.assignment[w]) used |= 1u << (coloring.assignment[w] - 1);
        int free_color = 0;
        for (int c = 1; c <= 5 && !free_color; ++c)
            if (!(used & (1u << (c - 1)))) free_color = c;
        if (!free_color)
            throw hypothesis_error("no color is available at the odd vertex of the lifted cycle");
        coloring.assignment[vs[pivot]] = free_color;
    }

    for (int k = 0; k < t; ++k)
        for (Vertex w : g.neighbors(vs[k]))
            if (coloring.assignment[w] != 0 && coloring.assignment[w] == coloring.assignment[vs[k]])
                throw hypothesis_error("lifted cycle color clashes at the edge (" +
                                       std::to_string(vs[k]) + ", " + std::to_string(w) + ")");
    return coloring;
}

namespace {

// Remaining free colors map to the remaining palette entries in ascending
// order; pinned pairs go first.  sigma[f - 1] is the palette color of free
// color f.
std::array<int, 4> pin_permutation(const std::array<int, 4>& palette,
                                   const std::vector<std::pair<int, int>>& pins) {
    std::array<int, 4> sigma{0, 0, 0, 0};
    unsigned used = 0;
    for (const auto& [free_c, target] : pins) {
        SURF_CHECK(free_c >= 1 && free_c <= 4 && !(used & (1u << (target - 1))) &&
                       sigma[free_c - 1] == 0,
                   "patch color pins collide");
        sigma[free_c - 1] = target;
        used |= 1u << (target - 1);
    }
    for (int c = 1; c <= 4; ++c) {
        if (sigma[c - 1]) continue;
        for (int p : palette)
            if (!(used & (1u << (p - 1)))) {
                sigma[c - 1] = p;
                used |= 1u << (p - 1);
                break;
            }
    }
    return sigma;
}

}  // namespace

PartialColoring patch_triangle(const EmbeddedGraph& g, const PatchRegion& region,
                               const std::array<int, 3>& boundary_colors) {
    SURF_REQUIRE(region.boundary.size() == 3, "triangle patch needs a 3-cycle boundary");
    for (int c : boundary_colors) SURF_REQUIRE(c >= 1 && c <= 5, "boundary colors must lie in 1..5");
    SURF_REQUIRE(boundary_colors[0] != boundary_colors[1] && boundary_colors[1] != boundary_colors[2] &&
                     boundary_colors[0] != boundary_colors[2],
                 "triangle boundary colors must be distinct");

    std::vector<Vertex> verts = region.boundary;
    verts.insert(verts.end(), region.interior.begin(), region.interior.end());
    const InducedSubgraph sub = induced_subgraph(g, std::move(verts));
    const Adj adj = collapsed_adjacency(sub.graph);
    const std::optional<bool> planar = planar_if_checkable(adj);
    SURF_CHECK(!planar || *planar, "triangle patch graph is not planar");

    ExactColorer ec(adj, kFourColorNodeCap);
    SURF_CHECK(ec.solve({}), "triangle patch graph resisted four colors");

    std::array<int, 3> free_boundary{};
    for (int k = 0; k < 3; ++k) {
        const int local = sub.from_parent[region.boundary[k]];
        SURF_CHECK(local >= 0, "triangle boundary vertex missing from its patch");
        free_boundary[k] = ec.color[local];
    }
    SURF_CHECK(free_boundary[0] != free_boundary[1] && free_boundary[1] != free_boundary[2] &&
                   free_boundary[0] != free_boundary[2],
               "triangle patch boundary is not mutually adjacent");

    // Permute the free coloring onto the boundary triple; the leftover free
    // color takes the smallest color outside the triple.
    std::array<int, 4> sigma{0, 0, 0, 0};
    unsigned used = 0;
    for (int k = 0; k < 3; ++k) {
        sigma[free_boundary[k] - 1] = boundary_colors[k];
        used |= 1u << (boundary_colors[k] - 1);
    }
    for (int c = 1; c <= 4; ++c) {
        if (sigma[c - 1]) continue;
        for (int p = 1; p <= 5; ++p)
            if (!(used & (1u << (p - 1)))) {
                sigma[c - 1] = p;
                used |= 1u << (p - 1);
                break;
            }
    }

    PartialColoring out{std::vector<int>(g.vertex_count(), 0)};
    for (Vertex i = 0; i < sub.graph.vertex_count(); ++i)
        out.assignment[sub.to_parent[i]] = sigma[ec.color[i] - 1];
    return out;
}

PartialColoring patch_quad(const EmbeddedGraph& g, const PatchRegion& region,
                           const std::array<int, 4>& boundary_colors) {
    SURF_REQUIRE(region.boundary.size() == 4, "quad patch needs a 4-cycle boundary");
    for (int c : boundary_colors) SURF_REQUIRE(c >= 1 && c <= 5, "boundary colors must lie in 1..5");
    // A proper host coloring cannot repeat a color across a boundary edge.
    for (int k = 0; k < 4; ++k)
        SURF_CHECK(boundary_colors[k] != boundary_colors[(k + 1) % 4],
                   "quad boundary colors are improper");

    std::vector<Vertex> verts = region.boundary;
    verts.insert(verts.end(), region.interior.begin(), region.interior.end());
    const InducedSubgraph sub = induced_subgraph(g, std::move(verts));
    Adj adj = collapsed_adjacency(sub.graph);

    std::array<int, 4> local{};
    for (int k = 0; k < 4; ++k) {
        local[k] = sub.from_parent[region.boundary[k]];
        SURF_CHECK(local[k] >= 0, "quad boundary vertex missing from its patch");
    }
    const Vertex lu = local[0], lv = local[1], lx = local[2], ly = local[3];
    SURF_CHECK(!row_has(adj, lu, lx) && !row_has(adj, lv, ly), "quad patch boundary has a chord");

    // Normalize the boundary to the pattern c(u)=1, c(v)=2 by a permutation
    // of the five colors; pi maps real colors to pattern colors.
    std::array<int, 6> pi{}, ipi{};
    auto bind = [&](int real, int canon) {
        pi[real] = canon;
        ipi[canon] = real;
    };
    bind(boundary_colors[0], 1);
    bind(boundary_colors[1], 2);
    const bool identify = boundary_colors[2] == boundary_colors[0];
    if (!identify) bind(boundary_colors[2], 3);
    int y_canon;
    if (boundary_colors[3] == boundary_colors[1]) {
        y_canon = 2;
    } else {
        y_canon = identify ? 3 : 4;
        bind(boundary_colors[3], y_canon);
    }
    for (int real = 1; real <= 5; ++real) {
        if (pi[real]) continue;
        for (int canon = 1; canon <= 5; ++canon)
            if (!ipi[canon]) {
                bind(real, canon);
                break;
            }
    }

    // Pattern c(x)=1: identify u and x in the outer face.  Pattern c(x)=3:
    // join u and x there.  Either way u and x end up constrained together.
    if (identify) {
        std::vector<Vertex> moved = adj[lx];
        for (Vertex w : moved) {
            auto& row = adj[w];
            row.erase(std::remove(row.begin(), row.end(), lx), row.end());
            if (w != lu && !row_has(adj, w, lu)) row.insert(std::lower_bound(row.begin(), row.end(), lu), lu);
        }
        auto& base = adj[lu];
        for (Vertex w : moved)
            if (w != lu && !row_has(adj, lu, w)) base.insert(std::lower_bound(base.begin(), base.end(), w), w);
        adj[lx].clear();
    } else {
        adj[lu].insert(std::lower_bound(adj[lu].begin(), adj[lu].end(), lx), lx);
        adj[lx].insert(std::lower_bound(adj[lx].begin(), adj[lx].end(), lu), lu);
    }
    const std::optional<bool> planar = planar_if_checkable(adj);
    SURF_CHECK(!planar || *planar, "quad patch graph is not planar");

    ExactColorer ec(adj, kFourColorNodeCap);
    SURF_CHECK(ec.solve({}), "quad patch graph resisted four colors");
    if (identify) ec.color[lx] = ec.color[lu];

    // The interior palette and the boundary pins, by pattern.
    std::array<int, 4> palette{};
    std::vector<std::pair<int, int>> pins;
    if (identify) {
        if (y_canon == 2) {
            palette = {1, 3, 4, 5};
            pins = {{ec.color[lu], 1}};
        } else {
            palette = {1, 2, 4, 5};
            pins = {{ec.color[lu], 1}, {ec.color[lv], 2}};
        }
    } else {
        if (y_canon == 2) {
            palette = {1, 3, 4, 5};
            pins = {{ec.color[lu], 1}, {ec.color[lx], 3}};
        } else {
            palette = {1, 2, 3, 5};
            pins = {{ec.color[lu], 1}, {ec.color[lv], 2}, {ec.color[lx], 3}};
        }
    }
    const std::array<int, 4> sigma = pin_permutation(palette, pins);

    std::vector<int> canon(sub.graph.vertex_count());
    for (Vertex i = 0; i < sub.graph.vertex_count(); ++i) canon[i] = sigma[ec.color[i] - 1];
    canon[lv] = 2;
    canon[ly] = y_canon;
    SURF_CHECK(canon[lu] == 1 && canon[lx] == (identify ? 1 : 3),
               "quad patch boundary normalization failed");

    PartialColoring out{std::vector<int>(g.vertex_count(), 0)};
    for (Vertex i = 0; i < sub.graph.vertex_count(); ++i)
        out.assignment[sub.to_parent[i]] = ipi[canon[i]];
    for (int k = 0; k < 4; ++k)
        SURF_CHECK(out.assignment[region.boundary[k]] == boundary_colors[k],
                   "quad patch boundary restriction mismatch");
    return out;
}

Coloring five_color(const EmbeddedGraph& g, int d, bool force, long long node_cap) {
    const int n = g.vertex_count();

    // (1) planarizing cycles
    PlanarizingSet ps = tagged_stage(1, [&] { return planarizing_set(g, d, force); });
    const int s = static_cast<int>(ps.cycles.size());

    // (2) radius-4 collars, pairwise disjoint and joined by no edge
    std::vector<std::vector<Vertex>> collar_sets(s);
    tagged_stage(2, [&]() -> int {
        std::vector<int> owner(n, -1);
        for (int i = 0; i < s; ++i) {
            collar_sets[i] = collar(g, ps.cycles[i], 4).vertices;
            for (Vertex v : collar_sets[i]) {
                if (owner[v] >= 0)
                    throw hypothesis_error("collars of cycles " + std::to_string(owner[v]) + " and " +
                                           std::to_string(i) + " intersect at vertex " +
                                           std::to_string(v));
                owner[v] = i;
            }
        }
        for (const EdgeRec& e : g.edges())
            if (e.u != e.v && owner[e.u] >= 0 && owner[e.v] >= 0 && owner[e.u] != owner[e.v])
                throw hypothesis_error("collars of cycles " + std::to_string(owner[e.u]) + " and " +
                                       std::to_string(owner[e.v]) + " are joined by the edge (" +
                                       std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
        return 0;
    });

    // (3) flatten the collars
    FlattenOutcome fl = tagged_stage(3, [&] { return flatten_small_cycles(g, collar_sets); });
    const EmbeddedGraph& g1 = fl.outcome.result;
    std::vector<int> to_g1(n, -1);
    for (Vertex w = 0; w < g1.vertex_count(); ++w)
        if (fl.outcome.provenance[w] >= 0) to_g1[fl.outcome.provenance[w]] = w;

    // (4) nice replacement cycles, pairwise at distance >= d - 8
    std::vector<CycleOnSurface> nice_cycles(s);
    tagged_stage(4, [&]() -> int {
        for (int i = 0; i < s; ++i) {
            std::vector<Vertex> mapped(ps.cycles[i].vertices.size());
            for (std::size_t k = 0; k < mapped.size(); ++k) {
                const Vertex w = to_g1[ps.cycles[i].vertices[k]];
                if (w < 0)
                    throw hypothesis_error("planarizing cycle " + std::to_string(i) +
                                           " lost a vertex while flattening");
                mapped[k] = w;
            }
            nice_cycles[i] = nice_cycle(g1, make_cycle(g1, mapped), d).cycle;
        }
        for (int i = 0; i < s; ++i) {
            if (s == 1) break;
            const LayerSet layers = neighborhood_layers(g1, nice_cycles[i].vertices);
            for (int j = i + 1; j < s; ++j) {
                int dist = std::numeric_limits<int>::max();
                for (Vertex v : nice_cycles[j].vertices)
                    if (layers.depth[v] >= 0) dist = std::min(dist, layers.depth[v]);
                if (dist < d - 8)
                    throw hypothesis_error("nice cycles " + std::to_string(i) + " and " +
                                           std::to_string(j) + " lie " + std::to_string(dist) +
                                           " apart, below d - 8");
            }
        }
        return 0;
    });

    // (5) replace the cycles by apex vertices; the result is planar
    SurgeryOutcome sp = tagged_stage(5, [&] { return split_planarize(g1, nice_cycles); });
    const EmbeddedGraph& g0 = sp.result;
    std::vector<Vertex> apex_x(s, -1), apex_y(s, -1);
    for (const auto& [name, v] : sp.apexes) {
        const int i = std::stoi(name.substr(1));
        (name[0] == 'x' ? apex_x : apex_y)[i] = v;
    }
    for (int i = 0; i < s; ++i)
        SURF_CHECK(apex_x[i] >= 0, "split lost the x apex of cycle " + std::to_string(i));

    // (6) exact four-coloring
    Coloring c0 = tagged_stage(6, [&] { return four_color(g0, node_cap); });

    // (7) align each apex pair: push the blocking color to 5 at distance
    // exactly 2, then swap the Kempe component at y
    tagged_stage(7, [&]() -> int {
        for (int i = 0; i < s; ++i) {
            if (apex_y[i] < 0) continue;
            const int a = c0.assignment[apex_x[i]];
            const int b = c0.assignment[apex_y[i]];
            if (a == b) continue;
            const LayerSet near = neighborhood_layers(g0, {apex_y[i]}, 2);
            if (near.layers.size() > 2)
                for (Vertex w : near.layers[2])
                    if (c0.assignment[w] == b) c0.assignment[w] = 5;
            c0 = kempe_change(g0, c0, apex_y[i], a, b);
        }
        for (int i = 0; i < s; ++i) {
            if (apex_y[i] < 0) continue;
            if (c0.assignment[apex_x[i]] != c0.assignment[apex_y[i]])
                throw hypothesis_error("apex colors of cycle " + std::to_string(i) +
                                       " disagree after the Kempe change");
            for (Vertex w : g0.neighbors(apex_y[i]))
                if (c0.assignment[w] == 5)
                    throw hypothesis_error("a neighbor of the y apex of cycle " + std::to_string(i) +
                                           " is colored 5");
        }
        return 0;
    });

    // (8) lift to the flattened graph; removed cycles take {c(x_i), 5}
    PartialColoring c1{std::vector<int>(g1.vertex_count(), 0)};
    for (Vertex w = 0; w < g0.vertex_count(); ++w)
        if (sp.provenance[w] >= 0) c1.assignment[sp.provenance[w]] = c0.assignment[w];
    for (int i = 0; i < s; ++i) {
        const int base = c0.assignment[apex_x[i]];
        c1 = tagged_stage(8, [&] { return lift_cycle_coloring(g1, nice_cycles[i], base, std::move(c1)); });
    }
    for (Vertex w = 0; w < g1.vertex_count(); ++w)
        SURF_CHECK(c1.assignment[w] != 0, "the lift left a vertex uncolored");

    // (9) patch the flattened disks; regions are disjoint, so they may be
    // colored concurrently and merged afterwards
    const auto& regions = fl.regions;
    const int r_count = static_cast<int>(regions.size());
    std::vector<PartialColoring> patched(regions.size());
    std::vector<std::exception_ptr> faults(regions.size());
#ifdef SURF_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int r = 0; r < r_count; ++r) {
        try {
            const PatchRegion& region = regions[r];
            auto boundary_color = [&](int k) {
                const Vertex w = to_g1[region.boundary[k]];
                SURF_CHECK(w >= 0, "patch boundary vertex missing from the flattened graph");
                return c1.assignment[w];
            };
            if (region.boundary.size() == 3) {
                patched[r] = patch_triangle(
                    g, region, {boundary_color(0), boundary_color(1), boundary_color(2)});
            } else {
                patched[r] = patch_quad(g, region,
                                        {boundary_color(0), boundary_color(1), boundary_color(2),
                                         boundary_color(3)});
            }
        } catch (...) {
            faults[r] = std::current_exception();
        }
    }
    for (int r = 0; r < r_count; ++r)
        if (faults[r])
            tagged_stage(9, [&]() -> int { std::rethrow_exception(faults[r]); });

    // (10) assemble on the input graph and certify
    std::vector<int> final_colors(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (to_g1[v] >= 0) final_colors[v] = c1.assignment[to_g1[v]];
    for (int r = 0; r < r_count; ++r)
        for (Vertex v : regions[r].interior) {
            SURF_CHECK(final_colors[v] == 0,
                       "patched interiors overlap at vertex " + std::to_string(v));
            SURF_CHECK(patched[r].assignment[v] != 0, "a patch left an interior vertex uncolored");
            final_colors[v] = patched[r].assignment[v];
        }
    for (Vertex v = 0; v < n; ++v)
        SURF_CHECK(final_colors[v] != 0, "vertex " + std::to_string(v) + " was left uncolored");

    Coloring out{std::move(final_colors)};
    const ColoringCheck check = verify_coloring(g, out, 5);
    if (!check.ok)
        throw certification_error("stage (10): the five-coloring check failed",
                                  check.violations.front());
    return out;
}

ColoringCheck verify_coloring(const EmbeddedGraph& g, const Coloring& coloring, int max_colors) {
    ColoringCheck report;
    const int n = g.vertex_count();
    const int have = static_cast<int>(coloring.assignment.size());
    if (have != n)
        report.violations.push_back("assignment covers " + std::to_string(have) + " of " +
                                    std::to_string(n) + " vertices");
    const int m = std::min(n, have);
    for (Vertex v = 0; v < m; ++v) {
        const int c = coloring.assignment[v];
        if (c < 1 || c > max_colors)
            report.violations.push_back("vertex " + std::to_string(v) + " wears color " +
                                        std::to_string(c) + " outside 1.." +
                                        std::to_string(max_colors));
    }
    std::vector<std::pair<Vertex, Vertex>> flagged;
    for (const EdgeRec& e : g.edges()) {
        if (e.u == e.v || e.u >= m || e.v >= m) continue;
        if (coloring.assignment[e.u] != coloring.assignment[e.v]) continue;
        const auto key = std::minmax(e.u, e.v);
        flagged.emplace_back(key.first, key.second);
    }
    std::sort(flagged.begin(), flagged.end());
    flagged.erase(std::unique(flagged.begin(), flagged.end()), flagged.end());
    for (const auto& [u, v] : flagged)
        report.violations.push_back("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                    ") is monochromatic in color " +
                                    std::to_string(coloring.assignment[u]));
    report.ok = report.violations.empty();
    return report;
}

}  // namespace surf
