#include "surf/topology.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "surf/detail/graph_data.hpp"
#include "surf/homology.hpp"
#include "surf/kernels.hpp"
#include "surf/surgery.hpp"

namespace surf {

namespace {

std::vector<int> cycle_positions(const EmbeddedGraph& g, const CycleOnSurface& c) {
    std::vector<int> pos(g.vertex_count(), -1);
    for (int i = 0; i < c.length(); ++i) pos[c.vertices[i]] = i;
    return pos;
}

// Orientation transport along the traversal: +1 at vertices[0], flipped by
// every negative edge crossed.  The product over the whole cycle is +1
// exactly when the cycle is two-sided.
std::vector<int> transport(const EmbeddedGraph& g, const CycleOnSurface& c) {
    const int t = c.length();
    std::vector<int> o(t, +1);
    for (int i = 1; i < t; ++i) o[i] = o[i - 1] * g.edge(dart_edge(c.darts[i - 1])).sign;
    return o;
}

// Darts at vertices[i] strictly between the outgoing cycle dart and the dart
// back to the predecessor.  first: successor side of the outgoing dart.
// With local orientation +1 the first arc is the right side; this matches
// the copy assignment used when cutting.
std::pair<std::vector<Dart>, std::vector<Dart>> fan_arcs(const EmbeddedGraph& g,
                                                         const CycleOnSurface& c, int i) {
    const int t = c.length();
    const Dart a = c.darts[i];
    const Dart b = twin(c.darts[(i + t - 1) % t]);
    SURF_CHECK(a != b, "degenerate cycle corner");
    const auto& rot = g.rotation(c.vertices[i]);
    const int deg = static_cast<int>(rot.size());
    const int pa = g.rotation_index(a);
    std::pair<std::vector<Dart>, std::vector<Dart>> arcs;
    bool in_first = true;
    for (int s = 1; s < deg; ++s) {
        const Dart d = rot[(pa + s) % deg];
        if (d == b) {
            in_first = false;
            continue;
        }
        (in_first ? arcs.first : arcs.second).push_back(d);
    }
    SURF_CHECK(!in_first, "cycle darts missing from the rotation");
    return arcs;
}

}  // namespace

CycleOnSurface make_cycle(const EmbeddedGraph& g, std::span<const Vertex> vertices) {
    const int t = static_cast<int>(vertices.size());
    SURF_REQUIRE(t >= 3, "a vertex cycle needs at least three vertices");
    std::set<Vertex> uniq;
    for (Vertex v : vertices) {
        SURF_REQUIRE(v >= 0 && v < g.vertex_count(), "cycle vertex out of range");
        SURF_REQUIRE(uniq.insert(v).second, "cycle vertices must be distinct");
    }
    CycleOnSurface c;
    c.vertices.assign(vertices.begin(), vertices.end());
    c.darts.reserve(t);
    int sign = +1;
    for (int i = 0; i < t; ++i) {
        auto d = g.find_dart(vertices[i], vertices[(i + 1) % t]);
        SURF_REQUIRE(d.has_value(), "consecutive cycle vertices are not adjacent");
        c.darts.push_back(*d);
        sign *= g.edge(dart_edge(*d)).sign;
    }
    c.sidedness = sign > 0 ? Sidedness::two_sided : Sidedness::one_sided;
    return c;
}

CycleOnSurface make_cycle_darts(const EmbeddedGraph& g, std::span<const Dart> darts) {
    const int t = static_cast<int>(darts.size());
    SURF_REQUIRE(t >= 2, "a dart cycle needs at least two darts");
    std::set<Vertex> uniq;
    CycleOnSurface c;
    c.darts.assign(darts.begin(), darts.end());
    c.vertices.reserve(t);
    int sign = +1;
    for (int i = 0; i < t; ++i) {
        const Dart d = darts[i];
        SURF_REQUIRE(d >= 0 && d < g.dart_count(), "cycle dart out of range");
        SURF_REQUIRE(g.head(d) == g.tail(darts[(i + 1) % t]), "cycle darts do not chain");
        const Vertex v = g.tail(d);
        SURF_REQUIRE(uniq.insert(v).second, "cycle vertices must be distinct");
        c.vertices.push_back(v);
        sign *= g.edge(dart_edge(d)).sign;
    }
    if (t == 2)
        SURF_REQUIRE(dart_edge(darts[0]) != dart_edge(darts[1]),
                     "a 2-cycle needs two distinct parallel edges");
    c.sidedness = sign > 0 ? Sidedness::two_sided : Sidedness::one_sided;
    return c;
}

CycleOnSurface reverse_cycle(const EmbeddedGraph& g, const CycleOnSurface& c) {
    const int t = c.length();
    SURF_REQUIRE(t > 0, "empty cycle");
    // Rooted at the same start vertex: the new first dart leaves vertices[0]
    // towards the old predecessor.
    std::vector<Dart> out(t);
    for (int i = 0; i < t; ++i) out[i] = twin(c.darts[(t - 1 - i) % t]);
    return make_cycle_darts(g, out);
}

CycleOnSurface canonical_traversal(const EmbeddedGraph& g, const CycleOnSurface& c) {
    const int t = c.length();
    SURF_REQUIRE(t > 0, "empty cycle");
    const int r = static_cast<int>(
        std::min_element(c.vertices.begin(), c.vertices.end()) - c.vertices.begin());
    std::vector<Dart> rot(t);
    for (int i = 0; i < t; ++i) rot[i] = c.darts[(r + i) % t];
    CycleOnSurface fwd = make_cycle_darts(g, rot);
    CycleOnSurface bwd = reverse_cycle(g, fwd);
    return bwd.vertices < fwd.vertices ? bwd : fwd;
}

std::vector<Vertex> canonical_cycle_key(std::span<const Vertex> cycle) {
    const int t = static_cast<int>(cycle.size());
    if (t == 0) return {};
    const int r = static_cast<int>(
        std::min_element(cycle.begin(), cycle.end()) - cycle.begin());
    std::vector<Vertex> fwd(t), bwd(t);
    for (int i = 0; i < t; ++i) {
        fwd[i] = cycle[(r + i) % t];
        bwd[i] = cycle[(r - i + t) % t];
    }
    return std::min(fwd, bwd);
}

bool has_chord(const EmbeddedGraph& g, const CycleOnSurface& c) {
    std::vector<int> pos = cycle_positions(g, c);
    std::set<Edge> used;
    for (Dart d : c.darts) used.insert(dart_edge(d));
    for (Edge e = 0; e < g.edge_count(); ++e) {
        if (used.count(e)) continue;
        const auto& r = g.edge(e);
        if (pos[r.u] >= 0 && pos[r.v] >= 0) return true;
    }
    return false;
}

Sidedness cycle_sidedness(const EmbeddedGraph& g, const CycleOnSurface& c) {
    int sign = +1;
    for (Dart d : c.darts) sign *= g.edge(dart_edge(d)).sign;
    return sign > 0 ? Sidedness::two_sided : Sidedness::one_sided;
}

bool is_contractible(const EmbeddedGraph& g, const CycleOnSurface& c) {
    SURF_REQUIRE(c.length() >= 2, "not a cycle");
    // The memo key identifies a cycle by its vertices, which is unambiguous
    // only without parallel edges.
    const bool use_memo = g.is_simple();
    std::vector<Vertex> key;
    if (use_memo) {
        key = canonical_cycle_key(c.vertices);
        auto& cache = g.cache();
        std::lock_guard<std::mutex> lk(cache.mu);
        auto it = cache.contractible_memo.find(key);
        if (it != cache.contractible_memo.end()) return it->second;
    }

    bool result = false;
    bool decided = false;
    if (cycle_sidedness(g, c) == Sidedness::one_sided) {
        decided = true;  // one-sided cycles never bound disks
    }
    if (!decided && g.connected() && g.surface().euler_genus <= 64 &&
        walk_label(g, c.darts) != 0) {
        decided = true;  // nonzero homology class certifies noncontractible
    }
    if (!decided) {
        auto cut = detail::cut_scheme(g, canonical_traversal(g, c));
        std::vector<char> on_circle(cut.graph.vertex_count(), 0);
        for (const auto& circ : cut.circles)
            for (Vertex v : circ) on_circle[v] = 1;
        int touching = 0;
        int genus_min = std::numeric_limits<int>::max();
        for (const auto& comp : cut.graph.components()) {
            bool touches = false;
            for (Vertex v : comp)
                if (on_circle[v]) {
                    touches = true;
                    break;
                }
            if (!touches) continue;
            ++touching;
            const auto piece = induced_subgraph(cut.graph, comp).graph;
            genus_min = std::min(genus_min, piece.surface().euler_genus);
        }
        if (touching == 1) {
            result = false;  // the cut did not separate
        } else {
            SURF_CHECK(touching == 2, "cut along a cycle left more than two sides");
            result = genus_min == 0;
        }
    }

    if (use_memo) {
        auto& cache = g.cache();
        std::lock_guard<std::mutex> lk(cache.mu);
        cache.contractible_memo.emplace(std::move(key), result);
    }
    return result;
}

std::vector<Vertex> disk_interior(const EmbeddedGraph& g, const CycleOnSurface& c) {
    SURF_REQUIRE(is_contractible(g, c), "cycle is not contractible");
    auto cut = detail::cut_scheme(g, canonical_traversal(g, c));
    std::vector<char> on_circle(cut.graph.vertex_count(), 0);
    for (const auto& circ : cut.circles)
        for (Vertex v : circ) on_circle[v] = 1;
    const std::set<Vertex> cyc_src(c.vertices.begin(), c.vertices.end());

    struct Side {
        std::vector<Vertex> srcs;
        int genus = 0;
        int count = 0;
        Vertex interior_min = std::numeric_limits<Vertex>::max();
    };
    std::vector<Side> sides;
    for (const auto& comp : cut.graph.components()) {
        bool touches = false;
        for (Vertex v : comp)
            if (on_circle[v]) {
                touches = true;
                break;
            }
        if (!touches) continue;
        Side s;
        s.count = static_cast<int>(comp.size());
        std::set<Vertex> srcs;
        for (Vertex v : comp) {
            const Vertex sv = cut.to_source[v];
            srcs.insert(sv);
            if (!cyc_src.count(sv)) s.interior_min = std::min(s.interior_min, sv);
        }
        s.srcs.assign(srcs.begin(), srcs.end());
        s.genus = induced_subgraph(cut.graph, comp).graph.surface().euler_genus;
        sides.push_back(std::move(s));
    }
    SURF_CHECK(sides.size() == 2, "contractible cut must produce two sides");

    const Side* pick = nullptr;
    if (sides[0].genus == 0 && sides[1].genus != 0) pick = &sides[0];
    else if (sides[1].genus == 0 && sides[0].genus != 0) pick = &sides[1];
    else {
        SURF_CHECK(sides[0].genus == 0 && sides[1].genus == 0,
                   "contractible cycle with no disk side");
        if (sides[0].count != sides[1].count)
            pick = sides[0].count < sides[1].count ? &sides[0] : &sides[1];
        else
            pick = sides[0].interior_min <= sides[1].interior_min ? &sides[0] : &sides[1];
    }
    return pick->srcs;
}

CycleOnSurface shortest_noncontractible_cycle(const EmbeddedGraph& g) {
    SURF_REQUIRE(g.vertex_count() > 0 && g.connected(),
                 "width needs a connected nonempty graph");
    {
        auto& cache = g.cache();
        std::vector<Dart> witness;
        bool done = false;
        int value = 0;
        {
            std::lock_guard<std::mutex> lk(cache.mu);
            if (cache.width_done) {
                done = true;
                value = cache.width_value;
                witness = cache.width_witness;
            }
        }
        if (done) {
            if (value == 0) throw hypothesis_error("no noncontractible cycle");
            return make_cycle_darts(g, witness);
        }
    }
    if (g.surface().euler_genus == 0) {
        auto& cache = g.cache();
        std::lock_guard<std::mutex> lk(cache.mu);
        cache.width_done = true;
        cache.width_value = 0;
        cache.width_witness.clear();
        throw hypothesis_error("no noncontractible cycle");
    }
    auto res = width_search(g, Exec::parallel);
    {
        auto& cache = g.cache();
        std::lock_guard<std::mutex> lk(cache.mu);
        cache.width_done = true;
        cache.width_value = res.width;
        cache.width_witness = res.cycle.darts;
    }
    return res.cycle;
}

int width(const EmbeddedGraph& g) { return shortest_noncontractible_cycle(g).length(); }

namespace {

SidePartition build_partition(const EmbeddedGraph& g, const CycleOnSurface& c,
                              const std::vector<int>& classify_pos,
                              const std::vector<int>& orient,
                              const std::vector<Vertex>& seeds, int depth) {
    SidePartition sp;
    std::vector<char> att_r(g.vertex_count(), 0), att_l(g.vertex_count(), 0);
    std::set<Vertex> rset, lset;
    for (std::size_t k = 0; k < classify_pos.size(); ++k) {
        const int p = classify_pos[k];
        auto arcs = fan_arcs(g, c, p);
        const auto& rd = orient[k] > 0 ? arcs.first : arcs.second;
        const auto& ld = orient[k] > 0 ? arcs.second : arcs.first;
        for (Dart d : rd) {
            att_r[g.head(d)] = 1;
            rset.insert(g.head(d));
        }
        for (Dart d : ld) {
            att_l[g.head(d)] = 1;
            lset.insert(g.head(d));
        }
    }
    sp.right.assign(rset.begin(), rset.end());
    sp.left.assign(lset.begin(), lset.end());

    if (depth <= 0) return sp;
    LayerSet ls = neighborhood_layers(g, seeds, depth);
    std::vector<char> reach_r(g.vertex_count(), 0), reach_l(g.vertex_count(), 0);
    const int radius = ls.radius();
    for (int level = 1; level <= std::min(depth, radius); ++level) {
        for (Vertex v : ls.layers[level]) {
            if (level == 1) {
                reach_r[v] = att_r[v];
                reach_l[v] = att_l[v];
                continue;
            }
            for (Vertex u : g.neighbors(v)) {
                if (ls.depth[u] != level - 1) continue;
                reach_r[v] |= reach_r[u];
                reach_l[v] |= reach_l[u];
                if (reach_r[v] && reach_l[v]) break;
            }
        }
    }
    sp.right_layers.assign(depth, {});
    sp.left_layers.assign(depth, {});
    for (int level = 1; level <= std::min(depth, radius); ++level)
        for (Vertex v : ls.layers[level]) {
            if (reach_r[v]) sp.right_layers[level - 1].push_back(v);
            if (reach_l[v]) sp.left_layers[level - 1].push_back(v);
        }
    return sp;
}

}  // namespace

SidePartition side_partition(const EmbeddedGraph& g, const CycleOnSurface& c, int depth) {
    SURF_REQUIRE(depth >= 0, "depth must be nonnegative");
    SURF_REQUIRE(cycle_sidedness(g, c) == Sidedness::two_sided,
                 "side partition of a one-sided cycle requires a subpath");
    const int t = c.length();
    std::vector<int> o = transport(g, c);
    std::vector<int> all(t);
    std::iota(all.begin(), all.end(), 0);
    return build_partition(g, c, all, o, c.vertices, depth);
}

SidePartition side_partition(const EmbeddedGraph& g, const CycleOnSurface& c, int i, int m,
                             int depth) {
    const int t = c.length();
    SURF_REQUIRE(depth >= 0, "depth must be nonnegative");
    SURF_REQUIRE(i >= 0 && i < t, "subpath start out of range");
    SURF_REQUIRE(m >= 1 && m < t, "subpath length out of range");
    if (cycle_sidedness(g, c) == Sidedness::one_sided)
        SURF_REQUIRE(2 * m <= t, "subpath longer than half of a one-sided cycle");

    std::vector<Vertex> seeds;
    for (int j = 0; j <= m; ++j) seeds.push_back(c.vertices[(i + j) % t]);
    // Local orientation along the subpath, +1 at its start.
    std::vector<int> classify, orient;
    int o = +1;
    for (int j = 1; j < m; ++j) {
        o *= g.edge(dart_edge(c.darts[(i + j - 1) % t])).sign;
        classify.push_back((i + j) % t);
        orient.push_back(o);
    }
    return build_partition(g, c, classify, orient, seeds, depth);
}

int right_degree(const EmbeddedGraph& g, const CycleOnSurface& c, Vertex x) {
    std::vector<int> pos = cycle_positions(g, c);
    SURF_REQUIRE(x >= 0 && x < g.vertex_count() && pos[x] >= 0, "vertex not on the cycle");
    std::vector<int> o = transport(g, c);
    auto arcs = fan_arcs(g, c, pos[x]);
    return static_cast<int>((o[pos[x]] > 0 ? arcs.first : arcs.second).size());
}

int left_degree(const EmbeddedGraph& g, const CycleOnSurface& c, Vertex x) {
    std::vector<int> pos = cycle_positions(g, c);
    SURF_REQUIRE(x >= 0 && x < g.vertex_count() && pos[x] >= 0, "vertex not on the cycle");
    std::vector<int> o = transport(g, c);
    auto arcs = fan_arcs(g, c, pos[x]);
    return static_cast<int>((o[pos[x]] > 0 ? arcs.second : arcs.first).size());
}

DistanceReport ncdist(const EmbeddedGraph& g, const CycleOnSurface& c) {
    SURF_REQUIRE(g.connected(), "ncdist needs a connected graph");
    SURF_REQUIRE(!has_chord(g, c), "ncdist needs a chordless cycle");
    SURF_REQUIRE(!is_contractible(g, c), "ncdist needs a noncontractible cycle");
    return ncdist_search(g, c, Exec::parallel);
}

DistanceReport ctdist(const EmbeddedGraph& g, const CycleOnSurface& c) {
    SURF_REQUIRE(g.connected(), "ctdist needs a connected graph");
    SURF_REQUIRE(cycle_sidedness(g, c) == Sidedness::two_sided, "ctdist needs a two-sided cycle");
    SURF_REQUIRE(!has_chord(g, c), "ctdist needs a chordless cycle");
    SURF_REQUIRE(!is_contractible(g, c), "ctdist needs a noncontractible cycle");

    const int n = g.vertex_count();
    const int t = c.length();
    std::vector<int> pos = cycle_positions(g, c);
    std::vector<int> o = transport(g, c);

    // Attachments per side: (cycle vertex, off-cycle head).
    std::vector<std::pair<Vertex, Vertex>> att[2];
    for (int i = 0; i < t; ++i) {
        auto arcs = fan_arcs(g, c, i);
        const auto& rd = o[i] > 0 ? arcs.first : arcs.second;
        const auto& ld = o[i] > 0 ? arcs.second : arcs.first;
        for (Dart d : rd) {
            SURF_CHECK(pos[g.head(d)] < 0, "chordless cycle has a cycle-to-cycle dart");
            att[0].emplace_back(c.vertices[i], g.head(d));
        }
        for (Dart d : ld) {
            SURF_CHECK(pos[g.head(d)] < 0, "chordless cycle has a cycle-to-cycle dart");
            att[1].emplace_back(c.vertices[i], g.head(d));
        }
    }

    auto solve = [&](int from) -> std::optional<std::pair<int, std::vector<Vertex>>> {
        const auto& start = att[from];
        const auto& finish = att[1 - from];
        // Smallest finishing cycle vertex per off-cycle head.
        std::map<Vertex, Vertex> fin_min;
        for (const auto& [y, w] : finish) {
            auto [it, fresh] = fin_min.try_emplace(w, y);
            if (!fresh && y < it->second) it->second = y;
        }
        // db[w]: edges from w to the finishing vertex, final attachment included.
        std::vector<int> db(n, -1);
        std::deque<Vertex> q;
        for (const auto& [w, y] : fin_min) {
            if (db[w] < 0) {
                db[w] = 1;
                q.push_back(w);
            }
        }
        while (!q.empty()) {
            const Vertex v = q.front();
            q.pop_front();
            for (Vertex u : g.neighbors(v))
                if (pos[u] < 0 && db[u] < 0) {
                    db[u] = db[v] + 1;
                    q.push_back(u);
                }
        }
        int best = std::numeric_limits<int>::max();
        for (const auto& [x, w] : start)
            if (db[w] >= 0) best = std::min(best, 1 + db[w]);
        if (best == std::numeric_limits<int>::max()) return std::nullopt;

        Vertex bx = std::numeric_limits<Vertex>::max(), bw = bx;
        for (const auto& [x, w] : start)
            if (db[w] >= 0 && 1 + db[w] == best && (x < bx || (x == bx && w < bw))) {
                bx = x;
                bw = w;
            }
        std::vector<Vertex> wit{bx, bw};
        Vertex cur = bw;
        while (db[cur] > 1) {
            Vertex nxt = std::numeric_limits<Vertex>::max();
            for (Vertex u : g.neighbors(cur))
                if (pos[u] < 0 && db[u] == db[cur] - 1) nxt = std::min(nxt, u);
            SURF_CHECK(nxt != std::numeric_limits<Vertex>::max(), "broken ctdist distance field");
            wit.push_back(nxt);
            cur = nxt;
        }
        wit.push_back(fin_min.at(cur));
        return std::make_pair(best, std::move(wit));
    };

    auto a = solve(0);
    auto b = solve(1);
    DistanceReport rep;
    rep.kind = DistanceKind::ctdist;
    if (!a && !b) return rep;
    int best = std::numeric_limits<int>::max();
    if (a) best = std::min(best, a->first);
    if (b) best = std::min(best, b->first);
    rep.value = best;
    if (a && a->first == best) rep.witness = a->second;
    if (b && b->first == best && (rep.witness.empty() || b->second < rep.witness))
        rep.witness = b->second;
    return rep;
}

CycleOnSurface canonical_cycle(const EmbeddedGraph& g, Vertex x, int k) {
    SURF_REQUIRE(is_triangulation(g), "canonical_cycle needs a triangulation");
    SURF_REQUIRE(x >= 0 && x < g.vertex_count(), "vertex out of range");
    SURF_REQUIRE(k >= 1, "radius must be at least 1");
    SURF_REQUIRE(g.surface().euler_genus >= 1, "canonical_cycle needs positive genus");
    SURF_REQUIRE(width(g) >= 2 * k + 2, "width must be at least 2k + 2");

    LayerSet ls = neighborhood_layers(g, {x}, -1);
    const auto& faces = g.faces();
    const int nf = static_cast<int>(faces.size());
    std::vector<char> in_region(nf, 0);
    for (int f = 0; f < nf; ++f) {
        bool ok = true;
        for (Dart d : faces[f].darts)
            if (ls.depth[g.tail(d)] < 0 || ls.depth[g.tail(d)] > k) {
                ok = false;
                break;
            }
        in_region[f] = ok;
    }

    // Face component around x, connected through shared edges.
    std::vector<char> comp(nf, 0);
    std::deque<int> q;
    for (int idx = 0; idx < g.degree(x); ++idx) {
        const int f = g.face_at_corner(x, idx);
        SURF_CHECK(in_region[f], "faces at the center must sit inside the ball");
        if (!comp[f]) {
            comp[f] = 1;
            q.push_back(f);
        }
    }
    while (!q.empty()) {
        const int f = q.front();
        q.pop_front();
        for (Dart d : faces[f].darts) {
            auto [f1, f2] = g.faces_of_edge(dart_edge(d));
            for (int nfc : {f1, f2})
                if (in_region[nfc] && !comp[nfc]) {
                    comp[nfc] = 1;
                    q.push_back(nfc);
                }
        }
    }

    // Boundary: edges with exactly one side inside the component.
    std::map<Vertex, std::vector<Vertex>> badj;
    int bedges = 0;
    for (Edge e = 0; e < g.edge_count(); ++e) {
        auto [f1, f2] = g.faces_of_edge(e);
        if ((comp[f1] != 0) == (comp[f2] != 0)) continue;
        ++bedges;
        badj[g.edge(e).u].push_back(g.edge(e).v);
        badj[g.edge(e).v].push_back(g.edge(e).u);
    }
    if (bedges == 0) throw hypothesis_error("canonical cycle boundary is empty");
    for (const auto& [v, adjs] : badj)
        if (adjs.size() != 2)
            throw hypothesis_error("canonical cycle boundary is not a single cycle (vertex " +
                                   std::to_string(v) + " has boundary degree " +
                                   std::to_string(adjs.size()) + ")");

    std::vector<Vertex> seq;
    const Vertex v0 = badj.begin()->first;
    Vertex prev = -1, cur = v0;
    do {
        seq.push_back(cur);
        const auto& adjs = badj.at(cur);
        const Vertex nxt = (adjs[0] != prev) ? ((adjs[1] != prev) ? std::min(adjs[0], adjs[1])
                                                                  : adjs[0])
                                             : adjs[1];
        prev = cur;
        cur = nxt;
    } while (cur != v0 && static_cast<int>(seq.size()) <= bedges);
    if (static_cast<int>(seq.size()) != bedges)
        throw hypothesis_error("canonical cycle boundary is not a single cycle (disconnected)");

    CycleOnSurface D = canonical_traversal(g, make_cycle(g, seq));
    for (Vertex z : D.vertices)
        if (ls.depth[z] != k)
            throw hypothesis_error("canonical cycle vertex " + std::to_string(z) +
                                   " is at distance " + std::to_string(ls.depth[z]) +
                                   ", expected " + std::to_string(k));
    if (has_chord(g, D)) throw hypothesis_error("canonical cycle has a chord");
    if (!is_contractible(g, D)) throw hypothesis_error("canonical cycle is not contractible");
    std::vector<Vertex> interior = disk_interior(g, D);
    if (!std::binary_search(interior.begin(), interior.end(), x))
        throw hypothesis_error("center is not interior to the canonical cycle");

    InducedSubgraph sub = induced_subgraph(g, interior);
    LayerSet inner = neighborhood_layers(sub.graph, {sub.from_parent[x]}, -1);
    for (Vertex z : D.vertices)
        if (inner.depth[sub.from_parent[z]] != k)
            throw hypothesis_error("no radius-" + std::to_string(k) +
                                   " geodesic inside the disk to vertex " + std::to_string(z));
    return D;
}

namespace detail {

// The walk is contractible when both split parts are; when exactly one part
// is contractible the walk is homotopic to the other part.  Two
// noncontractible parts leave the composite undecided.
bool walk_contractible(const EmbeddedGraph& g, std::vector<Vertex> w) {
    for (bool changed = true; changed && w.size() > 2;) {
        changed = false;
        const int len = static_cast<int>(w.size());
        for (int p = 0; p < len; ++p) {
            if (w[p] != w[(p + 2) % len]) continue;
            int a = (p + 1) % len, b = (p + 2) % len;
            if (a > b) std::swap(a, b);
            w.erase(w.begin() + b);
            w.erase(w.begin() + a);
            changed = true;
            break;
        }
    }
    if (w.size() <= 2) return true;
    std::set<Vertex> uniq(w.begin(), w.end());
    if (uniq.size() == w.size()) return is_contractible(g, make_cycle(g, w));

    int p = -1, q = -1;
    std::map<Vertex, int> first;
    for (int idx = 0; idx < static_cast<int>(w.size()); ++idx) {
        auto [it, fresh] = first.try_emplace(w[idx], idx);
        if (!fresh) {
            p = it->second;
            q = idx;
            break;
        }
    }
    SURF_CHECK(p >= 0, "repeated vertex not found in a non-simple walk");
    std::vector<Vertex> w1(w.begin() + p, w.begin() + q);
    std::vector<Vertex> w2(w.begin() + q, w.end());
    w2.insert(w2.end(), w.begin(), w.begin() + p);
    if (walk_contractible(g, std::move(w1))) return walk_contractible(g, std::move(w2));
    if (walk_contractible(g, std::move(w2))) return false;
    throw hypothesis_error("homotopy test inconclusive");
}

}  // namespace detail

bool bigon_homotopic(const EmbeddedGraph& g, const CycleOnSurface& c, int i, int j,
                     std::span<const Vertex> m) {
    const int t = c.length();
    SURF_REQUIRE(i >= 0 && i < t && j >= 0 && j < t, "cycle position out of range");
    SURF_REQUIRE(!m.empty() && m.front() == c.vertices[i] && m.back() == c.vertices[j],
                 "replacement path endpoints are not on the cycle");
    for (std::size_t s = 0; s + 1 < m.size(); ++s)
        SURF_REQUIRE(g.adjacent(m[s], m[s + 1]), "replacement path has a non-edge");

    std::vector<Vertex> arc;
    for (int p = i;; p = (p + 1) % t) {
        arc.push_back(c.vertices[p]);
        if (p == j) break;
    }
    std::set<Vertex> arcset(arc.begin(), arc.end());
    std::set<Vertex> seen;
    for (std::size_t s = 1; s + 1 < m.size(); ++s) {
        SURF_REQUIRE(!arcset.count(m[s]), "replacement path interior touches the arc");
        SURF_REQUIRE(seen.insert(m[s]).second, "replacement path is not simple");
    }

    std::vector<Vertex> w = arc;
    for (int s = static_cast<int>(m.size()) - 2; s >= 1; --s) w.push_back(m[s]);
    return detail::walk_contractible(g, std::move(w));
}

bool is_orderly(const EmbeddedGraph& g, const std::vector<Vertex>& region) {
    std::vector<char> inU(g.vertex_count(), 0);
    for (Vertex v : region) {
        SURF_REQUIRE(v >= 0 && v < g.vertex_count(), "region vertex out of range");
        inU[v] = 1;
    }
    const bool screen = g.connected() && g.surface().euler_genus <= 64;

    auto bounds_face = [&](const std::vector<Vertex>& cyc) {
        auto e = g.find_edge(cyc[0], cyc[1]);
        if (!e) return false;
        auto [f1, f2] = g.faces_of_edge(*e);
        const std::set<Vertex> want(cyc.begin(), cyc.end());
        for (int f : {f1, f2}) {
            const auto& walk = g.faces()[f].darts;
            if (walk.size() != 3) continue;
            std::set<Vertex> got;
            for (Dart d : walk) got.insert(g.tail(d));
            if (got == want) return true;
        }
        return false;
    };

    std::set<std::vector<Vertex>> done;
    for (Edge e = 0; e < g.edge_count(); ++e) {
        const auto& r = g.edge(e);
        if (!inU[r.u] || !inU[r.v]) continue;
        for (Vertex w : g.neighbors(r.u)) {
            if (w == r.v || !inU[w] || !g.adjacent(w, r.v)) continue;
            std::vector<Vertex> cyc{r.u, r.v, w};
            if (!done.insert(canonical_cycle_key(cyc)).second) continue;
            if (screen && cycle_label(g, cyc) != 0) continue;
            if (!is_contractible(g, make_cycle(g, cyc))) continue;
            if (!bounds_face(cyc)) return false;
        }
    }

    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (!inU[u]) continue;
        const std::vector<Vertex> nb = g.neighbors(u);
        std::set<Vertex> twos;
        for (Vertex v : nb)
            if (inU[v])
                for (Vertex x : g.neighbors(v))
                    if (x != u && inU[x]) twos.insert(x);
        for (Vertex x : twos) {
            std::vector<Vertex> common;
            for (Vertex v : nb)
                if (inU[v] && g.adjacent(v, x)) common.push_back(v);
            for (std::size_t a = 0; a < common.size(); ++a)
                for (std::size_t b = a + 1; b < common.size(); ++b) {
                    std::vector<Vertex> cyc{u, common[a], x, common[b]};
                    if (!done.insert(canonical_cycle_key(cyc)).second) continue;
                    if (screen && cycle_label(g, cyc) != 0) continue;
                    CycleOnSurface cc = make_cycle(g, cyc);
                    if (!is_contractible(g, cc)) continue;
                    std::vector<Vertex> disk = disk_interior(g, cc);
                    std::vector<Vertex> interior;
                    const std::set<Vertex> on(cyc.begin(), cyc.end());
                    for (Vertex v : disk)
                        if (!on.count(v)) interior.push_back(v);
                    if (interior.empty()) continue;  // two faces sharing an edge
                    if (interior.size() == 1) {
                        const Vertex w = interior[0];
                        if (g.degree(w) == 4) {
                            std::set<Vertex> link;
                            for (Vertex z : g.neighbors(w)) link.insert(z);
                            if (link == on) continue;  // link of a degree-4 vertex
                        }
                    }
                    return false;
                }
        }
    }
    return true;
}

}  // namespace surf
