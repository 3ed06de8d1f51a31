#include "surf/planarize.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#ifdef SURF_HAVE_BOOST
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#endif

namespace surf {

bool edges_planar(int vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges) {
#ifdef SURF_HAVE_BOOST
    using BoostGraph =
        boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BoostGraph bg(static_cast<std::size_t>(vertex_count));
    for (auto [u, v] : edges) boost::add_edge(u, v, bg);
    return boost::boyer_myrvold_planarity_test(bg);
#else
    (void)vertex_count;
    (void)edges;
    throw internal_error("planarity testing requires the Boost build");
#endif
}

bool remains_planar(const EmbeddedGraph& g, const std::vector<Vertex>& removed) {
    std::vector<char> gone(g.vertex_count(), 0);
    for (Vertex v : removed) gone[v] = 1;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Edge e = 0; e < g.edge_count(); ++e) {
        const auto& r = g.edge(e);
        if (!gone[r.u] && !gone[r.v]) edges.emplace_back(r.u, r.v);
    }
    return edges_planar(g.vertex_count(), edges);
}

std::vector<Vertex> reroute_through_ring(const EmbeddedGraph& g, std::vector<Vertex> cycle,
                                         std::size_t pos, const CycleOnSurface& d_ring,
                                         const CycleOnSurface& e_ring) {
    const std::size_t n = cycle.size();
    SURF_REQUIRE(n >= 3 && pos < n, "reroute needs a cycle position");
    const Vertex u = cycle[(pos + n - 1) % n];
    const Vertex v = cycle[(pos + 1) % n];
    SURF_REQUIRE(u >= 0 && v >= 0 && u != v, "apex neighbors must be real vertices");
    std::vector<char> on_e(g.vertex_count(), 0);
    std::vector<char> on_d(g.vertex_count(), 0);
    for (Vertex w : e_ring.vertices) on_e[w] = 1;
    for (Vertex w : d_ring.vertices) on_d[w] = 1;
    if (!on_d[u] || !on_d[v]) throw hypothesis_error("apex neighbors leave the disk boundary");

    // Distances from each splice end through ring vertices only.
    auto ring_bfs = [&](Vertex s) {
        std::vector<int> dist(g.vertex_count(), -1);
        std::deque<Vertex> q;
        for (Vertex w : g.neighbors(s))
            if (on_e[w] && dist[w] < 0) {
                dist[w] = 1;
                q.push_back(w);
            }
        while (!q.empty()) {
            const Vertex a = q.front();
            q.pop_front();
            for (Vertex w : g.neighbors(a))
                if (on_e[w] && dist[w] < 0) {
                    dist[w] = dist[a] + 1;
                    q.push_back(w);
                }
        }
        return dist;
    };
    const std::vector<int> du = ring_bfs(u);
    const std::vector<int> dv = ring_bfs(v);
    int best = std::numeric_limits<int>::max();
    for (Vertex w : e_ring.vertices)
        if (du[w] > 0 && dv[w] > 0) best = std::min(best, du[w] + dv[w]);
    if (best == std::numeric_limits<int>::max())
        throw hypothesis_error("no ring detour joins the apex neighbors");

    // Lexicographically smallest among the shortest detours.
    std::vector<Vertex> path;
    Vertex cur = u;
    for (int step = 0; step + 1 < best; ++step) {
        Vertex pick = -1;
        std::vector<Vertex> nbs = g.neighbors(cur);
        std::sort(nbs.begin(), nbs.end());
        for (Vertex w : nbs) {
            if (!on_e[w] || du[w] != step + 1 || dv[w] != best - step - 1) continue;
            pick = w;
            break;
        }
        SURF_CHECK(pick >= 0, "ring detour reconstruction failed");
        path.push_back(pick);
        cur = pick;
    }

    std::vector<Vertex> out;
    out.reserve(n - 1 + path.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i == pos)
            out.insert(out.end(), path.begin(), path.end());
        else
            out.push_back(cycle[i]);
    }
    return out;
}

namespace {

std::vector<std::vector<Vertex>> recurse(const EmbeddedGraph& g, int d);

// One connected positive-genus piece of a cut, with the ids of its cap
// apexes.  Excises the canonical disk around each cap, recurses on the
// reduced piece, and undoes the excisions on the returned cycles by routing
// them through the ring one step inside each excised disk.
std::vector<std::vector<Vertex>> process_piece(
    const EmbeddedGraph& piece, const std::vector<std::pair<std::string, Vertex>>& caps,
    int d) {
    struct RingPlan {
        std::string cap_name;
        CycleOnSurface d_ring;  // piece ids
        CycleOnSurface e_ring;  // piece ids
        std::vector<Vertex> disk;
        Vertex y = -1;  // excision apex, maintained in current work ids
    };

    std::vector<RingPlan> rings;
    for (const auto& [name, cap] : caps) {
        RingPlan r;
        r.cap_name = name;
        r.d_ring = canonical_cycle(piece, cap, d + 2);
        r.e_ring = canonical_cycle(piece, cap, d + 1);
        r.disk = disk_interior(piece, r.d_ring);
        if (!std::binary_search(r.disk.begin(), r.disk.end(), cap))
            throw hypothesis_error("cap apex is outside its canonical disk");
        rings.push_back(std::move(r));
    }
    if (rings.size() == 2) {
        // The two canonical disks must be disjoint and joined by no edge,
        // otherwise the excisions interfere.
        std::vector<Vertex> shared;
        std::set_intersection(rings[0].disk.begin(), rings[0].disk.end(),
                              rings[1].disk.begin(), rings[1].disk.end(),
                              std::back_inserter(shared));
        if (!shared.empty()) throw hypothesis_error("canonical disks intersect");
        std::vector<char> in0(piece.vertex_count(), 0), in1(piece.vertex_count(), 0);
        for (Vertex w : rings[0].disk) in0[w] = 1;
        for (Vertex w : rings[1].disk) in1[w] = 1;
        for (Edge e = 0; e < piece.edge_count(); ++e) {
            const auto& r = piece.edge(e);
            if ((in0[r.u] && in1[r.v]) || (in1[r.u] && in0[r.v]))
                throw hypothesis_error("canonical disks joined by an edge");
        }
    }

    EmbeddedGraph work = piece;
    std::vector<Vertex> work_to_piece(piece.vertex_count());
    std::iota(work_to_piece.begin(), work_to_piece.end(), 0);
    for (auto& r : rings) {
        std::vector<int> piece_to_work(piece.vertex_count(), -1);
        for (Vertex i = 0; i < work.vertex_count(); ++i)
            if (work_to_piece[i] >= 0) piece_to_work[work_to_piece[i]] = i;
        std::vector<Vertex> ring_now(r.d_ring.vertices.size());
        for (std::size_t i = 0; i < ring_now.size(); ++i) {
            const int mapped = piece_to_work[r.d_ring.vertices[i]];
            SURF_CHECK(mapped >= 0, "disk boundary vanished before its excision");
            ring_now[i] = mapped;
        }
        const std::string apex_name = r.cap_name == "x'" ? "y'" : "y";
        SurgeryOutcome ex = excise_to_apex(work, make_cycle(work, ring_now), apex_name);

        std::vector<int> old_to_new(work.vertex_count(), -1);
        for (Vertex i = 0; i < ex.result.vertex_count(); ++i)
            if (ex.provenance[i] >= 0) old_to_new[ex.provenance[i]] = i;
        for (auto& other : rings)
            if (other.y >= 0) {
                other.y = old_to_new[other.y];
                SURF_CHECK(other.y >= 0, "earlier excision apex vanished");
            }
        r.y = ex.apex(apex_name);

        std::vector<Vertex> next_map(ex.result.vertex_count(), -1);
        for (Vertex i = 0; i < ex.result.vertex_count(); ++i) {
            const Vertex p = ex.provenance[i];
            next_map[i] = p >= 0 ? work_to_piece[p] : -1;
        }
        work = std::move(ex.result);
        work_to_piece = std::move(next_map);
    }

    if (width(work) < width(piece) - 4 * (d + 1))
        throw hypothesis_error("width recursion inequality violated");

    std::vector<std::vector<Vertex>> out;
    for (auto& cyc : recurse(work, d)) {
        // Map to piece ids; excision apexes become ring placeholders.
        std::vector<Vertex> mapped(cyc.size());
        bool holes = false;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const Vertex p = work_to_piece[cyc[i]];
            if (p >= 0) {
                mapped[i] = p;
                continue;
            }
            int ri = -1;
            for (std::size_t k = 0; k < rings.size(); ++k)
                if (rings[k].y == cyc[i]) ri = static_cast<int>(k);
            SURF_CHECK(ri >= 0, "recursive cycle uses an unknown placeholder");
            mapped[i] = -2 - ri;
            holes = true;
        }
        while (holes) {
            holes = false;
            for (std::size_t i = 0; i < mapped.size(); ++i) {
                if (mapped[i] > -2) continue;
                const int ri = -2 - mapped[i];
                mapped = reroute_through_ring(piece, mapped, i, rings[ri].d_ring,
                                              rings[ri].e_ring);
                holes = std::any_of(mapped.begin(), mapped.end(),
                                    [](Vertex w) { return w <= -2; });
                break;
            }
        }
        CycleOnSurface fixed = make_cycle(piece, mapped);
        if (has_chord(piece, fixed)) throw hypothesis_error("rerouted cycle has a chord");
        out.push_back(std::move(mapped));
    }
    return out;
}

// The construction: cut along the shortest noncontractible cycle, keep it
// unless the cut separates, then work on each positive-genus piece.
std::vector<std::vector<Vertex>> recurse(const EmbeddedGraph& g, int d) {
    CycleOnSurface c = shortest_noncontractible_cycle(g);
    SurgeryOutcome cut = cut_along(g, c);
    SURF_CHECK(cut.split_kind.has_value(), "cut reported no split kind");

    std::vector<std::vector<Vertex>> out;
    if (*cut.split_kind != SplitKind::two_sided_separating) out.push_back(c.vertices);

    for (auto& comp : cut.result.components()) {
        InducedSubgraph sub = induced_subgraph(cut.result, comp);
        if (sub.graph.surface().euler_genus == 0) continue;
        std::vector<std::pair<std::string, Vertex>> caps;
        for (const auto& [name, id] : cut.apexes) {
            const int sid = sub.from_parent[id];
            if (sid >= 0) caps.emplace_back(name, sid);
        }
        SURF_CHECK(!caps.empty(), "positive-genus piece lost its cap apex");
        for (auto& cyc : process_piece(sub.graph, caps, d)) {
            std::vector<Vertex> mapped(cyc.size());
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                const Vertex cut_id = sub.to_parent[cyc[i]];
                const Vertex src = cut.provenance[cut_id];
                SURF_CHECK(src >= 0, "recursive cycle passes through a cap apex");
                mapped[i] = src;
            }
            out.push_back(std::move(mapped));
        }
    }
    return out;
}

long long required_width(int d, const SurfaceInfo& s) {
    const int exponent = s.orientable ? s.euler_genus / 2 : s.euler_genus;
    if (exponent >= 40) return std::numeric_limits<long long>::max();
    return 8LL * (d + 1) * ((1LL << exponent) - 1);
}

struct CertData {
    std::vector<int> ncdist_values;
    std::vector<std::vector<int>> pairwise;
    std::vector<std::string> violations;
};

CertData certify(const EmbeddedGraph& g, const std::vector<CycleOnSurface>& cycles, int d) {
    const SurfaceInfo s = g.surface();
    const int k = static_cast<int>(cycles.size());
    CertData out;
    out.ncdist_values.assign(k, -1);
    out.pairwise.assign(k, std::vector<int>(k, 0));

    auto tag = [](int i) { return "cycle " + std::to_string(i); };

    for (int i = 0; i < k; ++i) {
        bool usable = true;
        if (has_chord(g, cycles[i])) {
            out.violations.push_back(tag(i) + " has a chord");
            usable = false;
        }
        if (is_contractible(g, cycles[i])) {
            out.violations.push_back(tag(i) + " is contractible");
            usable = false;
        }
        if (!usable) continue;
        DistanceReport rep = ncdist(g, cycles[i]);
        if (!rep.infinite()) {
            out.ncdist_values[i] = *rep.value;
            if (*rep.value < 4 * (d + 1))
                out.violations.push_back(tag(i) + " has ncdist " + std::to_string(*rep.value) +
                                         " below " + std::to_string(4 * (d + 1)));
        }
    }

    for (int i = 0; i < k; ++i) {
        const LayerSet ls = neighborhood_layers(g, cycles[i].vertices);
        for (int j = i + 1; j < k; ++j) {
            int dist = std::numeric_limits<int>::max();
            for (Vertex v : cycles[j].vertices)
                if (ls.depth[v] >= 0) dist = std::min(dist, ls.depth[v]);
            SURF_CHECK(dist < std::numeric_limits<int>::max(),
                       "planarizing cycles in different components");
            out.pairwise[i][j] = out.pairwise[j][i] = dist;
            if (dist < d)
                out.violations.push_back(tag(i) + " and " + tag(j) + " are at distance " +
                                         std::to_string(dist) + ", below " + std::to_string(d));
        }
    }

    std::set<Vertex> removed;
    for (const auto& c : cycles) removed.insert(c.vertices.begin(), c.vertices.end());
    if (!remains_planar(g, std::vector<Vertex>(removed.begin(), removed.end())))
        out.violations.push_back("removing all cycle vertices leaves a non-planar graph");

    if (2 * k < s.euler_genus)
        out.violations.push_back("too few cycles: " + std::to_string(k));
    if (k > s.euler_genus) out.violations.push_back("too many cycles: " + std::to_string(k));
    if (s.orientable && 2 * k != s.euler_genus)
        out.violations.push_back("orientable surfaces need exactly genus/2 cycles, got " +
                                 std::to_string(k));
    return out;
}

}  // namespace

PlanarizingSet planarizing_set(const EmbeddedGraph& g, int d, bool force) {
    SURF_REQUIRE(d >= 1, "separation parameter must be at least 1");
    SURF_REQUIRE(is_triangulation(g), "planarizing needs a triangulation");
    const SurfaceInfo s = g.surface();
    SURF_REQUIRE(s.euler_genus >= 1, "g > 0 required");
    if (!force && width(g) < required_width(d, s)) throw hypothesis_error("width too small");

    PlanarizingSet ps;
    ps.d = d;
    for (auto& verts : recurse(g, d))
        ps.cycles.push_back(canonical_traversal(g, make_cycle(g, verts)));
    ps.k = static_cast<int>(ps.cycles.size());

    CertData cert = certify(g, ps.cycles, d);
    if (!cert.violations.empty())
        throw certification_error("certification failed", cert.violations.front());
    ps.ncdist_values = std::move(cert.ncdist_values);
    ps.pairwise_dist = std::move(cert.pairwise);
    return ps;
}

VerifyReport verify_planarizing(const EmbeddedGraph& g, const PlanarizingSet& ps) {
    VerifyReport rep;
    CertData cert = certify(g, ps.cycles, ps.d);
    rep.violations = std::move(cert.violations);
    if (ps.k != static_cast<int>(ps.cycles.size()))
        rep.violations.push_back("cycle count disagrees with k");
    rep.ok = rep.violations.empty();
    return rep;
}

}  // namespace surf
