#include "surf/nicecycle.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <tuple>

namespace surf {

namespace {

std::string cycle_ids(const std::vector<Vertex>& cyc) {
    std::string ids;
    for (Vertex v : cyc) {
        if (!ids.empty()) ids += ' ';
        ids += std::to_string(v);
    }
    return ids;
}

[[noreturn]] void throw_violation(const std::vector<Vertex>& cyc) {
    throw hypothesis_error("orderliness or width hypothesis violated: cycle " + cycle_ids(cyc));
}

// Orientation transported along the traversal, +1 at position 0, flipping at
// every negative edge.
std::vector<int> frame_transport(const EmbeddedGraph& g, const CycleOnSurface& w) {
    const int t = w.length();
    std::vector<int> o(t, +1);
    for (int i = 1; i < t; ++i) o[i] = o[i - 1] * g.edge(dart_edge(w.darts[i - 1])).sign;
    return o;
}

// Darts at vertices[idx] strictly between the outgoing cycle dart and the
// dart back to the predecessor.  first: successor side of the outgoing dart,
// which is the right side under local orientation +1.
std::pair<std::vector<Dart>, std::vector<Dart>> corner_arcs(const EmbeddedGraph& g,
                                                            const CycleOnSurface& w, int idx) {
    const int t = w.length();
    const Dart a = w.darts[idx];
    const Dart b = twin(w.darts[(idx + t - 1) % t]);
    SURF_CHECK(a != b, "degenerate cycle corner");
    const auto& rot = g.rotation(w.vertices[idx]);
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

// Neighbors strictly on one side at position idx.  Ordering runs from the
// outgoing edge towards the incoming one when the side is the successor arc,
// and the other way round otherwise.
std::vector<Vertex> side_fan(const EmbeddedGraph& g, const CycleOnSurface& w,
                             const std::vector<int>& o, int idx, bool right) {
    auto arcs = corner_arcs(g, w, idx);
    const bool first_side = (o[idx] > 0) == right;
    const std::vector<Dart>& darts = first_side ? arcs.first : arcs.second;
    std::vector<Vertex> fan;
    fan.reserve(darts.size());
    for (Dart d : darts) fan.push_back(g.head(d));
    return fan;
}

// Third vertex of the triangle on the given side of the edge from
// vertices[idx] to its successor.
Vertex side_triangle(const EmbeddedGraph& g, const CycleOnSurface& w, const std::vector<int>& o,
                     int idx, bool right) {
    auto arcs = corner_arcs(g, w, idx);
    const bool first_side = (o[idx] > 0) == right;
    const std::vector<Dart>& darts = first_side ? arcs.first : arcs.second;
    SURF_CHECK(!darts.empty(), "side triangle needs a nonempty fan");
    // The fan dart sharing a corner with the outgoing edge bounds the wanted
    // triangle: the first one on the successor side, the last one otherwise.
    const Dart d = first_side ? darts.front() : darts.back();
    return g.head(d);
}

// Lexicographically smallest among the shortest from->to paths whose
// interior stays inside `allowed`; returns the interior vertices (empty when
// the endpoints are adjacent), or nullopt when no such path exists.
std::optional<std::vector<Vertex>> lex_shortest(const EmbeddedGraph& g, Vertex from, Vertex to,
                                                std::set<Vertex> allowed) {
    SURF_CHECK(from != to, "fan path endpoints coincide");
    allowed.erase(from);
    allowed.erase(to);
    std::vector<int> db(g.vertex_count(), -1);
    std::deque<Vertex> q;
    db[to] = 0;
    q.push_back(to);
    while (!q.empty()) {
        const Vertex a = q.front();
        q.pop_front();
        for (Vertex v : g.neighbors(a)) {
            if (db[v] >= 0) continue;
            if (v == from) {
                db[v] = db[a] + 1;
                continue;
            }
            if (!allowed.count(v)) continue;
            db[v] = db[a] + 1;
            q.push_back(v);
        }
    }
    if (db[from] < 0) return std::nullopt;
    std::vector<Vertex> interior;
    Vertex cur = from;
    for (int step = db[from] - 1; step >= 1; --step) {
        Vertex pick = -1;
        std::vector<Vertex> nbs = g.neighbors(cur);
        std::sort(nbs.begin(), nbs.end());
        for (Vertex v : nbs)
            if (allowed.count(v) && db[v] == step) {
                pick = v;
                break;
            }
        SURF_CHECK(pick >= 0, "fan path reconstruction failed");
        interior.push_back(pick);
        cur = pick;
    }
    return interior;
}

// The cycle sequence with positions ps..pe (inclusive) replaced by
// seq[ps], interior, seq[pe]; nullopt when the result repeats a vertex.
std::optional<std::vector<Vertex>> splice_window(const std::vector<Vertex>& seq, int ps, int pe,
                                                 const std::vector<Vertex>& interior) {
    const int n = static_cast<int>(seq.size());
    std::vector<Vertex> out;
    out.reserve(n - (pe - ps - 1) + interior.size());
    for (int i = 0; i <= ps; ++i) out.push_back(seq[i]);
    out.insert(out.end(), interior.begin(), interior.end());
    for (int i = pe; i < n; ++i) out.push_back(seq[i]);
    std::set<Vertex> uniq(out.begin(), out.end());
    if (uniq.size() != out.size()) return std::nullopt;
    return out;
}

// True when the replaced subpath and its replacement bound a disk, so the
// splice preserves the homotopy class.  An undecided composite walk counts
// as a failure.
bool splice_homotopic(const EmbeddedGraph& g, const std::vector<Vertex>& seq, int ps, int pe,
                      const std::vector<Vertex>& interior) {
    std::vector<Vertex> w(seq.begin() + ps, seq.begin() + pe + 1);
    w.insert(w.end(), interior.rbegin(), interior.rend());
    try {
        return detail::walk_contractible(g, w);
    } catch (const hypothesis_error&) {
        return false;
    }
}

enum class Cand { nice_cycle, odd_cycle, bad };

Cand judge(const EmbeddedGraph& g, const std::vector<Vertex>& seq, int ps, int pe,
           const std::vector<Vertex>& interior, std::vector<Vertex>& out) {
    auto cand = splice_window(seq, ps, pe, interior);
    if (!cand) return Cand::bad;
    CycleOnSurface cc;
    try {
        cc = make_cycle(g, *cand);
    } catch (const hypothesis_error&) {
        return Cand::bad;
    }
    if (has_chord(g, cc)) return Cand::bad;
    if (is_contractible(g, cc)) return Cand::bad;
    if (!splice_homotopic(g, seq, ps, pe, interior)) return Cand::bad;
    out = std::move(*cand);
    return is_nice(g, cc) ? Cand::nice_cycle : Cand::odd_cycle;
}

// A working cycle with the shortcut window at the front: v_k = seq[k-1] for
// k = 1..7, the retained arc interior following.
struct Frame {
    std::vector<Vertex> seq;
};

Frame reversed_frame(const Frame& f) {
    const int n = static_cast<int>(f.seq.size());
    Frame r;
    r.seq.reserve(n);
    for (int k = 6; k >= 0; --k) r.seq.push_back(f.seq[k]);
    for (int k = n - 1; k >= 7; --k) r.seq.push_back(f.seq[k]);
    return r;
}

struct CaseOutcome {
    std::vector<Vertex> cycle;
    std::string label;
};

// The two-consecutive-side-neighbors construction, run for the pair
// (v_p, v_{p+1}) on the given side.  Detours around the pair flip the cycle
// parity one vertex at a time; the proof guarantees one of them is even or
// passes through a low-degree vertex.
CaseOutcome run_case_i(const EmbeddedGraph& g, const Frame& f, int p, bool right,
                       std::string trail) {
    const auto& s = f.seq;
    CycleOnSurface w = make_cycle(g, s);
    const std::vector<int> o = frame_transport(g, w);
    const Vertex vp = s[p - 1];
    const Vertex vq = s[p];

    const auto fan_p = side_fan(g, w, o, p - 1, right);
    const auto fan_q = side_fan(g, w, o, p, right);
    SURF_CHECK(fan_p.size() >= 2 && fan_q.size() >= 2,
               "pair chosen for the two-neighbor case lacks side degrees");
    const Vertex x = side_triangle(g, w, o, p - 1, right);
    if (!g.adjacent(x, vq)) throw_violation(s);

    std::set<Vertex> na;
    for (Vertex v : g.neighbors(vp)) na.insert(v);
    na.erase(vq);
    std::set<Vertex> nb;
    for (Vertex v : g.neighbors(vq)) nb.insert(v);
    nb.erase(vp);
    auto a_path = lex_shortest(g, s[p - 3], x, na);
    auto b_path = lex_shortest(g, x, s[p + 2], nb);
    if (!a_path || !b_path) throw_violation(s);

    // Fallback for a blocked detour: when the side triangle vertex has
    // degree four and closes with the second-next window vertex, routing the
    // cycle through it is nice outright.
    auto degree4_special = [&]() -> std::optional<CaseOutcome> {
        if (!g.adjacent(x, s[p + 1]) || g.degree(x) > 4) return std::nullopt;
        const std::vector<Vertex> mid{x};
        std::vector<Vertex> cyc;
        if (judge(g, s, p - 1, p + 1, mid, cyc) != Cand::nice_cycle) return std::nullopt;
        return CaseOutcome{std::move(cyc), trail + "+degree4"};
    };
    auto settle_bad = [&](const std::vector<Vertex>& offending) -> CaseOutcome {
        if (auto sp = degree4_special()) return *sp;
        throw_violation(offending);
    };

    std::vector<Vertex> cyc;

    std::vector<Vertex> mid2 = *a_path;
    mid2.push_back(x);
    switch (judge(g, s, p - 3, p, mid2, cyc)) {
        case Cand::nice_cycle:
            return {std::move(cyc), trail + "+first-detour"};
        case Cand::odd_cycle:
            break;
        case Cand::bad:
            return settle_bad(s);
    }

    std::vector<Vertex> mid3{x};
    mid3.insert(mid3.end(), b_path->begin(), b_path->end());
    switch (judge(g, s, p - 1, p + 2, mid3, cyc)) {
        case Cand::nice_cycle:
            return {std::move(cyc), trail + "+second-detour"};
        case Cand::odd_cycle:
            break;
        case Cand::bad:
            return settle_bad(s);
    }

    // Both one-sided detours came out odd, so both fan paths have odd length
    // and the combined detour is even.
    std::vector<Vertex> mid4 = *a_path;
    mid4.push_back(x);
    mid4.insert(mid4.end(), b_path->begin(), b_path->end());
    if (judge(g, s, p - 3, p + 2, mid4, cyc) == Cand::nice_cycle)
        return {std::move(cyc), trail + "+combined-detour"};
    return settle_bad(s);
}

CaseOutcome dispatch(const EmbeddedGraph& g, const Frame& f, std::string trail, int guard) {
    SURF_CHECK(guard < 6, "side-degree case analysis failed to terminate");
    const auto& s = f.seq;
    CycleOnSurface w = make_cycle(g, s);
    const std::vector<int> o = frame_transport(g, w);
    auto deg_r = [&](int k) {
        return static_cast<int>(side_fan(g, w, o, k - 1, true).size());
    };
    auto deg_l = [&](int k) {
        return static_cast<int>(side_fan(g, w, o, k - 1, false).size());
    };

    const int r3 = deg_r(3);
    const int r4 = deg_r(4);
    if (r3 >= 2 && r4 >= 2) return run_case_i(g, f, 3, true, trail + "+case-i");

    if (r3 < 2) {
        trail += "+case-ii";
        if (r3 == 0 || r4 <= 1)
            throw hypothesis_error("shortcut optimality violated by side degrees: cycle " +
                                   cycle_ids(s));
        const int r5 = deg_r(5);
        if (r5 >= 2) return run_case_i(g, f, 4, true, trail + "+case-i");
        if (r5 == 0)
            throw hypothesis_error("shortcut optimality violated by side degrees: cycle " +
                                   cycle_ids(s));
        if (deg_l(5) == 1 || deg_l(3) == 1) {
            // That vertex has total degree four, so the frame cycle itself is
            // nice.
            if (has_chord(g, w) || is_contractible(g, w) || !is_nice(g, w))
                throw_violation(s);
            return {s, trail + "+low-degree"};
        }
        if (deg_l(4) > 1) {
            SURF_CHECK(deg_l(3) >= 2, "expected two left neighbors at the third vertex");
            return run_case_i(g, f, 3, false, trail + "+case-i-left");
        }
        // Unique side neighbors on both sides of the third vertex: slide the
        // window off it and rerun with the pair one step later on the left.
        auto rf = side_fan(g, w, o, 2, true);
        SURF_CHECK(rf.size() == 1, "expected a unique right neighbor at the third vertex");
        Frame f2 = f;
        f2.seq[2] = rf[0];
        return run_case_i(g, f2, 4, false, trail + "+replace+case-i-left");
    }

    // r3 >= 2, r4 < 2
    trail += "+case-iii";
    if (r4 == 0)
        throw hypothesis_error("shortcut optimality violated by side degrees: cycle " +
                               cycle_ids(s));
    const int r5 = deg_r(5);
    if (r5 <= 1)
        throw hypothesis_error("shortcut optimality violated by side degrees: cycle " +
                               cycle_ids(s));
    if (deg_l(4) < 2) {
        if (g.degree(s[3]) <= 4) {
            if (has_chord(g, w) || is_contractible(g, w) || !is_nice(g, w))
                throw_violation(s);
            return {s, trail + "+low-degree"};
        }
        throw hypothesis_error("shortcut optimality violated by side degrees: cycle " +
                               cycle_ids(s));
    }
    if (deg_l(3) >= 2) return run_case_i(g, f, 3, false, trail + "+case-i-left");
    if (deg_l(5) >= 2) return run_case_i(g, f, 4, false, trail + "+case-i-left");
    return dispatch(g, reversed_frame(f), trail + "+reverse", guard + 1);
}

}  // namespace

CollarSubgraph collar(const EmbeddedGraph& g, const CycleOnSurface& c, int radius) {
    SURF_REQUIRE(radius >= 0, "collar radius must be nonnegative");
    CollarSubgraph out;
    out.base_cycle = c;
    out.radius = radius;
    LayerSet ls = neighborhood_layers(g, c.vertices, radius);
    out.layers = std::move(ls.layers);
    out.layers.resize(radius + 1);
    for (const auto& layer : out.layers)
        out.vertices.insert(out.vertices.end(), layer.begin(), layer.end());
    std::sort(out.vertices.begin(), out.vertices.end());
    out.orderly = is_orderly(g, out.vertices);
    return out;
}

bool is_nice(const EmbeddedGraph& g, const CycleOnSurface& c) {
    SURF_REQUIRE(!has_chord(g, c), "niceness is defined for chordless cycles");
    SURF_REQUIRE(!is_contractible(g, c), "niceness is defined for noncontractible cycles");
    if (c.length() % 2 == 0) return true;
    for (Vertex v : c.vertices)
        if (g.degree(v) <= 4) return true;
    return false;
}

Shortcut optimal_six_shortcut(const EmbeddedGraph& g, const CycleOnSurface& c) {
    const int t = c.length();
    SURF_REQUIRE(t > 6, "shortcut search needs a cycle longer than six");
    SURF_REQUIRE(!has_chord(g, c), "shortcut search needs a chordless cycle");
    SURF_REQUIRE(!is_contractible(g, c), "shortcut search needs a noncontractible cycle");
    {
        DistanceReport rep = ncdist(g, c);
        SURF_REQUIRE(rep.infinite() || *rep.value >= 12,
                     "shortcut search needs ncdist at least 12");
    }

    std::vector<int> pos(g.vertex_count(), -1);
    for (int i = 0; i < t; ++i) pos[c.vertices[i]] = i;

    std::vector<std::vector<Vertex>> adj(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        adj[v] = g.neighbors(v);
        std::sort(adj[v].begin(), adj[v].end());
        adj[v].erase(std::unique(adj[v].begin(), adj[v].end()), adj[v].end());
    }

    struct Best {
        int clen = 0;
        int i = 0;
        int j = 0;
        std::vector<Vertex> path;
        bool set = false;
    } best;
    auto better = [&](int clen, int i, int j, const std::vector<Vertex>& m) {
        if (!best.set) return true;
        return std::tie(clen, i, j, m) < std::tie(best.clen, best.i, best.j, best.path);
    };

    // One orientation of a candidate: m runs from vertices[i] to vertices[j]
    // and the forward arc i -> j is the bypassed one.
    auto consider = [&](int i, int j, const std::vector<Vertex>& m) {
        const int arc_len = (j - i + t) % t;
        const int clen = t - arc_len + 6;
        if (!better(clen, i, j, m)) return;
        for (int s = 1; s <= 5; ++s) {
            const int p = pos[m[s]];
            if (p < 0) continue;
            const int off = (p - i + t) % t;
            if (off == 0 || off >= arc_len) return;  // touches the kept arc
        }
        std::vector<Vertex> walk;
        walk.reserve(arc_len + 6);
        for (int off = 0; off <= arc_len; ++off) walk.push_back(c.vertices[(i + off) % t]);
        for (int s = 5; s >= 1; --s) walk.push_back(m[s]);
        bool disk = false;
        try {
            disk = detail::walk_contractible(g, walk);
        } catch (const hypothesis_error&) {
            return;
        }
        if (!disk) return;
        best = {clen, i, j, m, true};
    };

    std::vector<Vertex> path;
    std::vector<char> used(g.vertex_count(), 0);
    auto dfs = [&](auto&& self, int a, int depth) -> void {
        if (depth == 6) {
            const Vertex end = path.back();
            if (pos[end] >= 0 && end != c.vertices[a]) consider(a, pos[end], path);
            return;
        }
        for (Vertex v : adj[path.back()]) {
            if (used[v]) continue;
            used[v] = 1;
            path.push_back(v);
            self(self, a, depth + 1);
            path.pop_back();
            used[v] = 0;
        }
    };
    for (int a = 0; a < t; ++a) {
        path.assign(1, c.vertices[a]);
        std::fill(used.begin(), used.end(), 0);
        used[c.vertices[a]] = 1;
        dfs(dfs, a, 0);
    }
    SURF_CHECK(best.set, "no shortcut found, not even the trivial one");

    Shortcut out;
    out.i = best.i;
    out.j = best.j;
    out.path = best.path;
    const int kept = t - (best.j - best.i + t) % t;  // edges of the retained arc
    std::vector<Vertex> cv;
    cv.reserve(kept + 6);
    for (int off = 0; off <= kept; ++off) cv.push_back(c.vertices[(best.j + off) % t]);
    out.d_arc = cv;
    for (int s = 1; s <= 5; ++s) cv.push_back(best.path[s]);
    out.resulting_cycle = make_cycle(g, cv);

    if (canonical_cycle_key(cv) != canonical_cycle_key(c.vertices)) {
        if (has_chord(g, out.resulting_cycle))
            throw hypothesis_error("shortcut result has a chord: cycle " + cycle_ids(cv));
        DistanceReport rep = ncdist(g, out.resulting_cycle);
        if (!rep.infinite() && *rep.value < 8)
            throw hypothesis_error("shortcut result has ncdist below 8: cycle " +
                                   cycle_ids(cv));
    }
    return out;
}

namespace {

void verify_replacement(const EmbeddedGraph& g, const CollarSubgraph& col,
                        const CycleOnSurface& w, int d) {
    if (has_chord(g, w)) throw_violation(w.vertices);
    if (is_contractible(g, w)) throw_violation(w.vertices);
    if (!is_nice(g, w)) throw_violation(w.vertices);
    for (Vertex v : w.vertices)
        if (!std::binary_search(col.vertices.begin(), col.vertices.end(), v))
            throw_violation(w.vertices);
    DistanceReport rep = ncdist(g, w);
    if (!rep.infinite() && *rep.value < 4 * d - 2) throw_violation(w.vertices);
}

}  // namespace

NiceCycleResult nice_cycle(const EmbeddedGraph& g, const CycleOnSurface& c, int d) {
    SURF_REQUIRE(d >= 2, "nice cycle replacement needs d >= 2");
    SURF_REQUIRE(!has_chord(g, c), "planarizing cycle must be chordless");
    SURF_REQUIRE(!is_contractible(g, c), "planarizing cycle must be noncontractible");
    CollarSubgraph col = collar(g, c, 4);
    if (!col.orderly) throw hypothesis_error("collar is not orderly");
    {
        DistanceReport rep = ncdist(g, c);
        if (!rep.infinite() && *rep.value < 4 * (d + 1))
            throw hypothesis_error("planarizing cycle has ncdist below 4(d+1)");
    }
    if (is_nice(g, c)) return {canonical_traversal(g, c), "already-nice"};

    Shortcut sc = optimal_six_shortcut(g, c);
    const bool changed =
        canonical_cycle_key(sc.resulting_cycle.vertices) != canonical_cycle_key(c.vertices);
    if (changed) {
        DistanceReport rep = ncdist(g, sc.resulting_cycle);
        if (!rep.infinite() && *rep.value < 4 * d) throw_violation(sc.resulting_cycle.vertices);
    }
    if (is_nice(g, sc.resulting_cycle)) {
        verify_replacement(g, col, sc.resulting_cycle, d);
        return {canonical_traversal(g, sc.resulting_cycle), "shortcut"};
    }

    Frame f0;
    f0.seq = sc.path;
    for (std::size_t s = 1; s + 1 < sc.d_arc.size(); ++s) f0.seq.push_back(sc.d_arc[s]);
    CaseOutcome res = dispatch(g, f0, "shortcut", 0);
    CycleOnSurface out = make_cycle(g, res.cycle);
    verify_replacement(g, col, out, d);
    return {canonical_traversal(g, out), res.label};
}

}  // namespace surf
