#include "surf/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "surf/homology.hpp"

#ifdef SURF_HAVE_OPENMP
#include <omp.h>
#endif

namespace surf {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct Candidate {
    int length = kInf;
    std::vector<Vertex> key;
    std::vector<Dart> darts;

    bool better_than(const Candidate& other) const {
        if (length != other.length) return length < other.length;
        return key < other.key;
    }
};

// Breadth-first scan from one root.  Fundamental cycles of non-tree edges
// are trimmed at the lowest common ancestor, so every candidate is a simple
// cycle.  Nonzero-class candidates update `bestA`; class-zero ones no longer
// than `keep_b` land in `poolB` when requested.
void scan_root(const EmbeddedGraph& g, const std::vector<std::uint64_t>& labels, Vertex root,
               const std::atomic<int>& global_best, Candidate& bestA, bool need_b,
               std::map<std::vector<Vertex>, Candidate>& poolB) {
    const int n = g.vertex_count();
    std::vector<int> depth(n, -1);
    std::vector<Dart> pd(n, -1);  // dart parent -> v
    std::vector<std::uint64_t> acc(n, 0);
    std::deque<Vertex> q;
    depth[root] = 0;
    q.push_back(root);
    while (!q.empty()) {
        const Vertex v = q.front();
        q.pop_front();
        for (Dart d : g.rotation(v)) {
            const Vertex u = g.head(d);
            if (depth[u] >= 0) continue;
            depth[u] = depth[v] + 1;
            pd[u] = d;
            acc[u] = acc[v] ^ labels[dart_edge(d)];
            q.push_back(u);
        }
    }

    auto build_cycle = [&](Edge e, Vertex u, Vertex v) {
        // Walk both endpoints up to their meeting point.
        std::vector<Dart> up_u, up_v;
        Vertex a = u, b = v;
        int da = depth[a], db = depth[b];
        while (da > db) {
            up_u.push_back(pd[a]);
            a = g.tail(pd[a]);
            --da;
        }
        while (db > da) {
            up_v.push_back(pd[b]);
            b = g.tail(pd[b]);
            --db;
        }
        while (a != b) {
            up_u.push_back(pd[a]);
            a = g.tail(pd[a]);
            up_v.push_back(pd[b]);
            b = g.tail(pd[b]);
        }
        // lca -> u, the non-tree edge u -> v, v -> lca.
        std::vector<Dart> cyc;
        for (auto it = up_u.rbegin(); it != up_u.rend(); ++it) cyc.push_back(*it);
        cyc.push_back(g.edge(e).u == u ? 2 * e : 2 * e + 1);
        for (Dart d : up_v) cyc.push_back(twin(d));
        return cyc;
    };

    for (Edge e = 0; e < g.edge_count(); ++e) {
        const Vertex u = g.edge(e).u, v = g.edge(e).v;
        if (pd[u] >= 0 && dart_edge(pd[u]) == e) continue;
        if (pd[v] >= 0 && dart_edge(pd[v]) == e) continue;
        // Length after trimming the shared tree prefix.
        Vertex a = u, b = v;
        int da = depth[a], db = depth[b];
        while (da > db) {
            a = g.tail(pd[a]);
            --da;
        }
        while (db > da) {
            b = g.tail(pd[b]);
            --db;
        }
        int shared = da;
        while (a != b) {
            a = g.tail(pd[a]);
            b = g.tail(pd[b]);
            --shared;
        }
        const int len = depth[u] + depth[v] + 1 - 2 * shared;
        const std::uint64_t cls = acc[u] ^ acc[v] ^ labels[e];

        const int snapshot = std::min(bestA.length, global_best.load(std::memory_order_relaxed));
        if (len > snapshot) continue;
        std::vector<Dart> cyc = build_cycle(e, u, v);
        std::vector<Vertex> verts(cyc.size());
        for (std::size_t i = 0; i < cyc.size(); ++i) verts[i] = g.tail(cyc[i]);
        std::vector<Vertex> key = canonical_cycle_key(verts);
        if (cls != 0) {
            Candidate cand{len, std::move(key), std::move(cyc)};
            if (cand.better_than(bestA)) bestA = std::move(cand);
        } else if (need_b) {
            auto it = poolB.find(key);
            if (it == poolB.end()) poolB.emplace(std::move(key), Candidate{len, {}, std::move(cyc)});
        }
    }
}

}  // namespace

WidthSearchResult width_search(const EmbeddedGraph& g, Exec mode) {
    SURF_REQUIRE(g.vertex_count() > 0 && g.connected(),
                 "width search needs a connected nonempty graph");
    const SurfaceInfo s = g.surface();
    SURF_REQUIRE(s.euler_genus > 0, "no noncontractible cycle");
    const auto& labels = edge_labels(g);
    const int n = g.vertex_count();

    // Class-zero simple cycles are separating; a separating cycle is
    // noncontractible only when both closed-up sides have positive genus,
    // and orientable sides carry even genus.  Hence the exact phase is only
    // needed on nonorientable surfaces and at orientable genus two or more.
    const bool need_b = s.euler_genus >= 4 || (s.euler_genus >= 2 && !s.orientable);

    std::atomic<int> global_best{kInf};
    Candidate bestA;
    std::map<std::vector<Vertex>, Candidate> poolB;

    bool scanned = false;
#ifdef SURF_HAVE_OPENMP
    if (mode == Exec::parallel) {
        const int threads = omp_get_max_threads();
        std::vector<Candidate> bests(threads);
        std::vector<std::map<std::vector<Vertex>, Candidate>> pools(threads);
#pragma omp parallel for schedule(dynamic, 8)
        for (Vertex r = 0; r < n; ++r) {
            const int tid = omp_get_thread_num();
            scan_root(g, labels, r, global_best, bests[tid], need_b, pools[tid]);
            int cur = global_best.load(std::memory_order_relaxed);
            while (bests[tid].length < cur &&
                   !global_best.compare_exchange_weak(cur, bests[tid].length)) {
            }
        }
        for (auto& cand : bests)
            if (cand.length < kInf && cand.better_than(bestA)) bestA = std::move(cand);
        for (auto& pool : pools)
            for (auto& [key, cand] : pool) poolB.try_emplace(key, std::move(cand));
        scanned = true;
    }
#else
    (void)mode;
#endif
    if (!scanned) {
        for (Vertex r = 0; r < n; ++r) {
            scan_root(g, labels, r, global_best, bestA, need_b, poolB);
            if (bestA.length < global_best.load(std::memory_order_relaxed))
                global_best.store(bestA.length, std::memory_order_relaxed);
        }
    }

    SURF_CHECK(bestA.length < kInf, "positive genus must yield a screened candidate");

    Candidate winner = std::move(bestA);
    if (need_b) {
        std::vector<std::pair<std::vector<Vertex>, Candidate>> ordered;
        for (auto& [key, cand] : poolB) {
            if (cand.length > winner.length) continue;
            if (cand.length == winner.length && !(key < winner.key)) continue;
            cand.key = key;
            ordered.emplace_back(key, std::move(cand));
        }
        std::sort(ordered.begin(), ordered.end(),
                  [](const auto& a, const auto& b) { return a.second.better_than(b.second); });
        for (auto& [key, cand] : ordered) {
            if (!cand.better_than(winner)) continue;
            CycleOnSurface cyc = make_cycle_darts(g, cand.darts);
            if (!is_contractible(g, cyc)) {
                winner = std::move(cand);
                break;  // ordered ascending: the first hit is the minimum
            }
        }
    }

    WidthSearchResult out;
    out.cycle = canonical_traversal(g, make_cycle_darts(g, winner.darts));
    out.width = winner.length;
    SURF_CHECK(!has_chord(g, out.cycle), "shortest noncontractible cycle has a chord");
    return out;
}

namespace {

// State id for the labelled search: vertex * 2^genus + accumulated class.
struct StateSpace {
    int n = 0;
    int genus = 0;
    std::size_t states() const { return static_cast<std::size_t>(n) << genus; }
    std::size_t id(Vertex v, std::uint64_t a) const {
        return (static_cast<std::size_t>(v) << genus) | a;
    }
    Vertex vertex(std::size_t s) const { return static_cast<Vertex>(s >> genus); }
    std::uint64_t cls(std::size_t s) const {
        return s & ((std::uint64_t{1} << genus) - 1);
    }
};

struct Arrival {
    int length = 0;
    Vertex x = -1, y = -1;
    std::uint64_t cls = 0;
    std::vector<Vertex> witness;  // set when qualification needed an explicit path

    bool operator<(const Arrival& o) const {
        return std::tie(length, x, y, cls) < std::tie(o.length, o.x, o.y, o.cls);
    }
};

// Depth-first enumeration of simple paths from x to y (possibly x == y) with
// interior off the cycle, exact length and class; paths are produced in
// lexicographic order and the first one accepted by `test` wins.
class PathEnumerator {
public:
    PathEnumerator(const EmbeddedGraph& g, const std::vector<std::uint64_t>& labels,
                   const std::vector<int>& pos, Vertex y, long long budget)
        : g_(g), labels_(labels), pos_(pos), y_(y), budget_(budget) {
        // Off-cycle distance to y, final attachment edge included.
        dist_to_y_.assign(g.vertex_count(), -1);
        std::deque<Vertex> q;
        for (Vertex w : g.neighbors(y))
            if (pos_[w] < 0 && dist_to_y_[w] < 0) {
                dist_to_y_[w] = 1;
                q.push_back(w);
            }
        while (!q.empty()) {
            const Vertex v = q.front();
            q.pop_front();
            for (Vertex u : g.neighbors(v))
                if (pos_[u] < 0 && dist_to_y_[u] < 0) {
                    dist_to_y_[u] = dist_to_y_[v] + 1;
                    q.push_back(u);
                }
        }
    }

    std::optional<std::vector<Vertex>> find(
        Vertex x, int length, std::uint64_t cls,
        const std::function<bool(const std::vector<Vertex>&)>& test) {
        used_.assign(g_.vertex_count(), 0);
        path_.clear();
        path_.push_back(x);
        return walk(x, length, cls, test);
    }

private:
    std::optional<std::vector<Vertex>> walk(
        Vertex v, int remaining, std::uint64_t want,
        const std::function<bool(const std::vector<Vertex>&)>& test) {
        std::vector<std::pair<Vertex, Edge>> next;
        for (Dart d : g_.rotation(v)) next.emplace_back(g_.head(d), dart_edge(d));
        std::sort(next.begin(), next.end());
        for (auto [u, e] : next) {
            if (--budget_ < 0)
                throw resource_limit_error("path enumeration exceeded its node budget");
            const std::uint64_t lab = labels_[e];
            if (remaining == 1) {
                if (u != y_ || lab != want) continue;
                path_.push_back(y_);
                if (test(path_)) return path_;
                path_.pop_back();
                continue;
            }
            if (pos_[u] >= 0 || used_[u]) continue;
            if (dist_to_y_[u] < 0 || dist_to_y_[u] > remaining - 1) continue;
            used_[u] = 1;
            path_.push_back(u);
            auto got = walk(u, remaining - 1, want ^ lab, test);
            if (got) return got;
            path_.pop_back();
            used_[u] = 0;
        }
        return std::nullopt;
    }

    const EmbeddedGraph& g_;
    const std::vector<std::uint64_t>& labels_;
    const std::vector<int>& pos_;
    Vertex y_;
    long long budget_;
    std::vector<int> dist_to_y_;
    std::vector<char> used_;
    std::vector<Vertex> path_;
};

struct NcdistContext {
    const EmbeddedGraph* g = nullptr;
    const CycleOnSurface* c = nullptr;
    const std::vector<std::uint64_t>* labels = nullptr;
    StateSpace space;
    std::vector<int> pos;           // vertex -> cycle position or -1
    std::vector<std::uint64_t> pre;  // prefix class of darts [0, i)
    std::uint64_t class_c = 0;
    int width = 0;
    long long enum_budget = 4'000'000;

    std::uint64_t arc_label(int px, int py) const {
        if (px <= py) return pre[py] ^ pre[px];
        return class_c ^ pre[px] ^ pre[py];
    }
    int arc_length(int px, int py) const {
        const int t = c->length();
        return (py - px + t) % t;
    }
};

// One labelled breadth-first search from cycle vertex x.  Arrivals back on
// the cycle are judged: nonzero class certifies noncontractible, a composed
// cycle shorter than the width is contractible, anything else is settled by
// cutting along an explicit witness (falling back to exhaustive enumeration
// at that exact length).  Qualifying arrivals no longer than `cap` are
// collected.
void ncdist_from(const NcdistContext& ctx, Vertex x, std::atomic<int>& shared_best,
                 std::vector<Arrival>& out) {
    const EmbeddedGraph& g = *ctx.g;
    const CycleOnSurface& c = *ctx.c;
    const auto& labels = *ctx.labels;
    const int px = ctx.pos[x];

    std::vector<int> dist(ctx.space.states(), -1);
    std::vector<std::int32_t> parent(ctx.space.states(), -1);
    std::deque<std::size_t> q;
    for (Dart d : g.rotation(x)) {
        const Vertex w = g.head(d);
        if (ctx.pos[w] >= 0) continue;
        const std::size_t s = ctx.space.id(w, labels[dart_edge(d)]);
        if (dist[s] < 0) {
            dist[s] = 1;
            q.push_back(s);
        }
    }

    auto rebuild = [&](std::size_t s) {
        std::vector<Vertex> verts;
        for (std::int64_t cur = static_cast<std::int64_t>(s); cur >= 0;
             cur = parent[static_cast<std::size_t>(cur)])
            verts.push_back(ctx.space.vertex(static_cast<std::size_t>(cur)));
        verts.push_back(x);
        std::reverse(verts.begin(), verts.end());
        return verts;
    };

    auto simple = [](const std::vector<Vertex>& verts) {
        std::set<Vertex> uniq(verts.begin(), verts.end());
        return uniq.size() == verts.size();
    };

    // Composed cycle for an open arrival: the path, then the chosen arc of c
    // walked back from y to x (interior only).
    auto composed = [&](const std::vector<Vertex>& path, int py, bool forward_arc) {
        std::vector<Vertex> cyc = path;
        const int t = c.length();
        if (forward_arc) {
            for (int p = (py - 1 + t) % t; p != px; p = (p - 1 + t) % t)
                cyc.push_back(c.vertices[p]);
        } else {
            for (int p = (py + 1) % t; p != px; p = (p + 1) % t) cyc.push_back(c.vertices[p]);
        }
        return cyc;
    };

    auto noncontractible_cycle = [&](const std::vector<Vertex>& verts) {
        return !is_contractible(g, make_cycle(g, verts));
    };

    std::set<std::tuple<Vertex, std::uint64_t, int>> judged;

    auto record = [&](Arrival arr) {
        int cur = shared_best.load(std::memory_order_relaxed);
        while (arr.length < cur && !shared_best.compare_exchange_weak(cur, arr.length)) {
        }
        out.push_back(std::move(arr));
    };

    auto judge_closed = [&](std::size_t from_state, Edge via, int length) {
        const std::uint64_t cls = ctx.space.cls(from_state) ^ labels[via];
        if (!judged.emplace(x, cls, length).second) return;
        if (cls != 0) {
            record(Arrival{length, x, x, cls, {}});
            return;
        }
        if (length < ctx.width) return;  // shorter than width: contractible
        std::vector<Vertex> path = rebuild(from_state);
        if (simple(path) && noncontractible_cycle(path)) {
            record(Arrival{length, x, x, cls, path});
            return;
        }
        PathEnumerator en(g, labels, ctx.pos, x, ctx.enum_budget);
        auto got = en.find(x, length, cls,
                           [&](const std::vector<Vertex>& p) {
                               std::vector<Vertex> cyc(p.begin(), p.end() - 1);
                               return noncontractible_cycle(cyc);
                           });
        if (got) {
            got->pop_back();  // drop the closing repeat of x
            record(Arrival{length, x, x, cls, *got});
        }
    };

    auto judge_open = [&](std::size_t from_state, Edge via, Vertex y, int length) {
        const std::uint64_t cls = ctx.space.cls(from_state) ^ labels[via];
        if (!judged.emplace(y, cls, length).second) return;
        const int py = ctx.pos[y];
        const std::uint64_t h_fwd = cls ^ ctx.arc_label(px, py);
        const std::uint64_t h_bwd = cls ^ ctx.arc_label(py, px);
        const int len_fwd = length + ctx.arc_length(px, py);
        const int len_bwd = length + ctx.arc_length(py, px);
        if (h_fwd == 0 && len_fwd < ctx.width) return;
        if (h_bwd == 0 && len_bwd < ctx.width) return;
        const bool need_fwd = h_fwd == 0;
        const bool need_bwd = h_bwd == 0;
        if (!need_fwd && !need_bwd) {
            record(Arrival{length, x, y, cls, {}});
            return;
        }
        auto passes = [&](const std::vector<Vertex>& path) {
            if (need_fwd && !noncontractible_cycle(composed(path, py, true))) return false;
            if (need_bwd && !noncontractible_cycle(composed(path, py, false))) return false;
            return true;
        };
        std::vector<Vertex> path = rebuild(from_state);
        path.push_back(y);
        if (simple(path) && passes(path)) {
            record(Arrival{length, x, y, cls, path});
            return;
        }
        PathEnumerator en(g, labels, ctx.pos, y, ctx.enum_budget);
        auto got = en.find(x, length, cls, passes);
        if (got) record(Arrival{length, x, y, cls, *got});
    };

    while (!q.empty()) {
        const std::size_t s = q.front();
        q.pop_front();
        const int ds = dist[s];
        if (ds + 1 > shared_best.load(std::memory_order_relaxed)) break;
        const Vertex v = ctx.space.vertex(s);
        const std::uint64_t a = ctx.space.cls(s);
        for (Dart d : g.rotation(v)) {
            const Vertex u = g.head(d);
            const Edge e = dart_edge(d);
            if (u == x) {
                // A class-zero return at depth one is the seed edge walked
                // back, not a cycle; anything else is a genuine arrival.
                if (ds >= 2 || (a ^ labels[e]) != 0) judge_closed(s, e, ds + 1);
                continue;
            }
            if (ctx.pos[u] >= 0) {
                judge_open(s, e, u, ds + 1);
                continue;
            }
            const std::size_t ns = ctx.space.id(u, a ^ labels[e]);
            if (dist[ns] < 0) {
                dist[ns] = ds + 1;
                parent[ns] = static_cast<std::int32_t>(s);
                q.push_back(ns);
            }
        }
    }
}

// Lexicographically smallest path realizing a label-qualified arrival:
// forward distances fix the layer, backward distances over states admit a
// greedy front-to-back choice.  Falls back to enumeration when the greedy
// walk traps itself.
std::vector<Vertex> lexmin_witness(const NcdistContext& ctx, const Arrival& arr) {
    if (!arr.witness.empty()) return arr.witness;
    const EmbeddedGraph& g = *ctx.g;
    const auto& labels = *ctx.labels;
    const Vertex x = arr.x, y = arr.y;
    const int L = arr.length;

    std::vector<int> back(ctx.space.states(), -1);
    std::deque<std::size_t> q;
    for (Dart d : g.rotation(y)) {
        const Vertex w = g.head(d);
        if (ctx.pos[w] >= 0) continue;
        const std::size_t s = ctx.space.id(w, arr.cls ^ labels[dart_edge(d)]);
        if (back[s] < 0) {
            back[s] = 1;
            q.push_back(s);
        }
    }
    while (!q.empty()) {
        const std::size_t s = q.front();
        q.pop_front();
        const Vertex v = ctx.space.vertex(s);
        const std::uint64_t a = ctx.space.cls(s);
        for (Dart d : g.rotation(v)) {
            const Vertex u = g.head(d);
            if (ctx.pos[u] >= 0) continue;
            const std::size_t ns = ctx.space.id(u, a ^ labels[dart_edge(d)]);
            if (back[ns] < 0) {
                back[ns] = back[s] + 1;
                q.push_back(ns);
            }
        }
    }

    std::vector<char> used(g.vertex_count(), 0);
    std::vector<Vertex> path{x};
    std::uint64_t accum = 0;
    Vertex cur = x;
    bool trapped = false;
    for (int step = 0; step < L - 1; ++step) {
        const int remaining = L - step;
        Vertex pick = -1;
        std::uint64_t pick_acc = 0;
        std::vector<std::pair<Vertex, Edge>> next;
        for (Dart d : g.rotation(cur)) next.emplace_back(g.head(d), dart_edge(d));
        std::sort(next.begin(), next.end());
        for (auto [u, e] : next) {
            if (ctx.pos[u] >= 0 || used[u]) continue;
            const std::uint64_t na = accum ^ labels[e];
            const std::size_t ns = ctx.space.id(u, na);
            if (back[ns] == remaining - 1) {
                pick = u;
                pick_acc = na;
                break;
            }
        }
        if (pick < 0) {
            trapped = true;
            break;
        }
        used[pick] = 1;
        path.push_back(pick);
        accum = pick_acc;
        cur = pick;
    }
    if (!trapped) {
        if (x != y) path.push_back(y);  // closed witnesses list each vertex once
        return path;
    }
    // All paths in a label-qualified class succeed, so take the first one.
    auto got = PathEnumerator(g, labels, ctx.pos, y, ctx.enum_budget)
                   .find(x, L, arr.cls, [](const std::vector<Vertex>&) { return true; });
    SURF_CHECK(got.has_value(), "arrival without a realizing path");
    if (x == y) got->pop_back();
    return *got;
}

}  // namespace

DistanceReport ncdist_search(const EmbeddedGraph& g, const CycleOnSurface& c, Exec mode) {
    SURF_REQUIRE(g.connected(), "ncdist needs a connected graph");
    NcdistContext ctx;
    ctx.g = &g;
    ctx.c = &c;
    const auto& labels = edge_labels(g);
    ctx.labels = &labels;
    ctx.space.n = g.vertex_count();
    ctx.space.genus = g.surface().euler_genus;
    if (ctx.space.genus >= 24 || ctx.space.states() > 16'000'000)
        throw resource_limit_error("homology-labelled search state space is too large");
    ctx.width = width(g);
    ctx.pos = std::vector<int>(g.vertex_count(), -1);
    for (int i = 0; i < c.length(); ++i) ctx.pos[c.vertices[i]] = i;
    ctx.pre.assign(c.length() + 1, 0);
    for (int i = 0; i < c.length(); ++i)
        ctx.pre[i + 1] = ctx.pre[i] ^ labels[dart_edge(c.darts[i])];
    ctx.class_c = ctx.pre[c.length()];

    std::vector<Vertex> sources = c.vertices;
    std::sort(sources.begin(), sources.end());

    std::atomic<int> shared_best{kInf};
    std::vector<Arrival> arrivals;

#ifdef SURF_HAVE_OPENMP
    if (mode == Exec::parallel) {
#pragma omp parallel
        {
            std::vector<Arrival> local;
#pragma omp for schedule(dynamic, 1)
            for (int i = 0; i < static_cast<int>(sources.size()); ++i)
                ncdist_from(ctx, sources[i], shared_best, local);
#pragma omp critical
            arrivals.insert(arrivals.end(), local.begin(), local.end());
        }
    } else
#endif
    {
        (void)mode;
        for (Vertex x : sources) ncdist_from(ctx, x, shared_best, arrivals);
    }

    DistanceReport rep;
    rep.kind = DistanceKind::ncdist;
    if (arrivals.empty()) return rep;
    std::sort(arrivals.begin(), arrivals.end());
    const int best = arrivals.front().length;
    rep.value = best;
    std::vector<Vertex> witness;
    for (const Arrival& arr : arrivals) {
        if (arr.length != best) break;
        std::vector<Vertex> wit = lexmin_witness(ctx, arr);
        if (witness.empty() || wit < witness) witness = std::move(wit);
    }
    rep.witness = std::move(witness);
    return rep;
}

}  // namespace surf
