#include "surf/surgery.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "surf/errors.hpp"
#include "surf/homology.hpp"

namespace surf {

Vertex SurgeryOutcome::apex(const std::string& name) const {
    for (const auto& [k, v] : apexes)
        if (k == name) return v;
    throw internal_error("no apex named " + name);
}

namespace detail {

// ── Cutting ──
//
// Each cycle vertex splits into a left copy (keeping its id) and a right copy
// (a new id).  "Right" at vertex i means the rotation arc on the successor
// side of the outgoing cycle dart when the transported orientation o_i is +1,
// the other arc when it is -1; o propagates as o_{i+1} = o_i * sign(e_i), so
// the right arcs of consecutive vertices lie on the same geometric side.
// Each cycle edge doubles; the right chain reuses the original edge slots so
// most dart ids survive.  After one full turn the chains reconnect straight
// (two boundary circles) when the sign product is +1, or crosswise (a single
// doubled circle) when it is -1.  Faces are untouched, every boundary circle
// shows up as one new face, so per-component Euler genus already equals the
// genus after disk capping.
CutResult cut_scheme(const EmbeddedGraph& g, const CycleOnSurface& c) {
    const int t = c.length();
    const int n = g.vertex_count();
    const int m = g.edge_count();
    SURF_CHECK(t >= 2, "cut needs a cycle of length at least 2");
    for (int i = 0; i < t; ++i) {
        SURF_CHECK(g.tail(c.darts[i]) == c.vertices[i] &&
                       g.head(c.darts[i]) == c.vertices[(i + 1) % t],
                   "cycle walk inconsistent with graph");
    }

    std::vector<int> o(t, 1);
    for (int i = 0; i + 1 < t; ++i)
        o[i + 1] = o[i] * g.edge(dart_edge(c.darts[i])).sign;
    const bool two_sided = o[t - 1] * g.edge(dart_edge(c.darts[t - 1])).sign == 1;

    std::vector<EdgeRec> ne(g.edges());
    ne.reserve(m + t);

    // Duplicate the cycle edges.  Slot e_i becomes the right-chain copy; the
    // left-chain copy is appended as edge m+i.  Dart parity is preserved.
    for (int i = 0; i < t; ++i) {
        const Dart d = c.darts[i];
        const Edge e = dart_edge(d);
        const EdgeRec base = g.edge(e);
        const Vertex far_r = (i + 1 < t) ? n + i + 1 : (two_sided ? n : c.vertices[0]);
        const Vertex far_l = (i + 1 < t) ? c.vertices[i + 1] : (two_sided ? c.vertices[0] : n);
        if ((d & 1) == 0) {
            ne[e] = EdgeRec{n + i, far_r, base.sign};
            ne.push_back(EdgeRec{c.vertices[i], far_l, base.sign});
        } else {
            ne[e] = EdgeRec{far_r, n + i, base.sign};
            ne.push_back(EdgeRec{far_l, c.vertices[i], base.sign});
        }
    }

    // Boundary darts per vertex and side.
    std::vector<Dart> out_r(t), out_l(t), in_r(t), in_l(t);
    for (int i = 0; i < t; ++i) {
        const Dart a = c.darts[i];
        const Dart b = twin(c.darts[(i + t - 1) % t]);
        out_r[i] = a;
        out_l[i] = 2 * (m + i) + (a & 1);
        if (i > 0) {
            in_r[i] = b;
            in_l[i] = 2 * (m + i - 1) + (b & 1);
        } else {
            in_r[0] = two_sided ? b : 2 * (m + t - 1) + (b & 1);
            in_l[0] = two_sided ? 2 * (m + t - 1) + (b & 1) : b;
        }
    }

    std::vector<std::vector<Dart>> nrot;
    nrot.reserve(n + t);
    for (Vertex v = 0; v < n; ++v) nrot.push_back(g.rotation(v));

    for (int i = 0; i < t; ++i) {
        const Vertex v = c.vertices[i];
        const auto& rot = g.rotation(v);
        const int deg = static_cast<int>(rot.size());
        const int pa = g.rotation_index(c.darts[i]);
        const int pb = g.rotation_index(twin(c.darts[(i + t - 1) % t]));
        std::vector<Dart> arc1, arc2;  // strictly after a resp. after b
        for (int j = (pa + 1) % deg; j != pb; j = (j + 1) % deg) arc1.push_back(rot[j]);
        for (int j = (pb + 1) % deg; j != pa; j = (j + 1) % deg) arc2.push_back(rot[j]);
        const auto& right_arc = (o[i] == 1) ? arc1 : arc2;
        const auto& left_arc = (o[i] == 1) ? arc2 : arc1;

        // Reattach the right arc's edge endpoints to the new copy.
        for (Dart d : right_arc) {
            Edge e = dart_edge(d);
            if ((d & 1) == 0) ne[e].u = n + i;
            else ne[e].v = n + i;
        }

        std::vector<Dart> rrot, lrot;
        if (o[i] == 1) {
            rrot.push_back(out_r[i]);
            rrot.insert(rrot.end(), right_arc.begin(), right_arc.end());
            rrot.push_back(in_r[i]);
            lrot.push_back(in_l[i]);
            lrot.insert(lrot.end(), left_arc.begin(), left_arc.end());
            lrot.push_back(out_l[i]);
        } else {
            rrot.push_back(in_r[i]);
            rrot.insert(rrot.end(), right_arc.begin(), right_arc.end());
            rrot.push_back(out_r[i]);
            lrot.push_back(out_l[i]);
            lrot.insert(lrot.end(), left_arc.begin(), left_arc.end());
            lrot.push_back(in_l[i]);
        }
        nrot[v] = std::move(lrot);
        nrot.push_back(std::move(rrot));
    }

    CutResult res;
    res.two_sided = two_sided;
    if (two_sided) {
        std::vector<Vertex> right(t), left(t);
        for (int i = 0; i < t; ++i) {
            right[i] = n + i;
            left[i] = c.vertices[i];
        }
        res.circles.push_back(std::move(right));
        res.circles.push_back(std::move(left));
    } else {
        std::vector<Vertex> circle;
        circle.reserve(2 * t);
        for (int i = 0; i < t; ++i) circle.push_back(n + i);
        for (int i = 0; i < t; ++i) circle.push_back(c.vertices[i]);
        res.circles.push_back(std::move(circle));
    }
    res.to_source.resize(n + t);
    std::iota(res.to_source.begin(), res.to_source.begin() + n, 0);
    for (int i = 0; i < t; ++i) res.to_source[n + i] = c.vertices[i];

    res.graph = EmbeddedGraph::from_parts(n + t, std::move(ne), std::move(nrot),
                                          g.multi_allowed());
    SURF_CHECK(res.graph.face_count() ==
                   g.face_count() + static_cast<int>(res.circles.size()),
               "cut must add exactly the boundary faces");
    return res;
}

// ── Stellar subdivision ──
//
// The apex edge to a visit with arrival flag 1 gets a negative sign and the
// apex dart is inserted before twin(d) instead of after; the apex rotation is
// the reversed visit order.  These three rules make every fan triangle close
// under the tracing automaton for arbitrary edge signs.
SubdivideResult subdivide_face(const EmbeddedGraph& g, int face) {
    const auto& fw = g.faces().at(face);
    const int len = fw.size();
    SURF_CHECK(len >= 2, "cannot subdivide a face of length < 2");
    const int n = g.vertex_count();
    const int m = g.edge_count();

    // Recover the side flags of the stored representative walk.
    int side = -1;
    for (int f0 = 0; f0 < 2 && side < 0; ++f0) {
        auto [nd, nf] = detail::face_step(g, fw.darts[0], f0);
        if (nd == fw.darts[1 % len] &&
            (len > 1 || nf == f0))
            side = f0;
    }
    SURF_CHECK(side >= 0, "face walk does not match its own trace");
    std::vector<int> flags(len);
    {
        int s = side;
        for (int k = 0; k < len; ++k) {
            auto [nd, nf] = detail::face_step(g, fw.darts[k], s);
            SURF_CHECK(nd == fw.darts[(k + 1) % len], "face walk diverged while re-tracing");
            flags[k] = nf;
            s = nf;
        }
        SURF_CHECK(s == side, "face walk must close with its starting flag");
    }

    std::vector<EdgeRec> ne(g.edges());
    ne.reserve(m + len);
    bool repeats = false;
    {
        std::set<Vertex> seen;
        for (int k = 0; k < len; ++k)
            if (!seen.insert(g.head(fw.darts[k])).second) repeats = true;
    }
    for (int k = 0; k < len; ++k)
        ne.push_back(EdgeRec{n, g.head(fw.darts[k]), flags[k] == 0 ? 1 : -1});

    // anchor dart -> (new dart, insert after?) for rebuilding rotations
    std::vector<std::pair<Dart, bool>> insert_at(2 * m, {-1, false});
    for (int k = 0; k < len; ++k)
        insert_at[twin(fw.darts[k])] = {2 * (m + k) + 1, flags[k] == 0};

    std::vector<std::vector<Dart>> nrot;
    nrot.reserve(n + 1);
    for (Vertex v = 0; v < n; ++v) {
        const auto& rot = g.rotation(v);
        std::vector<Dart> out;
        out.reserve(rot.size() + 2);
        for (Dart d : rot) {
            auto [nd, after] = insert_at[d];
            if (nd >= 0 && !after) out.push_back(nd);
            out.push_back(d);
            if (nd >= 0 && after) out.push_back(nd);
        }
        nrot.push_back(std::move(out));
    }
    std::vector<Dart> apex_rot(len);
    for (int k = 0; k < len; ++k) apex_rot[k] = 2 * (m + len - 1 - k);
    nrot.push_back(std::move(apex_rot));

    SubdivideResult res;
    res.apex = n;
    res.graph = EmbeddedGraph::from_parts(n + 1, std::move(ne), std::move(nrot),
                                          g.multi_allowed() || repeats);
    SURF_CHECK(res.graph.face_count() == g.face_count() + len - 1,
               "stellar subdivision must fan the face");
    return res;
}

// ── Star contraction ──
ContractResult contract_star(const EmbeddedGraph& g, Vertex apex) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    const std::vector<Vertex> circle = g.neighbors(apex);
    const int csize = static_cast<int>(circle.size());
    {
        std::set<Vertex> uniq(circle.begin(), circle.end());
        SURF_CHECK(static_cast<int>(uniq.size()) == csize, "apex must meet its circle simply");
    }

    std::vector<char> in_disk(n, 0);
    in_disk[apex] = 1;
    for (Vertex v : circle) in_disk[v] = 1;
    std::vector<char> flip(n, 0);
    for (Dart d : g.rotation(apex)) flip[g.head(d)] = g.edge(dart_edge(d)).sign < 0;

    // Surviving edges, endpoints inside the disk rewritten to the apex.
    std::vector<Edge> edge_map(m, -1);
    std::vector<EdgeRec> ne;
    int dropped = 0;
    for (Edge e = 0; e < m; ++e) {
        EdgeRec r = g.edge(e);
        const bool du = in_disk[r.u], dv = in_disk[r.v];
        if (du && dv) {
            ++dropped;
            continue;
        }
        if (du) {
            r.sign *= flip[r.u] ? -1 : 1;
            r.u = apex;
        } else if (dv) {
            r.sign *= flip[r.v] ? -1 : 1;
            r.v = apex;
        }
        edge_map[e] = static_cast<Edge>(ne.size());
        ne.push_back(r);
    }
    SURF_CHECK(dropped == 2 * csize, "apex circle must be chord-free");

    std::vector<Vertex> vmap(n, -1);
    std::vector<Vertex> to_source;
    for (Vertex v = 0; v < n; ++v) {
        if (v != apex && in_disk[v]) continue;
        vmap[v] = static_cast<Vertex>(to_source.size());
        to_source.push_back(v);
    }
    auto remap_dart = [&](Dart d) { return 2 * edge_map[dart_edge(d)] + (d & 1); };

    std::vector<std::vector<Dart>> nrot(to_source.size());
    for (Vertex v = 0; v < n; ++v) {
        if (vmap[v] < 0 || v == apex) continue;
        std::vector<Dart> out;
        out.reserve(g.degree(v));
        for (Dart d : g.rotation(v)) out.push_back(remap_dart(d));
        nrot[vmap[v]] = std::move(out);
    }
    // The apex inherits, per incident edge in rotation order, the neighbor's
    // remaining darts starting after the dart back to the apex; blocks of
    // negative apex edges flip (their charts are mirrored into the apex's).
    {
        std::vector<Dart> out;
        for (Dart d : g.rotation(apex)) {
            const Vertex c = g.head(d);
            const auto& rot = g.rotation(c);
            const int deg = static_cast<int>(rot.size());
            const int start = g.rotation_index(twin(d));
            std::vector<Dart> block;
            for (int j = 1; j < deg; ++j) {
                Dart x = rot[(start + j) % deg];
                if (in_disk[g.head(x)] || g.head(x) == apex) continue;
                block.push_back(remap_dart(x));
            }
            if (flip[c]) std::reverse(block.begin(), block.end());
            out.insert(out.end(), block.begin(), block.end());
        }
        nrot[vmap[apex]] = std::move(out);
    }

    ContractResult res;
    res.to_source = std::move(to_source);
    res.merged = vmap[apex];
    res.graph = EmbeddedGraph::from_parts(static_cast<int>(res.to_source.size()),
                                          std::move(ne), std::move(nrot), true);
    SURF_CHECK(res.graph.vertex_count() - res.graph.edge_count() + res.graph.face_count() ==
                   n - m + g.face_count(),
               "star contraction must preserve Euler characteristic");
    return res;
}

}  // namespace detail

namespace {

// Face id of the boundary circle that starts at `v`: the seam corner sits at
// the wrap of the rebuilt rotation, between its last and first darts.
int boundary_face_at(const EmbeddedGraph& g, Vertex v) {
    return g.face_at_corner(v, g.degree(v) - 1);
}

int component_genus(const EmbeddedGraph& g) { return g.surface().euler_genus; }

}  // namespace

SurgeryOutcome cut_along(const EmbeddedGraph& g, const CycleOnSurface& c_in) {
    SURF_REQUIRE(is_triangulation(g), "cut_along needs a triangulation");
    SURF_REQUIRE(!has_chord(g, c_in), "cut cycle has a chord");
    SURF_REQUIRE(!is_contractible(g, c_in), "cut cycle is contractible");

    const CycleOnSurface c = canonical_traversal(g, c_in);
    const int t = c.length();
    const int g_before = g.surface().euler_genus;
    const int w_before = width(g);

    detail::CutResult cut = detail::cut_scheme(g, c);

    // Cap every boundary circle; face ids shift after each subdivision but
    // the seam corner of the next circle's start vertex does not.
    EmbeddedGraph cur = cut.graph;
    std::vector<std::pair<std::string, Vertex>> apexes;
    for (std::size_t k = 0; k < cut.circles.size(); ++k) {
        auto sub = detail::subdivide_face(cur, boundary_face_at(cur, cut.circles[k][0]));
        cur = sub.graph;
        apexes.emplace_back(k == 0 ? "x'" : "x", sub.apex);
    }

    std::vector<Vertex> provenance = cut.to_source;
    provenance.resize(cur.vertex_count(), -1);

    SurgeryOutcome out;
    out.apexes = apexes;

    auto comps = cur.components();
    if (comps.size() == 1) {
        out.result = cur;
        out.provenance = std::move(provenance);
        out.split_kind = cut.two_sided ? SplitKind::two_sided_nonseparating
                                       : SplitKind::one_sided;
        const int g_after = component_genus(cur);
        SURF_CHECK(g_after == g_before - (cut.two_sided ? 2 : 1),
                   "cut genus drop does not match the cycle's sidedness");
    } else {
        SURF_CHECK(comps.size() == 2 && cut.two_sided, "cut produced unexpected components");
        out.split_kind = SplitKind::two_sided_separating;

        struct Piece {
            InducedSubgraph sub;
            int genus;
            Vertex min_source;
        };
        std::vector<Piece> pieces;
        for (auto& comp : comps) {
            Piece p{induced_subgraph(cur, comp), 0, std::numeric_limits<Vertex>::max()};
            p.genus = component_genus(p.sub.graph);
            for (Vertex v : p.sub.to_parent) {
                Vertex s = provenance[v];
                if (s >= 0) p.min_source = std::min(p.min_source, s);
            }
            pieces.push_back(std::move(p));
        }
        std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
            if (a.genus != b.genus) return a.genus > b.genus;
            return a.min_source < b.min_source;
        });
        SURF_CHECK(pieces[0].genus + pieces[1].genus == g_before,
                   "genera of the separated pieces must sum to the original");

        // Combine the ordered pieces into one graph with block-contiguous ids.
        std::vector<EdgeRec> edges;
        std::vector<std::vector<Dart>> rot;
        std::vector<Vertex> prov;
        std::vector<Vertex> relabel(cur.vertex_count(), -1);
        for (const Piece& p : pieces) {
            const int voff = static_cast<int>(rot.size());
            const int doff = static_cast<int>(2 * edges.size());
            const EmbeddedGraph& pg = p.sub.graph;
            for (Edge e = 0; e < pg.edge_count(); ++e) {
                EdgeRec r = pg.edge(e);
                edges.push_back(EdgeRec{r.u + voff, r.v + voff, r.sign});
            }
            for (Vertex v = 0; v < pg.vertex_count(); ++v) {
                std::vector<Dart> rr = pg.rotation(v);
                for (Dart& d : rr) d += doff;
                rot.push_back(std::move(rr));
                relabel[p.sub.to_parent[v]] = voff + v;
                prov.push_back(provenance[p.sub.to_parent[v]]);
            }
        }
        for (auto& [name, v] : out.apexes) v = relabel[v];
        out.result = EmbeddedGraph::from_parts(static_cast<int>(rot.size()),
                                               std::move(edges), std::move(rot));
        out.provenance = std::move(prov);
    }

    // The result is again a simple triangulation: every face a triangle.
    SURF_CHECK(out.result.is_simple(), "cut must preserve simplicity");
    for (const FaceWalk& fw : out.result.faces())
        SURF_CHECK(fw.size() == 3, "cut must preserve the triangulation");
    SURF_CHECK(out.result.vertex_count() ==
                   g.vertex_count() + t + static_cast<int>(out.apexes.size()),
               "cut vertex count mismatch");

    // Width can at worst halve.
    for (auto& comp : out.result.components()) {
        EmbeddedGraph piece = comps.size() == 1 ? out.result
                                                : induced_subgraph(out.result, comp).graph;
        if (piece.surface().euler_genus == 0) continue;
        SURF_CHECK(2 * width(piece) >= w_before, "cut width fell below half");
        if (comps.size() == 1) break;
    }
    return out;
}

SurgeryOutcome excise_to_apex(const EmbeddedGraph& g, const CycleOnSurface& d,
                              const std::string& apex_name) {
    SURF_REQUIRE(is_triangulation(g), "excise_to_apex needs a triangulation");
    SURF_REQUIRE(!has_chord(g, d), "excised cycle has a chord");
    SURF_REQUIRE(is_contractible(g, d), "excised cycle is not contractible");

    const int t = d.length();
    std::vector<Vertex> disk = disk_interior(g, d);
    std::vector<char> boundary(g.vertex_count(), 0), inside(g.vertex_count(), 0);
    for (Vertex v : d.vertices) boundary[v] = 1;
    std::vector<Vertex> interior;
    for (Vertex v : disk)
        if (!boundary[v]) {
            inside[v] = 1;
            interior.push_back(v);
        }
    SURF_REQUIRE(!interior.empty(), "facial cycle has no interior to excise");

    // The interior darts at each boundary vertex must fill exactly one of the
    // two rotation arcs between the cycle darts.
    for (int i = 0; i < t; ++i) {
        const Vertex v = d.vertices[i];
        const auto& rot = g.rotation(v);
        const int deg = static_cast<int>(rot.size());
        const int pa = g.rotation_index(d.darts[i]);
        const int pb = g.rotation_index(twin(d.darts[(i + t - 1) % t]));
        auto all_inside = [&](int from, int to) {
            int count = 0;
            for (int j = (from + 1) % deg; j != to; j = (j + 1) % deg) {
                if (!inside[g.head(rot[j])]) return -1;
                ++count;
            }
            return count;
        };
        const int c1 = all_inside(pa, pb), c2 = all_inside(pb, pa);
        SURF_CHECK((c1 > 0 && c2 == -1) || (c2 > 0 && c1 == -1) ||
                       (c1 > 0 && c2 == 0) || (c2 > 0 && c1 == 0),
                   "disk interior must fill one rotation arc");
    }

    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!inside[v]) keep.push_back(v);
    InducedSubgraph sub = induced_subgraph(g, std::move(keep));

    // Hole face: the corner after the surviving dart that preceded the
    // removed arc at d.vertices[0].
    const Vertex v0 = d.vertices[0];
    Dart prev = -1;
    {
        const auto& rot = g.rotation(v0);
        const int deg = static_cast<int>(rot.size());
        for (int j = 0; j < deg; ++j) {
            if (inside[g.head(rot[j])] && !inside[g.head(rot[(j + deg - 1) % deg])]) {
                prev = rot[(j + deg - 1) % deg];
                break;
            }
        }
    }
    SURF_CHECK(prev >= 0, "boundary vertex missing its interior arc");
    const Vertex nv0 = sub.from_parent[v0];
    auto nd = sub.graph.find_dart(nv0, sub.from_parent[g.head(prev)]);
    SURF_CHECK(nd.has_value(), "hole anchor dart vanished");
    const int hole = sub.graph.face_at_corner(nv0, sub.graph.rotation_index(*nd));
    SURF_CHECK(sub.graph.faces()[hole].size() == t, "hole boundary must be the cycle");

    auto capped = detail::subdivide_face(sub.graph, hole);

    SurgeryOutcome out;
    out.result = capped.graph;
    out.apexes = {{apex_name, capped.apex}};
    out.provenance = sub.to_parent;
    out.provenance.push_back(-1);
    SURF_CHECK(is_triangulation(out.result), "excision must preserve the triangulation");
    const SurfaceInfo before = g.surface(), after = out.result.surface();
    SURF_CHECK(before.euler_genus == after.euler_genus && before.orientable == after.orientable,
               "excision must preserve the surface");
    return out;
}

SurgeryOutcome split_planarize(const EmbeddedGraph& g,
                               const std::vector<CycleOnSurface>& cycles) {
    SURF_REQUIRE(!cycles.empty(), "split_planarize needs at least one cycle");
    for (const auto& c : cycles) {
        SURF_REQUIRE(!has_chord(g, c), "split cycle has a chord");
        SURF_REQUIRE(!is_contractible(g, c), "split cycle is contractible");
    }
    {
        std::vector<int> owner(g.vertex_count(), -1);
        for (std::size_t i = 0; i < cycles.size(); ++i)
            for (Vertex v : cycles[i].vertices) {
                SURF_REQUIRE(owner[v] < 0, "split cycles share a vertex");
                owner[v] = static_cast<int>(i);
            }
        for (Edge e = 0; e < g.edge_count(); ++e) {
            const auto& r = g.edge(e);
            SURF_REQUIRE(owner[r.u] < 0 || owner[r.v] < 0 || owner[r.u] == owner[r.v],
                         "split cycles are closer than distance 2");
        }
    }

    EmbeddedGraph cur = g;
    std::vector<Vertex> pos(g.vertex_count());  // source id -> current id
    std::iota(pos.begin(), pos.end(), 0);
    std::vector<std::pair<std::string, Vertex>> apexes;

    auto apply_remap = [&](const std::vector<Vertex>& to_prev) {
        // to_prev maps new ids to previous ids; invert over survivors.
        Vertex hi = 0;
        for (Vertex p : to_prev) hi = std::max(hi, p);
        std::vector<Vertex> inv(hi + 1, -1);
        std::vector<Vertex> newpos(pos.size(), -1);
        for (std::size_t nv = 0; nv < to_prev.size(); ++nv) inv[to_prev[nv]] = static_cast<Vertex>(nv);
        for (std::size_t s = 0; s < pos.size(); ++s)
            newpos[s] = (pos[s] >= 0 && pos[s] < static_cast<Vertex>(inv.size())) ? inv[pos[s]] : -1;
        pos = std::move(newpos);
        for (auto& [name, v] : apexes) v = (v >= 0 && v < static_cast<Vertex>(inv.size())) ? inv[v] : -1;
    };

    for (std::size_t i = 0; i < cycles.size(); ++i) {
        // Re-express the cycle in current ids; its edges are untouched so far.
        std::vector<Vertex> vs;
        vs.reserve(cycles[i].vertices.size());
        for (Vertex v : cycles[i].vertices) {
            SURF_CHECK(pos[v] >= 0, "split cycle lost a vertex");
            vs.push_back(pos[v]);
        }
        CycleOnSurface c = canonical_traversal(cur, make_cycle(cur, vs));

        detail::CutResult cut = detail::cut_scheme(cur, c);
        // Current ids survive the cut unchanged (copies are appended).
        EmbeddedGraph work = cut.graph;

        std::vector<Vertex> circle_starts;
        std::vector<Vertex> apex_ids;
        for (std::size_t k = 0; k < cut.circles.size(); ++k) {
            auto sub = detail::subdivide_face(work, boundary_face_at(work, cut.circles[k][0]));
            work = sub.graph;
            apex_ids.push_back(sub.apex);
        }

        // Contract each capped disk onto its apex.  The right circle (new
        // copies) collapses into y_i, the left one (original ids) into x_i;
        // a one-sided cycle yields only x_i.
        const std::string idx = std::to_string(i);
        cur = work;
        // pos/apexes currently reference pre-cut ids, which the cut preserved.
        for (std::size_t k = 0; k < apex_ids.size(); ++k) {
            auto con = detail::contract_star(cur, apex_ids[k]);
            cur = con.graph;
            apply_remap(con.to_source);
            for (std::size_t k2 = k + 1; k2 < apex_ids.size(); ++k2) {
                Vertex old = apex_ids[k2];
                Vertex found = -1;
                for (std::size_t nv = 0; nv < con.to_source.size(); ++nv)
                    if (con.to_source[nv] == old) { found = static_cast<Vertex>(nv); break; }
                SURF_CHECK(found >= 0, "pending apex vanished during contraction");
                apex_ids[k2] = found;
            }
            const std::string name = (cut.two_sided && k == 0) ? "y" + idx : "x" + idx;
            apexes.emplace_back(name, con.merged);
        }
    }

    SurgeryOutcome out;
    out.result = cur;
    out.apexes = std::move(apexes);
    out.provenance.assign(cur.vertex_count(), -1);
    for (std::size_t s = 0; s < pos.size(); ++s)
        if (pos[s] >= 0) out.provenance[pos[s]] = static_cast<Vertex>(s);

    for (auto& comp : out.result.components()) {
        EmbeddedGraph piece = out.result.connected()
                                  ? out.result
                                  : induced_subgraph(out.result, comp).graph;
        if (piece.surface().euler_genus != 0)
            throw hypothesis_error("planarizing set invalid");
        if (out.result.connected()) break;
    }
    return out;
}

FlattenOutcome flatten_small_cycles(const EmbeddedGraph& g,
                                    const std::vector<std::vector<Vertex>>& collars) {
    SURF_REQUIRE(is_triangulation(g), "flatten_small_cycles needs a triangulation");

    EmbeddedGraph cur = g;
    std::vector<Vertex> prov(g.vertex_count());  // current id -> source id
    std::iota(prov.begin(), prov.end(), 0);
    std::vector<std::pair<std::string, Vertex>> apexes;
    std::vector<PatchRegion> regions;
    int apex_counter = 0;

    // Collar membership in current ids; apexes created inside a collar join it.
    std::vector<char> in_collar(g.vertex_count(), 0);
    for (const auto& c : collars)
        for (Vertex v : c) in_collar[v] = 1;

    struct Candidate {
        std::vector<Vertex> cycle;  // traversal order
        std::vector<Vertex> interior;
    };

    auto facial = [&](const std::vector<Vertex>& cyc) {
        // 3-cycle bounding a face: both faces of some edge have length 3 and
        // exactly the cycle's vertex set.
        auto e = cur.find_edge(cyc[0], cyc[1]);
        if (!e) return false;
        auto [f1, f2] = cur.faces_of_edge(*e);
        for (int f : {f1, f2}) {
            const auto& walk = cur.faces()[f].darts;
            if (walk.size() != 3) continue;
            std::set<Vertex> fs;
            for (Dart d : walk) fs.insert(cur.tail(d));
            if (fs == std::set<Vertex>(cyc.begin(), cyc.end())) return true;
        }
        return false;
    };

    auto try_candidate = [&](const std::vector<Vertex>& cyc, std::size_t min_interior,
                             std::vector<Candidate>& outv) {
        // Regions are recorded against the input graph, so the boundary must
        // consist of input vertices; cycles through placeholders are not
        // cycles of the input and are left alone.
        for (Vertex v : cyc)
            if (prov[v] < 0) return;
        if (cycle_label(cur, cyc) != 0) return;  // certainly noncontractible
        CycleOnSurface c = make_cycle(cur, cyc);
        if (!is_contractible(cur, c)) return;
        std::vector<Vertex> disk = disk_interior(cur, c);
        std::vector<Vertex> interior;
        std::set<Vertex> on_cycle(cyc.begin(), cyc.end());
        for (Vertex v : disk)
            if (!on_cycle.count(v)) interior.push_back(v);
        if (interior.size() < min_interior) return;
        outv.push_back(Candidate{cyc, std::move(interior)});
    };

    for (;;) {
        std::vector<Candidate> cands;
        std::set<std::vector<Vertex>> seen;

        for (Edge e = 0; e < cur.edge_count(); ++e) {
            const auto& r = cur.edge(e);
            if (!in_collar[r.u] || !in_collar[r.v]) continue;
            // Triangles through this edge.
            for (Vertex w : cur.neighbors(r.u)) {
                if (w == r.v || !in_collar[w] || !cur.adjacent(w, r.v)) continue;
                std::vector<Vertex> cyc{r.u, r.v, w};
                auto key = canonical_cycle_key(cyc);
                if (!seen.insert(key).second) continue;
                if (facial(cyc)) continue;
                try_candidate(cyc, 1, cands);
            }
        }
        // 4-cycles u-v-x-y: v, y common neighbors of u and x, all in collars.
        for (Vertex u = 0; u < cur.vertex_count(); ++u) {
            if (!in_collar[u]) continue;
            std::vector<Vertex> nb = cur.neighbors(u);
            std::set<Vertex> nbs(nb.begin(), nb.end());
            std::set<Vertex> twos;
            for (Vertex v : nb)
                if (in_collar[v])
                    for (Vertex x : cur.neighbors(v))
                        if (x != u && in_collar[x] && !nbs.count(x)) twos.insert(x);
            for (Vertex x : twos) {
                std::vector<Vertex> common;
                for (Vertex v : nb)
                    if (in_collar[v] && cur.adjacent(v, x)) common.push_back(v);
                for (std::size_t a = 0; a < common.size(); ++a)
                    for (std::size_t b = a + 1; b < common.size(); ++b) {
                        // A diagonal would split the quad; its triangles are
                        // handled by the 3-cycle pass.
                        if (cur.adjacent(common[a], common[b])) continue;
                        std::vector<Vertex> cyc{u, common[a], x, common[b]};
                        auto key = canonical_cycle_key(cyc);
                        if (!seen.insert(key).second) continue;
                        try_candidate(cyc, 2, cands);
                    }
            }
        }

        if (cands.empty()) break;
        auto best = std::min_element(cands.begin(), cands.end(),
                                     [](const Candidate& a, const Candidate& b) {
                                         if (a.interior.size() != b.interior.size())
                                             return a.interior.size() < b.interior.size();
                                         return canonical_cycle_key(a.cycle) <
                                                canonical_cycle_key(b.cycle);
                                     });
        const Candidate chosen = *best;

        // Record the region in source ids, interiors measured in the source.
        {
            PatchRegion reg;
            for (Vertex v : chosen.cycle) {
                SURF_CHECK(prov[v] >= 0, "flatten boundary must be source vertices");
                reg.boundary.push_back(prov[v]);
            }
            CycleOnSurface src_cycle = make_cycle(g, reg.boundary);
            SURF_CHECK(is_contractible(g, src_cycle),
                       "flattened cycle must bound a disk in the source");
            std::set<Vertex> on_cycle(reg.boundary.begin(), reg.boundary.end());
            for (Vertex v : disk_interior(g, src_cycle))
                if (!on_cycle.count(v)) reg.interior.push_back(v);
            std::sort(reg.interior.begin(), reg.interior.end());
            SURF_CHECK(!reg.interior.empty(), "flatten region lost its interior");
            regions.push_back(std::move(reg));
        }

        // Delete the interior; a 4-cycle hole is refilled with one apex.
        std::vector<char> inside(cur.vertex_count(), 0);
        for (Vertex v : chosen.interior) inside[v] = 1;
        std::vector<Vertex> keep;
        for (Vertex v = 0; v < cur.vertex_count(); ++v)
            if (!inside[v]) keep.push_back(v);

        const Vertex v0 = chosen.cycle[0];
        Dart prev_dart = -1;
        {
            const auto& rot = cur.rotation(v0);
            const int deg = static_cast<int>(rot.size());
            for (int j = 0; j < deg; ++j)
                if (inside[cur.head(rot[j])] && !inside[cur.head(rot[(j + deg - 1) % deg])]) {
                    prev_dart = rot[(j + deg - 1) % deg];
                    break;
                }
        }
        SURF_CHECK(prev_dart >= 0, "flatten region has no interior dart at its root");

        InducedSubgraph sub = induced_subgraph(cur, std::move(keep));
        std::vector<char> collar_next;
        std::vector<Vertex> prov_next;
        for (Vertex nv = 0; nv < sub.graph.vertex_count(); ++nv) {
            collar_next.push_back(in_collar[sub.to_parent[nv]]);
            prov_next.push_back(prov[sub.to_parent[nv]]);
        }

        if (chosen.cycle.size() == 4) {
            const Vertex nv0 = sub.from_parent[v0];
            auto ndart = sub.graph.find_dart(nv0, sub.from_parent[cur.head(prev_dart)]);
            SURF_CHECK(ndart.has_value(), "flatten hole anchor vanished");
            const int hole = sub.graph.face_at_corner(nv0, sub.graph.rotation_index(*ndart));
            SURF_CHECK(sub.graph.faces()[hole].size() == 4, "flatten hole must be the 4-cycle");
            auto capped = detail::subdivide_face(sub.graph, hole);
            cur = capped.graph;
            collar_next.push_back(1);
            prov_next.push_back(-1);
            for (auto& [name, v] : apexes) v = sub.from_parent[v];
            apexes.emplace_back("q" + std::to_string(apex_counter++), capped.apex);
        } else {
            cur = sub.graph;
            for (auto& [name, v] : apexes) v = sub.from_parent[v];
        }
        // Drop apexes that later deletions consumed.
        std::erase_if(apexes, [](const auto& kv) { return kv.second < 0; });
        in_collar.assign(collar_next.begin(), collar_next.end());
        prov = std::move(prov_next);
        SURF_CHECK(is_triangulation(cur), "flatten must preserve the triangulation");
    }

    // Keep only maximal regions.
    std::vector<PatchRegion> maximal;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        std::set<Vertex> mine(regions[i].boundary.begin(), regions[i].boundary.end());
        mine.insert(regions[i].interior.begin(), regions[i].interior.end());
        bool subsumed = false;
        for (std::size_t j = 0; j < regions.size() && !subsumed; ++j) {
            if (i == j) continue;
            std::set<Vertex> other(regions[j].interior.begin(), regions[j].interior.end());
            subsumed = std::includes(other.begin(), other.end(), mine.begin(), mine.end());
        }
        if (!subsumed) maximal.push_back(regions[i]);
    }

    FlattenOutcome out;
    out.outcome.result = cur;
    out.outcome.apexes = std::move(apexes);
    out.outcome.provenance = std::move(prov);
    out.regions = std::move(maximal);
    return out;
}

}  // namespace surf
