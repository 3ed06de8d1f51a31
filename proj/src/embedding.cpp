#include "surf/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <sstream>
#include <string>

#include "surf/detail/graph_data.hpp"

namespace surf {

namespace {

std::shared_ptr<const detail::GraphData> make_data(int n,
                                                   std::vector<EdgeRec> edges,
                                                   std::vector<std::vector<Dart>> rotations,
                                                   bool allow_multi) {
    if (n < 0) throw parse_error("negative vertex count");
    const int m = static_cast<int>(edges.size());
    for (int e = 0; e < m; ++e) {
        const EdgeRec& r = edges[e];
        if (r.u < 0 || r.u >= n || r.v < 0 || r.v >= n)
            throw parse_error("edge " + std::to_string(e) + " endpoint out of range");
        if (r.u == r.v)
            throw parse_error("edge " + std::to_string(e) + " is a loop");
        if (r.sign != 1 && r.sign != -1)
            throw parse_error("edge " + std::to_string(e) + " sign must be +1 or -1");
    }
    if (static_cast<int>(rotations.size()) != n)
        throw parse_error("expected one rotation per vertex");

    auto data = std::make_shared<detail::GraphData>();
    data->n = n;
    data->edges = std::move(edges);
    data->rot = std::move(rotations);
    data->multi_ok = allow_multi;

    data->rot_pos.assign(2 * m, -1);
    for (Vertex v = 0; v < n; ++v) {
        const auto& r = data->rot[v];
        for (int i = 0; i < static_cast<int>(r.size()); ++i) {
            Dart d = r[i];
            if (d < 0 || d >= 2 * m)
                throw parse_error("rotation of vertex " + std::to_string(v) + " holds unknown dart " +
                                  std::to_string(d));
            const EdgeRec& er = data->edges[dart_edge(d)];
            Vertex t = (d & 1) ? er.v : er.u;
            if (t != v)
                throw parse_error("dart " + std::to_string(d) + " listed at vertex " + std::to_string(v) +
                                  " but its tail is " + std::to_string(t));
            if (data->rot_pos[d] != -1)
                throw parse_error("dart " + std::to_string(d) + " appears twice");
            data->rot_pos[d] = i;
        }
    }
    for (Dart d = 0; d < 2 * m; ++d)
        if (data->rot_pos[d] == -1)
            throw parse_error("dart " + std::to_string(d) + " missing from rotations");

    data->adj.reserve(m);
    for (Edge e = 0; e < m; ++e)
        data->adj.emplace_back(detail::GraphData::pack(data->edges[e].u, data->edges[e].v), e);
    std::sort(data->adj.begin(), data->adj.end());
    if (!allow_multi)
        for (size_t i = 1; i < data->adj.size(); ++i)
            if (data->adj[i - 1].first == data->adj[i].first)
                throw parse_error("parallel edges " + std::to_string(data->adj[i - 1].second) + " and " +
                                  std::to_string(data->adj[i].second));
    return data;
}

const detail::GraphData& req(const std::shared_ptr<const detail::GraphData>& p) {
    SURF_CHECK(p != nullptr, "use of empty EmbeddedGraph");
    return *p;
}

}  // namespace

EmbeddedGraph EmbeddedGraph::from_parts(int vertex_count,
                                        std::vector<EdgeRec> edges,
                                        std::vector<std::vector<Dart>> rotations,
                                        bool allow_multi) {
    EmbeddedGraph g;
    g.data_ = make_data(vertex_count, std::move(edges), std::move(rotations), allow_multi);
    g.cache_ = std::make_shared<detail::GraphCache>();
    return g;
}

int EmbeddedGraph::vertex_count() const { return req(data_).n; }
int EmbeddedGraph::edge_count() const { return static_cast<int>(req(data_).edges.size()); }
const EdgeRec& EmbeddedGraph::edge(Edge e) const { return req(data_).edges.at(e); }
const std::vector<EdgeRec>& EmbeddedGraph::edges() const { return req(data_).edges; }

Vertex EmbeddedGraph::tail(Dart d) const {
    const EdgeRec& r = edge(dart_edge(d));
    return (d & 1) ? r.v : r.u;
}

Vertex EmbeddedGraph::head(Dart d) const {
    const EdgeRec& r = edge(dart_edge(d));
    return (d & 1) ? r.u : r.v;
}

const std::vector<Dart>& EmbeddedGraph::rotation(Vertex v) const { return req(data_).rot.at(v); }
int EmbeddedGraph::degree(Vertex v) const { return static_cast<int>(rotation(v).size()); }
int EmbeddedGraph::rotation_index(Dart d) const { return req(data_).rot_pos.at(d); }

Dart EmbeddedGraph::rotation_successor(Dart d) const {
    const auto& r = rotation(tail(d));
    int i = rotation_index(d);
    return r[(i + 1) % r.size()];
}

Dart EmbeddedGraph::rotation_predecessor(Dart d) const {
    const auto& r = rotation(tail(d));
    int i = rotation_index(d);
    return r[(i + r.size() - 1) % r.size()];
}

std::vector<Vertex> EmbeddedGraph::neighbors(Vertex v) const {
    std::vector<Vertex> out;
    out.reserve(degree(v));
    for (Dart d : rotation(v)) out.push_back(head(d));
    return out;
}

bool EmbeddedGraph::adjacent(Vertex u, Vertex v) const { return find_edge(u, v).has_value(); }

std::optional<Edge> EmbeddedGraph::find_edge(Vertex u, Vertex v) const {
    if (u == v) return std::nullopt;
    const auto& adj = req(data_).adj;
    auto key = detail::GraphData::pack(u, v);
    auto it = std::lower_bound(adj.begin(), adj.end(), std::make_pair(key, Edge{0}));
    if (it == adj.end() || it->first != key) return std::nullopt;
    return it->second;
}

std::optional<Dart> EmbeddedGraph::find_dart(Vertex u, Vertex v) const {
    auto e = find_edge(u, v);
    if (!e) return std::nullopt;
    return edge(*e).u == u ? 2 * *e : 2 * *e + 1;
}

bool EmbeddedGraph::multi_allowed() const { return req(data_).multi_ok; }

bool EmbeddedGraph::is_simple() const {
    const auto& adj = req(data_).adj;
    for (size_t i = 1; i < adj.size(); ++i)
        if (adj[i - 1].first == adj[i].first) return false;
    return true;
}

bool EmbeddedGraph::connected() const {
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    if (!c.connected) {
        if (vertex_count() == 0) {
            c.connected = true;
        } else {
            std::vector<char> seen(vertex_count(), 0);
            std::vector<Vertex> stack{0};
            seen[0] = 1;
            int found = 1;
            while (!stack.empty()) {
                Vertex v = stack.back();
                stack.pop_back();
                for (Dart d : rotation(v)) {
                    Vertex w = head(d);
                    if (!seen[w]) {
                        seen[w] = 1;
                        ++found;
                        stack.push_back(w);
                    }
                }
            }
            c.connected = (found == vertex_count());
        }
    }
    return *c.connected;
}

std::vector<std::vector<Vertex>> EmbeddedGraph::components() const {
    std::vector<int> comp(vertex_count(), -1);
    std::vector<std::vector<Vertex>> out;
    for (Vertex s = 0; s < vertex_count(); ++s) {
        if (comp[s] != -1) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<Vertex> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (Dart d : rotation(v)) {
                Vertex w = head(d);
                if (comp[w] == -1) {
                    comp[w] = id;
                    stack.push_back(w);
                }
            }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

detail::GraphCache& EmbeddedGraph::cache() const {
    SURF_CHECK(cache_ != nullptr, "use of empty EmbeddedGraph");
    return *cache_;
}

// ── Face tracing ──
//
// States are (dart, flag) pairs, flag flipping on negative edges.  Arriving at
// w along d with resolved flag f2, the walk turns to the rotation successor of
// twin(d) when f2 == 0 and to the predecessor otherwise, consuming one corner
// of w.  Each corner is consumed by exactly two states; the two orbits through
// a corner are reversals of each other and together form one face.
namespace {

void trace_all_faces(const EmbeddedGraph& g, detail::GraphCache& c) {
    const int n = g.vertex_count();
    const int m = g.edge_count();

    c.corner_off.assign(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) c.corner_off[v + 1] = c.corner_off[v] + g.degree(v);
    const int total_corners = c.corner_off[n];
    SURF_CHECK(total_corners == 2 * m, "corner count mismatch");

    const int num_states = 4 * m;
    std::vector<int> orbit_of(num_states, -1);
    std::vector<std::vector<Dart>> orbit_darts;
    std::vector<std::vector<int>> orbit_corners;

    for (int s0 = 0; s0 < num_states; ++s0) {
        if (orbit_of[s0] != -1) continue;
        const int id = static_cast<int>(orbit_darts.size());
        orbit_darts.emplace_back();
        orbit_corners.emplace_back();
        int s = s0;
        do {
            orbit_of[s] = id;
            Dart d = s >> 1;
            int f = s & 1;
            orbit_darts[id].push_back(d);
            int f2 = f ^ (g.edge(dart_edge(d)).sign < 0 ? 1 : 0);
            Dart t = twin(d);
            Vertex w = g.tail(t);
            int deg = g.degree(w);
            int pos = g.rotation_index(t);
            Dart nd;
            int corner;
            if (f2 == 0) {
                nd = g.rotation(w)[(pos + 1) % deg];
                corner = pos;
            } else {
                nd = g.rotation(w)[(pos + deg - 1) % deg];
                corner = (pos + deg - 1) % deg;
            }
            orbit_corners[id].push_back(c.corner_off[w] + corner);
            s = 2 * nd + f2;
        } while (s != s0);
    }

    // Pair mirror orbits through shared corners.
    const int num_orbits = static_cast<int>(orbit_darts.size());
    std::vector<std::pair<int, int>> corner_hits(total_corners, {-1, -1});
    for (int o = 0; o < num_orbits; ++o) {
        for (int corner : orbit_corners[o]) {
            auto& hit = corner_hits[corner];
            if (hit.first == -1) hit.first = o;
            else if (hit.second == -1) hit.second = o;
            else SURF_CHECK(false, "corner consumed more than twice");
        }
    }
    std::vector<int> partner(num_orbits, -1);
    for (int corner = 0; corner < total_corners; ++corner) {
        auto [a, b] = corner_hits[corner];
        SURF_CHECK(a != -1 && b != -1, "corner not consumed twice");
        SURF_CHECK(a != b, "face walk is its own reversal");
        if (partner[a] == -1) partner[a] = b;
        if (partner[b] == -1) partner[b] = a;
        SURF_CHECK(partner[a] == b && partner[b] == a, "inconsistent face pairing");
    }

    // One face per pair, numbered by the smaller orbit id; its dart walk is
    // the smaller orbit's, rooted at the minimal dart for stable output.
    std::vector<int> face_of_orbit(num_orbits, -1);
    c.faces.clear();
    c.edge_faces.assign(m, {-1, -1});
    for (int o = 0; o < num_orbits; ++o) {
        if (face_of_orbit[o] != -1) continue;
        int p = partner[o];
        SURF_CHECK(p > o && face_of_orbit[p] == -1, "face pairing out of order");
        int f = static_cast<int>(c.faces.size());
        face_of_orbit[o] = face_of_orbit[p] = f;
        std::vector<Dart> walk = orbit_darts[o];
        auto mn = std::min_element(walk.begin(), walk.end());
        std::rotate(walk.begin(), mn, walk.end());
        c.faces.push_back(FaceWalk{std::move(walk)});
    }
    SURF_CHECK(num_orbits % 2 == 0, "odd orbit count");

    c.corner_face.assign(total_corners, -1);
    for (int o = 0; o < num_orbits; ++o)
        for (int corner : orbit_corners[o]) c.corner_face[corner] = face_of_orbit[o];
    for (Edge e = 0; e < m; ++e)
        c.edge_faces[e] = {face_of_orbit[orbit_of[4 * e]], face_of_orbit[orbit_of[4 * e + 1]]};

    long long dart_occurrences = 0;
    for (const FaceWalk& fw : c.faces) dart_occurrences += fw.size();
    SURF_CHECK(dart_occurrences == 2LL * m, "face walks must cover each edge twice");

    c.faces_done = true;
}

detail::GraphCache& faces_cache(const EmbeddedGraph& g) {
    auto& c = g.cache();
    std::lock_guard<std::mutex> lock(c.mu);
    if (!c.faces_done) trace_all_faces(g, c);
    return c;
}

}  // namespace

std::pair<Dart, int> detail::face_step(const EmbeddedGraph& g, Dart d, int f) {
    int f2 = f ^ (g.edge(dart_edge(d)).sign < 0 ? 1 : 0);
    Dart t = twin(d);
    Vertex w = g.tail(t);
    int deg = g.degree(w);
    int pos = g.rotation_index(t);
    Dart nd = (f2 == 0) ? g.rotation(w)[(pos + 1) % deg]
                        : g.rotation(w)[(pos + deg - 1) % deg];
    return {nd, f2};
}

int EmbeddedGraph::face_count() const { return static_cast<int>(faces_cache(*this).faces.size()); }

const std::vector<FaceWalk>& EmbeddedGraph::faces() const { return faces_cache(*this).faces; }

int EmbeddedGraph::face_at_corner(Vertex v, int corner_index) const {
    auto& c = faces_cache(*this);
    SURF_CHECK(corner_index >= 0 && corner_index < degree(v), "corner index out of range");
    return c.corner_face[c.corner_off[v] + corner_index];
}

std::pair<int, int> EmbeddedGraph::faces_of_edge(Edge e) const {
    auto& c = faces_cache(*this);
    return c.edge_faces.at(e);
}

SurfaceInfo EmbeddedGraph::surface() const {
    SURF_REQUIRE(vertex_count() > 0, "surface of empty graph");
    SURF_REQUIRE(connected(), "surface of disconnected graph");

    SurfaceInfo info;
    info.vertices = vertex_count();
    info.edges = edge_count();
    info.faces = face_count();
    info.euler_characteristic = info.vertices - info.edges + info.faces;
    info.euler_genus = 2 - info.euler_characteristic;
    SURF_CHECK(info.euler_genus >= 0, "negative Euler genus");

    // Orientable iff every cycle has positive sign product: propagate vertex
    // signs over a spanning tree and test the co-tree edges.
    std::vector<int> p(vertex_count(), 0);
    std::vector<Vertex> queue{0};
    p[0] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        Vertex v = queue[qi];
        for (Dart d : rotation(v)) {
            Vertex w = head(d);
            if (p[w] == 0) {
                p[w] = p[v] * edge(dart_edge(d)).sign;
                queue.push_back(w);
            }
        }
    }
    info.orientable = true;
    for (const EdgeRec& r : edges()) {
        if (p[r.u] * r.sign != p[r.v]) {
            info.orientable = false;
            break;
        }
    }
    if (info.orientable)
        SURF_CHECK(info.euler_genus % 2 == 0, "orientable surface with odd Euler genus");
    return info;
}

bool EmbeddedGraph::operator==(const EmbeddedGraph& other) const {
    if (data_ == other.data_) return true;
    if (!data_ || !other.data_) return false;
    return data_->n == other.data_->n && data_->edges == other.data_->edges &&
           data_->rot == other.data_->rot && data_->multi_ok == other.data_->multi_ok;
}

// ── Text format ──

namespace {

int parse_int(std::string_view tok, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw parse_error(std::string("bad ") + what + ": '" + std::string(tok) + "'");
    return value;
}

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> toks;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size() || line[i] == '#') break;
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

}  // namespace

EmbeddedGraph parse_embedding(std::string_view text, bool allow_multi) {
    int n = -1, m = -1;
    std::vector<EdgeRec> edges;
    std::vector<char> edge_seen;
    std::vector<std::vector<Dart>> rotations;
    std::vector<char> rot_seen;

    size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) {
            if (pos > text.size()) break;
            continue;
        }
        auto fail = [&](const std::string& msg) -> void {
            throw parse_error("line " + std::to_string(lineno) + ": " + msg);
        };
        if (toks[0] == "V") {
            if (n != -1) fail("duplicate V record");
            if (toks.size() != 2) fail("V takes one value");
            n = parse_int(toks[1], "vertex count");
            rotations.assign(n, {});
            rot_seen.assign(n, 0);
        } else if (toks[0] == "E") {
            if (n == -1) fail("E before V");
            if (m != -1) fail("duplicate E record");
            if (toks.size() != 2) fail("E takes one value");
            m = parse_int(toks[1], "edge count");
            edges.assign(m, {});
            edge_seen.assign(m, 0);
        } else if (toks[0] == "edge") {
            if (m == -1) fail("edge record before E");
            if (toks.size() != 5) fail("edge takes id, endpoints and sign");
            int id = parse_int(toks[1], "edge id");
            if (id < 0 || id >= m) fail("edge id out of range");
            if (edge_seen[id]) fail("duplicate edge id");
            edge_seen[id] = 1;
            EdgeRec r;
            r.u = parse_int(toks[2], "endpoint");
            r.v = parse_int(toks[3], "endpoint");
            if (toks[4] == "+") r.sign = 1;
            else if (toks[4] == "-") r.sign = -1;
            else fail("sign must be + or -");
            edges[id] = r;
        } else if (toks[0] == "rot") {
            if (n == -1) fail("rot record before V");
            if (toks.size() < 2) fail("rot takes a vertex id");
            int v = parse_int(toks[1], "vertex id");
            if (v < 0 || v >= n) fail("rot vertex out of range");
            if (rot_seen[v]) fail("duplicate rot record");
            rot_seen[v] = 1;
            for (size_t i = 2; i < toks.size(); ++i)
                rotations[v].push_back(parse_int(toks[i], "dart id"));
        } else {
            fail("unknown record '" + std::string(toks[0]) + "'");
        }
        if (pos > text.size()) break;
    }

    if (n == -1) throw parse_error("missing V record");
    if (m == -1) throw parse_error("missing E record");
    for (int e = 0; e < m; ++e)
        if (!edge_seen[e]) throw parse_error("missing edge record " + std::to_string(e));
    for (int v = 0; v < n; ++v)
        if (!rot_seen[v]) throw parse_error("missing rot record " + std::to_string(v));
    return EmbeddedGraph::from_parts(n, std::move(edges), std::move(rotations), allow_multi);
}

EmbeddedGraph parse_embedding(std::istream& in, bool allow_multi) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_embedding(std::string_view{buf.view()}, allow_multi);
}

std::string serialize(const EmbeddedGraph& g) {
    std::string out;
    out += "V " + std::to_string(g.vertex_count()) + "\n";
    out += "E " + std::to_string(g.edge_count()) + "\n";
    for (Edge e = 0; e < g.edge_count(); ++e) {
        const EdgeRec& r = g.edge(e);
        out += "edge " + std::to_string(e) + " " + std::to_string(r.u) + " " + std::to_string(r.v) +
               (r.sign > 0 ? " +\n" : " -\n");
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        out += "rot " + std::to_string(v);
        for (Dart d : g.rotation(v)) out += " " + std::to_string(d);
        out += "\n";
    }
    return out;
}

bool is_triangulation(const EmbeddedGraph& g) {
    if (g.vertex_count() == 0 || !g.connected() || !g.is_simple()) return false;
    for (const FaceWalk& f : g.faces())
        if (f.size() != 3) return false;
    return true;
}

LayerSet neighborhood_layers(const EmbeddedGraph& g, const std::vector<Vertex>& seeds, int max_depth) {
    LayerSet out;
    out.depth.assign(g.vertex_count(), -1);
    std::vector<Vertex> cur;
    for (Vertex s : seeds) {
        SURF_CHECK(s >= 0 && s < g.vertex_count(), "layer seed out of range");
        if (out.depth[s] != 0) {
            out.depth[s] = 0;
            cur.push_back(s);
        }
    }
    std::sort(cur.begin(), cur.end());
    int depth = 0;
    while (!cur.empty()) {
        out.layers.push_back(cur);
        if (max_depth >= 0 && depth == max_depth) break;
        std::vector<Vertex> next;
        for (Vertex v : cur) {
            for (Dart d : g.rotation(v)) {
                Vertex w = g.head(d);
                if (out.depth[w] == -1) {
                    out.depth[w] = depth + 1;
                    next.push_back(w);
                }
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
        ++depth;
    }
    return out;
}

InducedSubgraph induced_subgraph(const EmbeddedGraph& g, std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    InducedSubgraph out;
    out.from_parent.assign(g.vertex_count(), -1);
    for (Vertex v : vertices) {
        SURF_CHECK(v >= 0 && v < g.vertex_count(), "induced vertex out of range");
        out.from_parent[v] = static_cast<int>(out.to_parent.size());
        out.to_parent.push_back(v);
    }
    const int n = static_cast<int>(out.to_parent.size());

    std::vector<EdgeRec> edges;
    std::vector<Edge> edge_map(g.edge_count(), -1);
    for (Edge e = 0; e < g.edge_count(); ++e) {
        const EdgeRec& r = g.edge(e);
        if (out.from_parent[r.u] != -1 && out.from_parent[r.v] != -1) {
            edge_map[e] = static_cast<Edge>(edges.size());
            edges.push_back(EdgeRec{out.from_parent[r.u], out.from_parent[r.v], r.sign});
        }
    }
    std::vector<std::vector<Dart>> rotations(n);
    for (int i = 0; i < n; ++i) {
        for (Dart d : g.rotation(out.to_parent[i])) {
            Edge e = edge_map[dart_edge(d)];
            if (e != -1) rotations[i].push_back(2 * e + (d & 1));
        }
    }
    out.graph = EmbeddedGraph::from_parts(n, std::move(edges), std::move(rotations), g.multi_allowed());
    return out;
}

}  // namespace surf
