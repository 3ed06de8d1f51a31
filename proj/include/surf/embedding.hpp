#ifndef SURF_EMBEDDING_HPP
#define SURF_EMBEDDING_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surf/errors.hpp"

namespace surf {

using Vertex = int;
using Edge   = int;

// Darts: edge e owns darts 2e (u -> v) and 2e+1 (v -> u).
using Dart = int;

inline Dart twin(Dart d) { return d ^ 1; }
inline Edge dart_edge(Dart d) { return d >> 1; }

struct EdgeRec {
    Vertex u = -1;
    Vertex v = -1;
    int sign = +1;  // +1 or -1

    friend bool operator==(const EdgeRec&, const EdgeRec&) = default;
};

// One face of the embedding.  `darts` is a closed walk; each edge of the face
// appears here via one dart per traversal.  The walk is rooted at its
// numerically smallest dart so equal graphs yield equal face lists.
struct FaceWalk {
    std::vector<Dart> darts;

    int size() const { return static_cast<int>(darts.size()); }
};

struct SurfaceInfo {
    int vertices = 0;
    int edges = 0;
    int faces = 0;
    int euler_characteristic = 0;
    int euler_genus = 0;  // 2 - characteristic; on orientable surfaces twice the handle count
    bool orientable = true;

    friend bool operator==(const SurfaceInfo&, const SurfaceInfo&) = default;
};

// Exact-distance BFS layers around a seed set.  layers[0] is the (sorted)
// seed set itself; depth[v] == -1 marks vertices that were not reached.
struct LayerSet {
    std::vector<int> depth;
    std::vector<std::vector<Vertex>> layers;

    int radius() const { return static_cast<int>(layers.size()) - 1; }
};

namespace detail {
struct GraphData;
struct GraphCache;
}  // namespace detail

class EmbeddedGraph;

namespace detail {
// One step of the face tracing automaton: from traveling dart d with side
// flag f (0 normal, 1 mirrored), returns the next dart and side.
std::pair<Dart, int> face_step(const EmbeddedGraph& g, Dart d, int f);
}  // namespace detail

// An embedded graph: a rotation system with edge signs.  Vertex ids are
// contiguous 0..n-1.  Instances are immutable values; every surgery produces
// a fresh graph plus a vertex provenance map back to its source.
class EmbeddedGraph {
public:
    EmbeddedGraph() = default;

    // `rotations[v]` lists the darts leaving v in cyclic order.  Every dart
    // must appear exactly once, in the rotation of its tail.  Parallel edges
    // are rejected unless `allow_multi`; loops are never allowed.
    static EmbeddedGraph from_parts(int vertex_count,
                                    std::vector<EdgeRec> edges,
                                    std::vector<std::vector<Dart>> rotations,
                                    bool allow_multi = false);

    int vertex_count() const;
    int edge_count() const;
    int dart_count() const { return 2 * edge_count(); }

    const EdgeRec& edge(Edge e) const;
    const std::vector<EdgeRec>& edges() const;
    Vertex tail(Dart d) const;
    Vertex head(Dart d) const;

    const std::vector<Dart>& rotation(Vertex v) const;
    int degree(Vertex v) const;
    // Index of d within rotation(tail(d)).
    int rotation_index(Dart d) const;
    Dart rotation_successor(Dart d) const;
    Dart rotation_predecessor(Dart d) const;

    // Neighbors in rotation order, one entry per incident edge.
    std::vector<Vertex> neighbors(Vertex v) const;
    bool adjacent(Vertex u, Vertex v) const;
    std::optional<Edge> find_edge(Vertex u, Vertex v) const;
    std::optional<Dart> find_dart(Vertex u, Vertex v) const;

    bool multi_allowed() const;
    bool is_simple() const;

    bool connected() const;
    std::vector<std::vector<Vertex>> components() const;

    // Face structure (lazily traced, cached).
    int face_count() const;
    const std::vector<FaceWalk>& faces() const;
    // Face at the corner between rotation(v)[i] and rotation(v)[i+1 mod deg].
    int face_at_corner(Vertex v, int corner_index) const;
    // The two faces on either side of e (equal if e meets one face twice).
    std::pair<int, int> faces_of_edge(Edge e) const;

    // Requires a connected, nonempty graph.
    SurfaceInfo surface() const;

    bool operator==(const EmbeddedGraph& other) const;

    // Shared lazy cache (faces, homology labels, width); see detail::GraphCache.
    detail::GraphCache& cache() const;

private:
    std::shared_ptr<const detail::GraphData> data_;
    mutable std::shared_ptr<detail::GraphCache> cache_;

    friend struct detail::GraphData;
};

// Text format, one record per line:
//   V <vertex_count>
//   E <edge_count>
//   edge <id> <u> <v> <+|->
//   rot <v> <dart> <dart> ...
// '#' starts a comment.  serialize() emits the records in exactly this order
// with single spaces, so serialize(parse(serialize(g))) == serialize(g).
EmbeddedGraph parse_embedding(std::string_view text, bool allow_multi = false);
EmbeddedGraph parse_embedding(std::istream& in, bool allow_multi = false);
std::string serialize(const EmbeddedGraph& g);

// Every face a triangle, graph simple and connected.
bool is_triangulation(const EmbeddedGraph& g);

// BFS from `seeds` out to max_depth (-1: exhaust the component).
LayerSet neighborhood_layers(const EmbeddedGraph& g,
                             const std::vector<Vertex>& seeds,
                             int max_depth = -1);

struct InducedSubgraph {
    EmbeddedGraph graph;
    std::vector<Vertex> to_parent;    // subgraph id -> parent id
    std::vector<int> from_parent;     // parent id -> subgraph id or -1
};

// Subgraph induced on `vertices` (deduplicated, sorted); rotations keep the
// surviving darts in their original cyclic order.
InducedSubgraph induced_subgraph(const EmbeddedGraph& g, std::vector<Vertex> vertices);

// True when within the region U every contractible 3-cycle bounds a face and
// every contractible 4-cycle bounds either two faces sharing an edge or the
// link of a degree-4 vertex.  Defined in topology.cpp (needs cycle tests).
bool is_orderly(const EmbeddedGraph& g, const std::vector<Vertex>& region);

}  // namespace surf

#endif
