#ifndef SURF_TOPOLOGY_HPP
#define SURF_TOPOLOGY_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surf/embedding.hpp"

namespace surf {

enum class Sidedness { one_sided, two_sided };

// A simple cycle together with its dart traversal.  darts[i] runs from
// vertices[i] to vertices[(i+1) % length]; vertices are pairwise distinct.
// Sidedness is the product of edge signatures: -1 means one-sided.
struct CycleOnSurface {
    std::vector<Dart> darts;
    std::vector<Vertex> vertices;
    Sidedness sidedness = Sidedness::two_sided;

    int length() const { return static_cast<int>(darts.size()); }
};

// Builds a CycleOnSurface from a vertex sequence (first edge between
// consecutive vertices) or from an explicit dart walk.  Validates that the
// walk is closed and the vertices are distinct.
CycleOnSurface make_cycle(const EmbeddedGraph& g, std::span<const Vertex> vertices);
CycleOnSurface make_cycle_darts(const EmbeddedGraph& g, std::span<const Dart> darts);

// Same cycle walked backwards.
CycleOnSurface reverse_cycle(const EmbeddedGraph& g, const CycleOnSurface& c);

// Deterministic traversal: rooted at the smallest vertex, direction chosen by
// the lexicographically smaller vertex sequence.
CycleOnSurface canonical_traversal(const EmbeddedGraph& g, const CycleOnSurface& c);

// Canonical form of a vertex cycle: rotated to start at the smallest vertex,
// direction chosen to make the sequence lexicographically smaller.  Equal
// cycles compare equal regardless of starting point or direction.
std::vector<Vertex> canonical_cycle_key(std::span<const Vertex> cycle);

// True if some edge of g joins two non-consecutive cycle vertices.
bool has_chord(const EmbeddedGraph& g, const CycleOnSurface& c);

Sidedness cycle_sidedness(const EmbeddedGraph& g, const CycleOnSurface& c);

// True iff C bounds a disk: C is two-sided, separating, and one side capped
// with a disk has Euler genus 0.  Decided by cutting along C and inspecting
// the pieces; results are memoized per graph value.
bool is_contractible(const EmbeddedGraph& g, const CycleOnSurface& c);

// Vertex set of the disk side of a contractible cycle, including C itself.
// When both sides are disks the side with fewer vertices wins, ties to the
// side containing the smaller vertex id.
std::vector<Vertex> disk_interior(const EmbeddedGraph& g, const CycleOnSurface& c);

// Shortest noncontractible cycle and its length.  Ties are broken by the
// lexicographically smallest canonical vertex sequence among the candidate
// cycles examined.  The result is asserted chordless.
// Throws hypothesis_error("no noncontractible cycle") on genus 0.
CycleOnSurface shortest_noncontractible_cycle(const EmbeddedGraph& g);
int width(const EmbeddedGraph& g);

// Right/left structure along a traversal.  right/left are the depth-1
// neighbor sets R(.) and L(.); layer i of right_layers holds R^{i+1}, the
// vertices at distance i+1 reachable by a shortest path whose first edge
// leaves on the right.  A vertex may appear on both sides.
struct SidePartition {
    std::vector<Vertex> right;
    std::vector<Vertex> left;
    std::vector<std::vector<Vertex>> right_layers;
    std::vector<std::vector<Vertex>> left_layers;
};

SidePartition side_partition(const EmbeddedGraph& g, const CycleOnSurface& c, int depth);

// Same, relative to the subpath of c starting at position i with m edges.
// Sides are seeded only at the subpath's interior vertices.  On a one-sided
// cycle m must not exceed length/2.
SidePartition side_partition(const EmbeddedGraph& g, const CycleOnSurface& c, int i, int m,
                             int depth);

// Number of right (left) darts at cycle vertex x, w.r.t. c's traversal.
int right_degree(const EmbeddedGraph& g, const CycleOnSurface& c, Vertex x);
int left_degree(const EmbeddedGraph& g, const CycleOnSurface& c, Vertex x);

enum class DistanceKind { ctdist, ncdist };

struct DistanceReport {
    DistanceKind kind = DistanceKind::ncdist;
    std::optional<int> value;  // nullopt: no qualifying path exists
    // Open witnesses list value+1 vertices from endpoint to endpoint; closed
    // ones (x = y) list each vertex once, so exactly value entries.
    std::vector<Vertex> witness;

    bool infinite() const { return !value.has_value(); }
};

// Shortest path P, internally vertex-disjoint from C, from x in C to y in C
// such that: x = y and P is a noncontractible cycle, or x != y and both P
// joined with either arc of C are noncontractible.  C must be chordless and
// noncontractible.
DistanceReport ncdist(const EmbeddedGraph& g, const CycleOnSurface& c);

// Shortest path starting with a right edge and ending with a left edge (or
// vice versa), internally disjoint from C.  C must be two-sided, chordless,
// noncontractible.
DistanceReport ctdist(const EmbeddedGraph& g, const CycleOnSurface& c);

// The unique chordless contractible cycle at distance exactly k around x:
// boundary of the face-connected component, around x, of faces whose corners
// all lie within distance k.  Requires a triangulation of positive genus
// with width >= 2k + 2.  All defining properties are verified and a
// hypothesis_error is thrown if any fails.  The result is canonically rooted
// and therefore independent of rotation starting points.
CycleOnSurface canonical_cycle(const EmbeddedGraph& g, Vertex x, int k);

// True iff the cycle formed by the arc of c from position i to position j
// (forward direction) followed by the reverse of path m is contractible.
// m joins vertices[i] to vertices[j] and its interior avoids that arc.
bool bigon_homotopic(const EmbeddedGraph& g, const CycleOnSurface& c, int i, int j,
                     std::span<const Vertex> m);

namespace detail {

// Contractibility of a closed vertex walk that may repeat vertices: cyclic
// spur reduction, then a cut test when simple, otherwise split at a repeated
// vertex.  Throws hypothesis_error when a split leaves the answer undecided.
bool walk_contractible(const EmbeddedGraph& g, std::vector<Vertex> walk);

}  // namespace detail

}  // namespace surf

#endif
