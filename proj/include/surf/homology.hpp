#ifndef SURF_HOMOLOGY_HPP
#define SURF_HOMOLOGY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "surf/embedding.hpp"

namespace surf {

// First Z2 homology of the surface carried by a connected embedded graph.
//
// Every edge gets a 64-bit label such that the labels of each face walk XOR
// to zero.  The XOR of labels along a closed walk is then a homology class:
// zero for contractible cycles, and more generally zero exactly for
// null-homologous (separating) ones.  A nonzero class certifies that a walk
// is noncontractible; the converse does not hold.

// dim H1(Sigma; Z2).  Equals the Euler genus of the surface.
// Throws resource_limit_error if the genus exceeds 64.
int h1_dimension(const EmbeddedGraph& g);

// Per-edge labels, indexed by edge id.  Spanning tree edges are 0.
// Computed once per graph value and cached.
const std::vector<std::uint64_t>& edge_labels(const EmbeddedGraph& g);

// Homology class of a closed dart walk (each dart's edge XORed in).
std::uint64_t walk_label(const EmbeddedGraph& g, std::span<const Dart> walk);

// Homology class of a closed vertex cycle.  Uses the first edge between
// consecutive vertices, so only meaningful on simple graphs.
std::uint64_t cycle_label(const EmbeddedGraph& g, std::span<const Vertex> cycle);

}  // namespace surf

#endif
