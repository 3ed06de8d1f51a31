#ifndef SURF_KERNELS_HPP
#define SURF_KERNELS_HPP

#include "surf/embedding.hpp"
#include "surf/topology.hpp"

namespace surf {

// Execution strategy for the search kernels.  `parallel` distributes work
// over OpenMP threads when compiled in and falls back to the serial path
// otherwise.  Both strategies return bit-identical results: candidates are
// merged with a deterministic (length, canonical key) minimum, never in
// arrival order.
enum class Exec { serial, parallel };

struct WidthSearchResult {
    int width = 0;
    CycleOnSurface cycle;
};

// Shortest noncontractible cycle by breadth-first search from every root.
// Fundamental cycles of non-tree edges are screened by their Z2 homology
// class; class-zero survivors shorter than the best screened candidate are
// settled exactly by cut-and-cap, in (length, key) order.  Requires a
// connected graph of positive Euler genus.
WidthSearchResult width_search(const EmbeddedGraph& g, Exec mode);

// Distance kernel behind ncdist(); see topology.hpp for the contract.
// Runs one homology-labelled breadth-first search per cycle vertex; the
// parallel strategy distributes the source vertices.
DistanceReport ncdist_search(const EmbeddedGraph& g, const CycleOnSurface& c, Exec mode);

}  // namespace surf

#endif
