#ifndef SURF_PLANARIZE_HPP
#define SURF_PLANARIZE_HPP

#include <string>
#include <utility>
#include <vector>

#include "surf/surgery.hpp"

namespace surf {

// Pairwise-far chordless noncontractible cycles whose vertex removal leaves
// a planar graph.  Certificates are recomputed in the host graph, never
// inherited from the intermediate graphs of the construction.
struct PlanarizingSet {
    std::vector<CycleOnSurface> cycles;
    int d = 1;
    int k = 0;
    std::vector<int> ncdist_values;               // per cycle
    std::vector<std::vector<int>> pairwise_dist;  // k x k, zero diagonal
};

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Planarity of an abstract simple graph, independent of any embedding.
bool edges_planar(int vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges);

// Planarity of g with the given vertices (and their edges) deleted.
bool remains_planar(const EmbeddedGraph& g, const std::vector<Vertex>& removed);

// Recursive construction: cut along the shortest noncontractible cycle,
// excise the capped disks back to rings, recurse on the reduced surface,
// and reroute any recursive cycle that leans on an excision apex.  The
// returned set carries freshly recomputed certificates; any certificate
// failure throws certification_error.  Below the width bound
// 8(d+1)(2^{g/2} - 1) (orientable) or 8(d+1)(2^g - 1) (nonorientable) the
// call is refused unless force is set.
PlanarizingSet planarizing_set(const EmbeddedGraph& g, int d, bool force);

// Replaces position `pos` of `cycle` (an excised-disk apex whose boundary
// ring is d_ring) by a shortest detour through consecutive vertices of
// e_ring, the ring one step inside d_ring.  The cycle neighbors of the apex
// must lie on d_ring; ties between shortest detours break lexicographically.
// The result is asserted chord-free at the splice.
std::vector<Vertex> reroute_through_ring(const EmbeddedGraph& g, std::vector<Vertex> cycle,
                                         std::size_t pos, const CycleOnSurface& d_ring,
                                         const CycleOnSurface& e_ring);

// Re-derives every certificate from scratch: chordlessness, pairwise
// distances >= ps.d, ncdist >= 4(ps.d + 1), planarity after removal, and
// the cycle-count bounds g/2 <= k <= g (k = g/2 exactly when orientable).
VerifyReport verify_planarizing(const EmbeddedGraph& g, const PlanarizingSet& ps);

}  // namespace surf

#endif
