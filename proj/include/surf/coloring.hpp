#ifndef SURF_COLORING_HPP
#define SURF_COLORING_HPP

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "surf/embedding.hpp"
#include "surf/surgery.hpp"
#include "surf/topology.hpp"

namespace surf {

// Total assignment vertex -> color in {1..5}.
struct Coloring {
    std::vector<int> assignment;

    std::set<int> palette_used() const;
};

// Assignment with an explicit domain: 0 means uncolored.
struct PartialColoring {
    std::vector<int> assignment;

    bool colored(Vertex v) const { return assignment[v] != 0; }
};

struct ColoringCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

// Default node budget for the exact four-coloring search.
inline constexpr long long kFourColorNodeCap = 40'000'000;

// Exact proper 4-coloring of a planar graph, multi-edges collapsed first.
// Complete backtracking with saturation-degree ordering, forward checking and
// per-component splitting; deterministic.  Exceeding node_cap throws
// resource_limit_error (the answer is then unknown; 5 colors are never
// substituted silently).  Non-planar input is refused.
Coloring four_color(const EmbeddedGraph& gp, long long node_cap = kFourColorNodeCap);

// As above but extending a precoloring.  Returns nullopt when the exhaustive
// search proves the precoloring inextensible; callers then permute a free
// coloring instead of constraining the search.
std::optional<Coloring> four_color(const EmbeddedGraph& gp, const PartialColoring& precolored,
                                   long long node_cap = kFourColorNodeCap);

// Swaps colors a and b on the {a,b}-colored component containing v.  The
// coloring must be proper and v must wear a or b.  Properness is preserved;
// applying the change twice restores the input.
Coloring kempe_change(const EmbeddedGraph& gp, const Coloring& coloring, Vertex v, int a, int b);

// Extends `coloring` over the vertices of a nice cycle using {base_color, 5}:
// even cycles alternate, odd cycles leave a degree-<=4 vertex for last and
// give it whatever color its neighbors have left free.  Local properness
// against already-colored neighbors is asserted.
PartialColoring lift_cycle_coloring(const EmbeddedGraph& g, const CycleOnSurface& nice_cycle,
                                    int base_color, PartialColoring coloring);

// Colors the closed disk a flattened 3-cycle was cut from: a free exact
// 4-coloring of the disk is permuted onto the boundary triple.  Returns an
// assignment over g's vertex ids covering boundary plus interior.
// boundary_colors[k] belongs to region.boundary[k] and the three colors must
// be distinct.
PartialColoring patch_triangle(const EmbeddedGraph& g, const PatchRegion& region,
                               const std::array<int, 3>& boundary_colors);

// Colors the disk a flattened 4-cycle u,v,x,y was cut from.  After
// normalizing c(u)=1, c(v)=2 by a color permutation the boundary pattern
// falls into two shapes: c(x)=1 identifies u with x in the outer face,
// c(x)=3 adds the edge ux there; the interior is then 4-colored with the
// palette {1,3,4,5}, {1,2,4,5} or {1,2,3,5} forced by c(y), and the solved
// colors are mapped back through the permutation.  Any other pattern on a
// proper boundary is impossible and raises internal_error.
PartialColoring patch_quad(const EmbeddedGraph& g, const PatchRegion& region,
                           const std::array<int, 4>& boundary_colors);

// Five-colors a triangulation of positive Euler genus end to end: planarizing
// set, flattened collars, nice replacement cycles, apex split to a planar
// G_0, exact 4-coloring, Kempe alignment of the apex pairs, lift through the
// provenance maps and patching of the flattened disks.  The result is checked
// proper on the untouched input graph; an improper coloring is a hard error,
// never returned.  Stage failures throw hypothesis_error tagged "stage (k)".
// force skips the width bound gate of the planarizing search.
Coloring five_color(const EmbeddedGraph& g, int d = 14, bool force = false,
                    long long node_cap = kFourColorNodeCap);

// Checks totality, palette containment in {1..max_colors} and properness.
// Every violating vertex or edge is listed.
ColoringCheck verify_coloring(const EmbeddedGraph& g, const Coloring& coloring, int max_colors);

}  // namespace surf

#endif
