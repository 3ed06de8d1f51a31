#ifndef SURF_SURGERY_HPP
#define SURF_SURGERY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surf/embedding.hpp"
#include "surf/topology.hpp"

namespace surf {

enum class SplitKind { one_sided, two_sided_nonseparating, two_sided_separating };

// Result of a surgery.  provenance[v] is the source vertex a result vertex
// came from (copies map to the original); apex vertices map to -1 and appear
// in `apexes` under their given names.  When a cut separates, the result
// holds both components, ordered by descending Euler genus then by smallest
// source vertex id.
struct SurgeryOutcome {
    EmbeddedGraph result;
    std::vector<std::pair<std::string, Vertex>> apexes;
    std::vector<Vertex> provenance;
    std::optional<SplitKind> split_kind;

    Vertex apex(const std::string& name) const;
};

// A region removed by flatten_small_cycles, in source-graph vertex ids.
struct PatchRegion {
    std::vector<Vertex> boundary;  // 3- or 4-cycle
    std::vector<Vertex> interior;  // deleted interior, nonempty
};

struct FlattenOutcome {
    SurgeryOutcome outcome;
    std::vector<PatchRegion> regions;  // maximal regions, for later patching
};

// Cuts a triangulation along a chordless noncontractible cycle and caps the
// resulting boundary with apex disks.  Two-sided C: the right copies become
// new vertices capped by apex "x'", the left copies keep their ids and are
// capped by apex "x".  One-sided C: the cycle doubles into one boundary
// circle of 2|C| vertices capped by a single apex "x'"; the traversal is
// re-rooted at the smallest cycle vertex for determinism.
// Euler genus drops by 1 (one-sided), 2 (two-sided nonseparating), or splits
// into components whose genera sum to the original.  The result is again a
// simple triangulation, and each component's width is at least half the
// source width (asserted).
SurgeryOutcome cut_along(const EmbeddedGraph& g, const CycleOnSurface& c);

// Deletes the interior of a contractible chordless cycle D and sews in an
// apex adjacent to all of D in cyclic order.  D must not be facial: a 3-cycle
// with empty interior would cap to a parallel triangle, which is rejected.
SurgeryOutcome excise_to_apex(const EmbeddedGraph& g, const CycleOnSurface& d,
                              const std::string& apex_name);

// Replaces each cycle by apex vertices: a two-sided cycle C_i by x_i adjacent
// to L(C_i) and y_i adjacent to R(C_i) (attachments in cyclic order along the
// removed cycle), a one-sided cycle by a single x_i adjacent to N(C_i).
// Cycles must be pairwise at distance >= 2, chordless, noncontractible.
// Multi-edges may appear; the result is asserted to have genus 0 everywhere.
SurgeryOutcome split_planarize(const EmbeddedGraph& g,
                               const std::vector<CycleOnSurface>& cycles);

// Inside each collar, deletes the interior of every contractible 3-cycle and
// replaces the interior of every contractible 4-cycle having at least two
// interior vertices by one new vertex adjacent to the boundary (apexes named
// "q0", "q1", ...).  Innermost regions are processed first; the recorded
// regions are maximal and carry interiors measured in the source graph.
// A 4-cycle with exactly one interior vertex is kept verbatim.
FlattenOutcome flatten_small_cycles(const EmbeddedGraph& g,
                                    const std::vector<std::vector<Vertex>>& collars);

namespace detail {

// Cut without caps.  Boundary circles remain as non-triangular faces; each
// original face survives, so per-component Euler genus already equals the
// capped genus.  Left copies keep their source ids, right copies are new.
struct CutResult {
    EmbeddedGraph graph;
    std::vector<Vertex> to_source;
    std::vector<std::vector<Vertex>> circles;  // new-id vertex cycles
    bool two_sided = false;
};

CutResult cut_scheme(const EmbeddedGraph& g, const CycleOnSurface& c);

// Stellar subdivision of one face: a new apex joined to every visit of the
// face walk.  Valid on faces of any length, any edge signs.
struct SubdivideResult {
    EmbeddedGraph graph;
    Vertex apex;
};

SubdivideResult subdivide_face(const EmbeddedGraph& g, int face);

// Contracts the closed star of an apex (the apex, its neighbor circle, and
// all edges among them) to a single vertex, dropping the loops this creates.
// Euler characteristic is preserved.  Ids are compacted.
struct ContractResult {
    EmbeddedGraph graph;
    std::vector<Vertex> to_source;
    Vertex merged;  // image of the apex
};

ContractResult contract_star(const EmbeddedGraph& g, Vertex apex);

}  // namespace detail

}  // namespace surf

#endif
