#ifndef SURF_NICECYCLE_HPP
#define SURF_NICECYCLE_HPP

#include <string>
#include <vector>

#include "surf/topology.hpp"

namespace surf {

// A length-6 replacement path for a cycle arc.  path runs v_1..v_7 with
// v_1 = vertices[i] and v_7 = vertices[j]; the arc i -> j (forward) together
// with the path bounds a disk, so resulting_cycle is homotopic to the input.
// d_arc is the retained arc j -> i inclusive of both endpoints.
struct Shortcut {
    int i = 0;
    int j = 0;
    std::vector<Vertex> path;
    CycleOnSurface resulting_cycle;
    std::vector<Vertex> d_arc;
};

// The subgraph induced by all vertices within `radius` of the base cycle,
// kept as exact-distance layers.
struct CollarSubgraph {
    CycleOnSurface base_cycle;
    int radius = 4;
    std::vector<std::vector<Vertex>> layers;  // layers[r]: distance exactly r
    std::vector<Vertex> vertices;             // union of the layers, sorted
    bool orderly = false;
};

CollarSubgraph collar(const EmbeddedGraph& g, const CycleOnSurface& c, int radius = 4);

// Even length, or some cycle vertex has degree at most 4 in g.
bool is_nice(const EmbeddedGraph& g, const CycleOnSurface& c);

// Among all simple length-6 paths joining two cycle vertices such that the
// path and the bypassed arc bound a disk, the one whose resulting cycle is
// shortest; ties by (i, j, lexicographic path).  Keeping the cycle unchanged
// (the path running along the cycle itself) is always a legal outcome, so
// the result never lengthens the cycle.  Requires |C| > 6, C chordless and
// noncontractible with ncdist(C) >= 12.  When the resulting cycle differs
// from C it is asserted chordless with ncdist >= 8.
Shortcut optimal_six_shortcut(const EmbeddedGraph& g, const CycleOnSurface& c);

// Outcome of nice_cycle with the branch of the degree analysis that produced
// it, for reporting.
struct NiceCycleResult {
    CycleOnSurface cycle;
    std::string case_taken;
};

// Replaces a planarizing cycle by a homotopic chordless nice cycle within
// distance 4, via an optimal 6-shortcut and a case analysis on the side
// degrees of the shortcut's interior.  Requires d >= 2, an orderly radius-4
// collar and ncdist(C) >= 4(d+1).  The result is asserted nice, chordless,
// inside the collar, homotopic to C, and ncdist(result) >= 4d - 2; any
// failed assertion throws hypothesis_error naming the offending cycle.
// When C is already nice it is returned unchanged.
NiceCycleResult nice_cycle(const EmbeddedGraph& g, const CycleOnSurface& c, int d);

}  // namespace surf

#endif
