#ifndef SURF_TOOLKIT_HPP
#define SURF_TOOLKIT_HPP

#include <cstdint>
#include <vector>

#include "surf/embedding.hpp"

namespace surf {

// Triangulated m x n torus grid (m, n >= 3).  Vertex (i, j) has id i*n + j;
// neighbors east, southeast, south, west, northwest, north, all edges
// positive.  Genus 2 (orientable), 2mn faces, edge-width min(m, n).
EmbeddedGraph gen_torus_grid(int m, int n);

// Triangulated m x n Klein-bottle grid (m, n >= 3).  Columns wrap by pure
// vertical translation; rows wrap through a reflecting seam, so the seam
// column carries negative edges and northeast-going seam diagonals.  Genus 2
// (nonorientable), 6-regular, 2mn faces.
EmbeddedGraph gen_klein_grid(int m, int n);

// Triangulated projective plane (n >= 3): an n x n Moebius grid (reflecting
// seam, no vertical wrap) whose single boundary cycle of length 2n is capped
// by an apex vertex with id n*n.  Genus 1, edge-width n.
EmbeddedGraph gen_projective_grid(int n);

struct ZigzagInstance {
    EmbeddedGraph graph;       // Klein grid, (n+1) x (n+1)
    std::vector<Vertex> core;  // one-sided noncontractible chordless cycle, length n+1
};

// Klein grid with a distinguished odd one-sided cycle alternating east and
// southeast steps, so the free darts on each side alternate 1, 3 around it.
// Requires n even, n >= 8.
ZigzagInstance gen_zigzag_klein(int n);

// Random sphere triangulation: a triangle stellarly subdivided until it has
// `vertex_target` vertices (>= 3).  Deterministic in `seed`.
EmbeddedGraph gen_stacked_disk(int vertex_target, std::uint64_t seed);

// Connected sum: remove face_a of `a` and face_b of `b` (both triangles, both
// graphs all-positive triangulations) and join the boundaries by a six-edge
// antiprism band.  Vertices of `b` are shifted by a.vertex_count().  The two
// old face boundaries survive as separating 3-cycles whose removal cuts the
// graph.  Euler genus adds.
EmbeddedGraph connect_sum(const EmbeddedGraph& a, const EmbeddedGraph& b, int face_a, int face_b);

}  // namespace surf

#endif
