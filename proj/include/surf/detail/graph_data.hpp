#ifndef SURF_DETAIL_GRAPH_DATA_HPP
#define SURF_DETAIL_GRAPH_DATA_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "surf/embedding.hpp"

namespace surf::detail {

struct GraphData {
    int n = 0;
    std::vector<EdgeRec> edges;
    std::vector<std::vector<Dart>> rot;
    bool multi_ok = false;

    // Derived at construction.
    std::vector<int> rot_pos;                         // dart -> index in rotation of its tail
    std::vector<std::pair<std::uint64_t, Edge>> adj;  // (packed endpoint pair, edge), sorted

    static std::uint64_t pack(Vertex a, Vertex b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
               static_cast<std::uint32_t>(b);
    }
};

// Memoized derived structure.  Shared by all copies of a graph value; guarded
// by `mu` so concurrent readers are safe.
struct GraphCache {
    std::mutex mu;

    bool faces_done = false;
    std::vector<FaceWalk> faces;
    std::vector<int> corner_off;                 // vertex -> first corner id
    std::vector<int> corner_face;                // corner id -> face id
    std::vector<std::pair<int, int>> edge_faces;

    std::optional<bool> connected;

    // Z2 cocycle labels; see homology.hpp.
    bool labels_done = false;
    int h1_dim = 0;
    std::vector<std::uint64_t> edge_label;
    std::vector<Edge> leftover_edges;

    // Shortest noncontractible cycle, as oriented darts (empty: none exists).
    bool width_done = false;
    int width_value = 0;  // 0 with width_done means no noncontractible cycle
    std::vector<Dart> width_witness;

    // Contractibility results keyed by canonical vertex cycle.  Logically
    // transparent: identical answers with or without the memo.
    std::map<std::vector<Vertex>, bool> contractible_memo;
};

}  // namespace surf::detail

#endif
