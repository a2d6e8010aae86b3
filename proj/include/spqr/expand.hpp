#ifndef SPQR_EXPAND_HPP
#define SPQR_EXPAND_HPP

#include <unordered_map>
#include <vector>

#include "spqr/decomposition.hpp"

namespace spqr {

struct ExpandResult {
    std::unordered_map<VertexId, VertexId, VertexIdHash> repr_vertex_map; // part vertex -> represented
    std::unordered_map<EdgeId, EdgeId, EdgeIdHash> repr_edge_map;         // part edge -> represented
};

/// Expands represented vertex u into `part` and restores the unique
/// SPQR-tree: polygon allocation skeletons are split down to triangles,
/// rigid ones give up their allocation vertex via IsolateVertex, the
/// allocation subtree is joined into one small skeleton, the part is
/// inserted and integrated, the local skeleton is re-decomposed (with
/// occupied wheels pinning rotations while the graph stays planar), and the
/// remaining twin pairs and same-class neighbors are cleaned up.
/// `phi` maps each marked part vertex to a distinct represented neighbor
/// of u. Work is confined to u's allocation subtree plus fresh skeletons.
ExpandResult insert_graph_spqr(SkeletonDecomposition& d, VertexId u, const Multigraph& part,
                               const std::vector<VertexId>& marked,
                               const std::unordered_map<VertexId, VertexId, VertexIdHash>& phi);

struct MergeResult {
    // other-tree represented elements -> their ids in the merged tree;
    // edges incident to u2 map onto the surviving u1-side edge ids
    std::unordered_map<VertexId, VertexId, VertexIdHash> repr_vertex_map;
    std::unordered_map<EdgeId, EdgeId, EdgeIdHash> repr_edge_map;
};

/// Merges `other` into `d`, identifying the edges incident to u1 with the
/// edges incident to u2 under `phi` and deleting both vertices. Both inputs
/// must be maintained SPQR-trees; `other` is consumed.
MergeResult merge_spqr(SkeletonDecomposition& d, SkeletonDecomposition&& other, VertexId u1, VertexId u2,
                       const std::unordered_map<EdgeId, EdgeId, EdgeIdHash>& phi);

namespace detail {
/// Preprocessing steps of the expansion: splits polygon allocation skeletons
/// of u down to triangles, isolates u's allocation vertex out of rigids and
/// joins the allocation subtree into a single skeleton. Exposed for the
/// locality tests.
VertexId prepare_single_allocation(SkeletonDecomposition& d, VertexId u, bool maintain);
} // namespace detail

} // namespace spqr

#endif
