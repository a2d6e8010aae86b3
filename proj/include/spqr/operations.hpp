#ifndef SPQR_OPERATIONS_HPP
#define SPQR_OPERATIONS_HPP

#include <unordered_map>
#include <utility>
#include <vector>

#include "spqr/connectivity.hpp"
#include "spqr/decomposition.hpp"

namespace spqr {

/// Splits skeleton `mu` at the separation pair {u,v}. The bipartition is
/// given as two groups of bridges (as produced by bridges_at on the
/// skeleton); both must be nonempty and together cover every bridge. Side A
/// is moved into a fresh skeleton (fresh copies of u and v are minted
/// there); side B stays in place. Returns (alpha, beta) with alpha the new
/// skeleton. The represented graph is unchanged.
std::pair<SkeletonId, SkeletonId> split_separation_pair(SkeletonDecomposition& d, SkeletonId mu,
                                                        VertexId u, VertexId v,
                                                        const std::vector<Bridge>& side_a,
                                                        const std::vector<Bridge>& side_b);

/// Internal form: side A is described by the edges of its bridges that touch
/// the pair; interior elements are discovered by traversal, so the cost is
/// linear in the extracted side only. Precondition checks are limited to
/// side consistency.
std::pair<SkeletonId, SkeletonId> split_off(SkeletonDecomposition& d, SkeletonId mu, VertexId u,
                                            VertexId v, const std::vector<EdgeId>& side_a_seeds);

/// Merges the two skeletons joined by the virtual edge `e` and its twin,
/// identifying the endpoint pairs that map to the same represented vertex.
/// Returns the surviving skeleton. The represented graph is unchanged.
SkeletonId join_separation_pair(SkeletonDecomposition& d, EdgeId e);

struct IsolateResult {
    VertexId center_here;  // fresh virtual center left in the old skeleton
    VertexId center_moved; // fresh virtual center next to the isolated vertex
    SkeletonId split_off;  // the new skeleton holding the isolated vertex
};

/// Moves `v` (regular, no occupied edges, at least two distinct neighbors)
/// into a fresh skeleton: every neighbor is split in two, occupied stars
/// around twinned virtual centers take the place of the old incidences.
IsolateResult isolate_vertex(SkeletonDecomposition& d, VertexId v);

struct IntegrateResult {
    SkeletonId merged;
    // surviving vertex first, removed copy second, for every identified neighbor pair
    std::vector<std::pair<VertexId, VertexId>> identified;
};

/// Converse of isolate_vertex: merges the skeletons of the twinned virtual
/// centers, identifying their neighbors by represented vertex, and removes
/// both centers with their occupied stars. With check_result the merged
/// skeleton is verified to stay biconnected before anything is touched;
/// pipeline callers on reachable states may skip the preview.
IntegrateResult integrate(SkeletonDecomposition& d, VertexId v_alpha, VertexId v_beta,
                          bool check_result = true);

struct InsertResult {
    SkeletonId nu;         // skeleton holding the inserted graph
    VertexId center_old;   // former allocation vertex, now a virtual center
    VertexId center_new;   // fresh virtual center inside nu
    std::unordered_map<VertexId, VertexId, VertexIdHash> skeleton_map; // part vertex -> nu vertex
    std::unordered_map<VertexId, VertexId, VertexIdHash> repr_vertex_map; // part vertex -> represented vertex
    std::unordered_map<EdgeId, EdgeId, EdgeIdHash> repr_edge_map;         // part edge -> represented edge
};

/// True iff `part` is biconnected once all marked vertices are collapsed
/// into a single vertex; edges between two marked vertices survive the
/// collapse as subdivided parallels instead of dropped loops.
bool collapse_biconnected(const Multigraph& part, const std::vector<VertexId>& marked);

/// Expands represented vertex `u` (which must have exactly one allocation
/// vertex) into `part`. `phi` maps each marked part vertex to a distinct
/// skeleton neighbor of the allocation vertex. The represented graph becomes
/// the expansion of u by `part`.
InsertResult insert_graph(SkeletonDecomposition& d, VertexId u, const Multigraph& part,
                          const std::vector<VertexId>& marked,
                          const std::unordered_map<VertexId, VertexId, VertexIdHash>& phi);

/// Joins every twinE pair; requires twinV to be empty. Leaves the trivial
/// decomposition.
void exhaustive_join(SkeletonDecomposition& d);

/// Integrates every twinV pair.
void exhaustive_integrate(SkeletonDecomposition& d);

} // namespace spqr

#endif
