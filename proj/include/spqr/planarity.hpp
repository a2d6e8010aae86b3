#ifndef SPQR_PLANARITY_HPP
#define SPQR_PLANARITY_HPP

#include <vector>

#include "spqr/decomposition.hpp"

namespace spqr {

/// Classifies untagged skeletons, embeds every rigid (storing one rotation
/// per vertex, all in one orientation per rigid), initializes the reversal
/// registry and sets the planarity flag. Polygons and bonds are always
/// planar and carry no rotations.
void init_planarity(SkeletonDecomposition& d);

/// Maintained constant-time planarity flag.
bool is_planar(const SkeletonDecomposition& d);

/// Stored rotation of a vertex in a planar rigid skeleton, up to reversal.
const std::vector<EdgeId>& rotation(const SkeletonDecomposition& d, VertexId v);

/// Direction-consistent rotation: all answers for one rigid fit a single
/// embedding (up to one global reflection). Uses the reversal registry; path
/// compression is controlled by maint().path_compression.
std::vector<EdgeId> rotation_exact(SkeletonDecomposition& d, VertexId v);

/// Reversal registry access: representative and accumulated parity.
std::pair<std::uint32_t, bool> rigid_find(SkeletonDecomposition& d, VertexId v);
/// Non-compressing variant usable on const structures.
std::pair<std::uint32_t, bool> rigid_find_const(const SkeletonDecomposition& d, VertexId v);

/// True iff at least three vertex-disjoint paths join the represented
/// vertices: they share a rigid, are poles of one bond with >= 3 edges, or a
/// polygon joins them by a virtual edge. Requires an SPQR-clean structure.
bool three_paths(const SkeletonDecomposition& d, VertexId repr_u, VertexId repr_v);

/// Replaces the occupied star around `center` by an occupied wheel whose rim
/// follows `spoke_order` (a cyclic order of the occupied spokes). Spoke edge
/// ids survive as the outer halves.
void wheel_install(SkeletonDecomposition& d, VertexId center, const std::vector<EdgeId>& spoke_order);

/// Collapses the wheel around `center` back to a plain occupied star and
/// refreshes the stored rotation of the center from the embedded wheel.
void wheel_contract(SkeletonDecomposition& d, VertexId center);

/// Embeds one skeleton (any kinds of edges); updates nothing. Returns false
/// when the skeleton is non-planar.
bool embed_and_store(SkeletonDecomposition& d, SkeletonId s);

/// Registry bookkeeping used by the expansion pipeline.
void registry_make_group(SkeletonDecomposition& d, const std::vector<VertexId>& members);
void registry_attach(SkeletonDecomposition& d, VertexId fresh, VertexId like);
/// Links the groups of a and b with relative reversal `rel` between their
/// current representatives' frames.
void registry_union(SkeletonDecomposition& d, VertexId a, VertexId b, bool rel);

} // namespace spqr

#endif
