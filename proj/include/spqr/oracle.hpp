#ifndef SPQR_ORACLE_HPP
#define SPQR_ORACLE_HPP

#include <unordered_map>
#include <utility>
#include <vector>

#include "spqr/multigraph.hpp"

namespace spqr::oracle {

/// All separation pairs of a biconnected graph: pairs whose removal
/// disconnects the rest, plus pairs joined by two or more parallel edges.
/// Deterministic order (sorted by index pair).
std::vector<std::pair<VertexId, VertexId>> separation_pairs_bf(const Multigraph& g);

/// Vertex-removal separation pairs only (no parallel-edge clause).
std::vector<std::pair<VertexId, VertexId>> separation_pairs_removal_bf(const Multigraph& g);

/// Planarity by exhaustive rotation-system search (genus 0 via Euler).
/// Hard size guard: more than 8 vertices is an error, never a truncation.
bool planar_bf(const Multigraph& g);

/// All rotations of v realizable in genus-0 rotation systems of g, reduced
/// to canonical reflection-class representatives and sorted. Guards on size.
std::vector<std::vector<EdgeId>> rotations_at_bf(const Multigraph& g, VertexId v);

/// True iff at least 3 pairwise internally-disjoint paths join a and b
/// (vertex-capacitated max-flow).
bool menger3_bf(const Multigraph& g, VertexId a, VertexId b);

/// In-place literal implementation of vertex expansion: u is removed with
/// all incident edges; `part` is glued in by identifying each marked vertex
/// with its partner under `embed_at`. New vertices are minted in increasing
/// part-vertex index order and new edges in increasing part-edge index
/// order. Returns the mapping from part vertices to vertices of g.
std::unordered_map<VertexId, VertexId, VertexIdHash>
replace_bf(Multigraph& g, VertexId u, const Multigraph& part, const std::vector<VertexId>& marked,
           const std::unordered_map<VertexId, VertexId, VertexIdHash>& embed_at);

/// Merge semantics: all g2 vertices are copied into g1 (minted in increasing
/// g2 index order) and all g2 edges follow (in g2 edge index order); each
/// edge e1 incident to u1 is then relinked to the copied far endpoint of
/// edge_map(e1), and both u1 and the u2 copy are deleted. Returns the
/// g2 -> g1 vertex map (without u2).
std::unordered_map<VertexId, VertexId, VertexIdHash>
merge_replace_bf(Multigraph& g1, VertexId u1, const Multigraph& g2, VertexId u2,
                 const std::unordered_map<EdgeId, EdgeId, EdgeIdHash>& edge_map);

/// Canonical representative of a cyclic order up to rotation and reflection:
/// lexicographically smallest among all rotations of the sequence and of its
/// reverse.
std::vector<EdgeId> canonical_cycle(std::vector<EdgeId> cycle);

/// Index-level equality of two graphs (handles compared by index only, so
/// copies and independently replayed twins compare equal).
bool graphs_identical_by_index(const Multigraph& a, const Multigraph& b);

} // namespace spqr::oracle

#endif
