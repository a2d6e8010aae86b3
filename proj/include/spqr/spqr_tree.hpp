#ifndef SPQR_SPQR_TREE_HPP
#define SPQR_SPQR_TREE_HPP

#include <string>
#include <vector>

#include "spqr/decomposition.hpp"

namespace spqr {

/// Honest classification of one skeleton (no caching): polygon = simple
/// cycle with >= 3 edges, bond = two vertices with >= 2 parallel edges,
/// rigid = simple triconnected with >= 4 vertices. Skeletons containing
/// virtual vertices or occupied edges are rejected.
SkeletonClass classify_skeleton(const SkeletonDecomposition& d, SkeletonId s);

/// Definition check: twinV empty, every skeleton a polygon, bond or rigid,
/// no two adjacent polygons and no two adjacent bonds. A two-edge bond is
/// admitted only as the whole tree (both edges real).
bool is_spqr(const SkeletonDecomposition& d);

/// From-scratch SPQR-tree construction: exhaustive splitting at separation
/// pairs (parallel classes, degree-2 chains, then general pairs) followed by
/// joining adjacent same-class polygon/bond pairs. Polynomial; used on whole
/// graphs and on local skeletons during expansion. Planarity and rotation
/// state is initialized. The represented graph preserves g's indices.
SkeletonDecomposition build_spqr(const Multigraph& g);

/// Splits `s` at every separation pair both of whose vertices are regular;
/// returns all skeletons the recursion left behind (including `s`). Pieces
/// get their class tags set; pieces that keep virtual vertices stay Unknown.
std::vector<SkeletonId> decompose_skeleton(SkeletonDecomposition& d, SkeletonId s);

/// Joins adjacent polygon/polygon and bond/bond pairs among `seeds` and
/// anything they become adjacent to, until none remain. Relies on cached
/// class tags. Returns surviving skeletons of the touched region.
std::vector<SkeletonId> normalize_adjacent(SkeletonDecomposition& d, std::vector<SkeletonId> seeds);

/// Deterministic serialization keyed on represented labels only; equal for
/// any two decompositions of the same labelled graph that are the unique
/// SPQR-tree (and usable as a trace fingerprint for other valid states).
std::string canonical_form(const SkeletonDecomposition& d);

} // namespace spqr

#endif
