#ifndef SPQR_CONNECTIVITY_HPP
#define SPQR_CONNECTIVITY_HPP

#include <unordered_map>
#include <vector>

#include "spqr/multigraph.hpp"

namespace spqr {

/// One bridge at a separation pair: the maximal edge class whose members are
/// pairwise connected by paths avoiding the pair internally. A bridge may be
/// a single edge between the pair vertices.
struct Bridge {
    std::vector<EdgeId> edges;
};

/// Vertices reachable from `seed` (including it).
std::vector<VertexId> component_of(const Multigraph& g, VertexId seed);

/// True iff the connected component of `seed` is biconnected. A component on
/// two vertices counts as biconnected iff it carries at least two parallel
/// edges; single vertices and single edges do not count.
bool component_biconnected(const Multigraph& g, VertexId seed);

/// Whole-graph biconnectivity (connected + component_biconnected).
bool is_biconnected(const Multigraph& g);

/// Partition of all edges of the component of {u,v} into bridges. Each
/// parallel u-v edge forms its own singleton bridge. Deterministic order:
/// bridges sorted by their smallest edge index, edges sorted within.
std::vector<Bridge> bridges_at(const Multigraph& g, VertexId u, VertexId v);

/// True iff {u,v} is a separation pair of its component: removing both
/// vertices disconnects the rest, or at least two parallel u-v edges exist.
bool is_separation_pair(const Multigraph& g, VertexId u, VertexId v);

struct CollapseResult {
    Multigraph graph;
    VertexId merged;
    std::unordered_map<VertexId, VertexId, VertexIdHash> vertex_map;
};

/// New graph with the vertex group replaced by one vertex; edges inside the
/// group are dropped so no loops appear. Edge counts between exterior
/// endpoints are preserved.
CollapseResult collapse_vertices(const Multigraph& g, const std::vector<VertexId>& group);

} // namespace spqr

#endif
