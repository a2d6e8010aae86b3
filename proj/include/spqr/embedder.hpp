#ifndef SPQR_EMBEDDER_HPP
#define SPQR_EMBEDDER_HPP

#include <optional>
#include <unordered_map>
#include <vector>

#include "spqr/multigraph.hpp"

namespace spqr {

/// Combinatorial embedding: one cyclic edge order per vertex.
struct EmbeddingResult {
    std::unordered_map<VertexId, std::vector<EdgeId>, VertexIdHash> rotation;
    std::size_t faces = 0;
};

/// Planar embedder for biconnected multigraphs (face insertion, quadratic).
/// Returns a rotation system with Euler characteristic 2, or nullopt when the
/// graph is non-planar. Independent of the rotation-system enumeration oracle.
std::optional<EmbeddingResult> embed_biconnected(const Multigraph& g);

/// Faces of a rotation system over a multigraph (orbit count of the face
/// permutation); used by the Euler check.
std::size_t count_faces(const Multigraph& g,
                        const std::unordered_map<VertexId, std::vector<EdgeId>, VertexIdHash>& rotation);

} // namespace spqr

#endif
