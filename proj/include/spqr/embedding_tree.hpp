#ifndef SPQR_EMBEDDING_TREE_HPP
#define SPQR_EMBEDDING_TREE_HPP

#include <functional>
#include <string>
#include <vector>

#include "spqr/decomposition.hpp"

namespace spqr {

/// PQ-tree over the edges incident to one represented vertex: P-nodes allow
/// any order of their subtrees, Q-nodes are fixed up to reversal. Leaves are
/// the incident represented edges, each exactly once.
struct EmbeddingTree {
    struct Child {
        bool leaf = false;
        EdgeId edge;  // leaf payload
        int node = -1; // inner child index
    };
    struct Node {
        bool q = false; // false: P-node, true: Q-node
        std::vector<Child> children;
    };
    std::vector<Node> nodes;
    int root = -1;
    std::size_t leaf_count = 0;
    std::size_t visited = 0; // skeleton elements touched while extracting
};

/// Extracts the embedding tree of a represented vertex by walking its
/// allocation subtree: polygons are skipped, bonds become P-nodes, rigids
/// become Q-nodes ordered by the maintained rotation. Requires a planar
/// maintained SPQR-tree. Cost is linear in deg(v).
EmbeddingTree embedding_tree(const SkeletonDecomposition& d, VertexId repr_v);

/// Deterministic bracket form: P(...) with sorted children, Q[...] in
/// canonical direction; leaves print through `label` (default: edge index).
std::string format_embedding_tree(const EmbeddingTree& t,
                                  const std::function<std::string(std::uint32_t)>& label = {});

/// All cyclic leaf orders the tree admits, reduced to canonical reflection
/// classes and sorted; guarded to degree <= 8.
std::vector<std::vector<EdgeId>> admissible_rotations(const EmbeddingTree& t);

} // namespace spqr

#endif
