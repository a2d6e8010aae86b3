#ifndef SPQR_MULTIGRAPH_HPP
#define SPQR_MULTIGRAPH_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "spqr/error.hpp"

namespace spqr {

inline constexpr std::uint32_t kInvalidIndex = std::numeric_limits<std::uint32_t>::max();

/// Handle to a vertex. Handles are never reused within one graph and carry
/// the identity tag of the graph that minted them.
struct VertexId {
    std::uint32_t graph = 0;
    std::uint32_t index = kInvalidIndex;

    bool valid() const { return index != kInvalidIndex; }
    friend bool operator==(VertexId a, VertexId b) { return a.graph == b.graph && a.index == b.index; }
    friend bool operator!=(VertexId a, VertexId b) { return !(a == b); }
    friend bool operator<(VertexId a, VertexId b) {
        return a.graph != b.graph ? a.graph < b.graph : a.index < b.index;
    }
};

struct EdgeId {
    std::uint32_t graph = 0;
    std::uint32_t index = kInvalidIndex;

    bool valid() const { return index != kInvalidIndex; }
    friend bool operator==(EdgeId a, EdgeId b) { return a.graph == b.graph && a.index == b.index; }
    friend bool operator!=(EdgeId a, EdgeId b) { return !(a == b); }
    friend bool operator<(EdgeId a, EdgeId b) {
        return a.graph != b.graph ? a.graph < b.graph : a.index < b.index;
    }
};

struct VertexIdHash {
    std::size_t operator()(VertexId v) const {
        return std::hash<std::uint64_t>()((std::uint64_t(v.graph) << 32) | v.index);
    }
};
struct EdgeIdHash {
    std::size_t operator()(EdgeId e) const {
        return std::hash<std::uint64_t>()((std::uint64_t(e.graph) << 32) | e.index);
    }
};

/// Loop-free multigraph with stable, never-reused vertex and edge handles.
/// Parallel edges are permitted and individually addressable. A single
/// mutator at a time; concurrent readers are fine between mutations.
class Multigraph {
public:
    Multigraph();
    Multigraph(const Multigraph&) = default;
    Multigraph(Multigraph&&) = default;
    Multigraph& operator=(const Multigraph&) = default;
    Multigraph& operator=(Multigraph&&) = default;

    VertexId add_vertex();
    /// Rejects self-loops and dead handles.
    EdgeId add_edge(VertexId u, VertexId v);
    void delete_edge(EdgeId e);
    /// Deletes the vertex together with all incident edges.
    void delete_vertex(VertexId v);
    /// Moves one endpoint of `e` from `from` to `to`. The edge id is stable.
    void relink_endpoint(EdgeId e, VertexId from, VertexId to);

    bool is_vertex(VertexId v) const { return owns(v) && vertices_[v.index].alive; }
    bool is_edge(EdgeId e) const { return owns(e) && edges_[e.index].alive; }

    std::size_t vertex_count() const { return live_vertices_; }
    std::size_t edge_count() const { return live_edges_; }

    std::size_t degree(VertexId v) const;
    std::span<const EdgeId> incident(VertexId v) const;
    std::pair<VertexId, VertexId> endpoints(EdgeId e) const;
    /// The endpoint of `e` that is not `v`.
    VertexId opposite(EdgeId e, VertexId v) const;

    std::vector<VertexId> vertices() const;
    std::vector<EdgeId> edges() const;

    /// Pre-allocates slot capacity (amortization control for measurements).
    void reserve(std::size_t extra_vertices, std::size_t extra_edges) {
        vertices_.reserve(vertices_.size() + extra_vertices);
        edges_.reserve(edges_.size() + extra_edges);
    }

    std::uint32_t tag() const { return tag_; }
    /// One past the largest vertex index ever minted (for index-keyed side tables).
    std::uint32_t vertex_index_bound() const { return static_cast<std::uint32_t>(vertices_.size()); }
    std::uint32_t edge_index_bound() const { return static_cast<std::uint32_t>(edges_.size()); }

    void check_vertex(VertexId v) const;
    void check_edge(EdgeId e) const;

private:
    struct VertexRec {
        std::vector<EdgeId> incident;
        bool alive = false;
    };
    struct EdgeRec {
        VertexId u, v;
        std::uint32_t pos_u = 0, pos_v = 0; // positions inside the incident lists
        bool alive = false;
    };

    bool owns(VertexId v) const { return v.graph == tag_ && v.index < vertices_.size(); }
    bool owns(EdgeId e) const { return e.graph == tag_ && e.index < edges_.size(); }
    void detach(EdgeId e, VertexId at);

    std::vector<VertexRec> vertices_;
    std::vector<EdgeRec> edges_;
    std::size_t live_vertices_ = 0;
    std::size_t live_edges_ = 0;
    std::uint32_t tag_;
};

} // namespace spqr

#endif
