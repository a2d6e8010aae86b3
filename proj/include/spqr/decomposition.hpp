#ifndef SPQR_DECOMPOSITION_HPP
#define SPQR_DECOMPOSITION_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "spqr/multigraph.hpp"

namespace spqr {

enum class VertexKind : std::uint8_t { Regular, Virtual, WheelRim };
enum class EdgeKind : std::uint8_t { Real, Virtual, Occupied };

enum class SkeletonClass : std::uint8_t { Polygon, Bond, Rigid, NotSpqr, Unknown };

using SkeletonId = std::uint32_t;
inline constexpr SkeletonId kNoSkeleton = 0xFFFFFFFFu;

struct Violation {
    int condition; // 1..8 per the validity conditions, 0 for structural/mapping checks
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> items;
    bool ok() const { return items.empty(); }
    std::string to_string() const;
};

struct DecompositionTree {
    std::vector<SkeletonId> nodes;
    std::vector<std::pair<SkeletonId, SkeletonId>> edges;
};

/// Extended skeleton decomposition: a set of disjoint skeleton graphs (kept
/// in one arena multigraph, one connected component per skeleton) plus the
/// twin matchings on virtual edges/vertices and the orig mappings onto the
/// represented graph. The represented graph is stored and patched
/// incrementally; validate() recomputes it independently.
///
/// Concurrency: one mutator at a time, any number of readers in between.
class SkeletonDecomposition {
public:
    SkeletonDecomposition() = default;

    // ---- read access -------------------------------------------------

    const Multigraph& arena() const { return arena_; }
    const Multigraph& represented() const { return represented_; }

    std::vector<SkeletonId> skeleton_ids() const;
    std::size_t skeleton_count() const { return live_skeletons_; }
    bool skeleton_alive(SkeletonId s) const { return s < skels_.size() && skels_[s].alive; }

    SkeletonId skeleton_of(VertexId v) const { return vmeta_.at(v.index).skel; }
    SkeletonId skeleton_of(EdgeId e) const { return emeta_.at(e.index).skel; }
    std::span<const VertexId> skeleton_vertices(SkeletonId s) const;
    std::span<const EdgeId> skeleton_edges(SkeletonId s) const;

    VertexKind vertex_kind(VertexId v) const { return vmeta_.at(v.index).kind; }
    EdgeKind edge_kind(EdgeId e) const { return emeta_.at(e.index).kind; }

    /// origV: defined exactly on Regular vertices.
    VertexId orig_vertex(VertexId v) const { return vmeta_.at(v.index).orig; }
    /// origE: defined exactly on Real edges.
    EdgeId orig_edge(EdgeId e) const { return emeta_.at(e.index).orig; }
    /// twinV: defined exactly on Virtual vertices.
    VertexId twin_vertex(VertexId v) const { return vmeta_.at(v.index).twin; }
    /// twinE: defined exactly on Virtual edges.
    EdgeId twin_edge(EdgeId e) const { return emeta_.at(e.index).twin; }

    /// Allocation vertices of a represented vertex (one per allocation skeleton).
    std::span<const VertexId> allocation_vertices(VertexId repr) const;
    std::vector<SkeletonId> allocation_skeletons(VertexId repr) const;
    /// The unique real skeleton edge mapped onto a represented edge.
    EdgeId real_edge_of(EdgeId repr) const;

    std::size_t virtual_edge_count() const { return virtual_edges_; }
    std::size_t twin_vertex_pairs() const { return twinv_pairs_ / 2; }

    SkeletonClass cached_class(SkeletonId s) const { return skels_.at(s).tag; }
    void set_cached_class(SkeletonId s, SkeletonClass c) { skels_.at(s).tag = c; }

    std::uint64_t skeleton_version(SkeletonId s) const { return skels_.at(s).version; }
    std::uint64_t work_counter() const { return work_; }
    void reset_work_counter() { work_ = 0; }

    bool spqr_clean() const { return spqr_clean_; }
    void set_spqr_clean(bool b) { spqr_clean_ = b; }

    // ---- derived views ------------------------------------------------

    DecompositionTree decomposition_tree() const;
    /// Value copy of the represented graph (indices preserved).
    Multigraph represented_copy() const { return represented_; }
    ValidationReport validate() const;
    /// Deterministic text dump; the hooks render represented vertex and
    /// edge indices (defaults print the bare indices).
    void dump(std::ostream& out, const std::function<std::string(std::uint32_t)>& vertex_label = {},
              const std::function<std::string(std::uint32_t)>& edge_label = {}) const;
    std::string dump_string() const;

    // ---- structure mutation primitives ---------------------------------
    // Low-level, invariant-preserving bookkeeping; composed by the
    // operations in operations.hpp / spqr_tree.hpp.

    SkeletonId new_skeleton();
    void retire_skeleton(SkeletonId s); // must be empty

    VertexId mint_vertex(SkeletonId s, VertexKind kind, VertexId orig = {});
    EdgeId mint_edge(SkeletonId s, EdgeKind kind, VertexId u, VertexId v, EdgeId orig = {});
    void move_vertex(VertexId v, SkeletonId to);
    void move_edge(EdgeId e, SkeletonId to);
    void remove_vertex(VertexId v); // degree 0 required
    void remove_edge(EdgeId e);
    void relink(EdgeId e, VertexId from, VertexId to);
    void set_twin_edges(EdgeId a, EdgeId b);
    void set_twin_vertices(VertexId a, VertexId b);
    /// Regular -> Virtual; drops the origV entry.
    void make_virtual_vertex(VertexId v);
    /// Any kind -> Occupied; drops the origE entry (represented side untouched).
    void make_occupied(EdgeId e);

    VertexId mint_repr_vertex();
    EdgeId mint_repr_edge(VertexId u, VertexId v);
    void delete_repr_vertex(VertexId v);
    void delete_repr_edge(EdgeId e);
    void relink_repr(EdgeId e, VertexId from, VertexId to);

    struct AbsorbMaps {
        std::unordered_map<std::uint32_t, VertexId> arena_vertex; // other's index -> id here
        std::unordered_map<std::uint32_t, EdgeId> arena_edge;
        std::unordered_map<std::uint32_t, VertexId> repr_vertex;
        std::unordered_map<std::uint32_t, EdgeId> repr_edge;
        std::unordered_map<SkeletonId, SkeletonId> skeleton;
    };
    /// Copies all of `other` (skeletons, mappings, twins, rotations and the
    /// reversal registry) into this decomposition. Represented vertices are
    /// minted in increasing index order, then edges likewise. The planarity
    /// flag becomes the conjunction.
    AbsorbMaps absorb(const SkeletonDecomposition& other);

    void bump_work(std::uint64_t n) const { work_ += n; }

    /// Pre-allocates arena, represented and side-table capacity so timed
    /// sections do not hit vector growth spikes.
    void reserve_slack(std::size_t extra_vertices, std::size_t extra_edges) {
        arena_.reserve(extra_vertices, extra_edges);
        represented_.reserve(extra_vertices, extra_edges);
        vmeta_.reserve(arena_.vertex_index_bound() + extra_vertices);
        emeta_.reserve(arena_.edge_index_bound() + extra_edges);
        alloc_.reserve(represented_.vertex_index_bound() + extra_vertices);
        real_of_.reserve(represented_.edge_index_bound() + extra_edges);
        maint_.rotation.reserve(arena_.vertex_index_bound() + extra_vertices);
        maint_.uf_parent.reserve(arena_.vertex_index_bound() + extra_vertices);
        maint_.uf_parity.reserve(arena_.vertex_index_bound() + extra_vertices);
        maint_.uf_size.reserve(arena_.vertex_index_bound() + extra_vertices);
    }

    // ---- planarity / rotation maintenance (managed by planarity.hpp) ---

    struct Maintenance {
        bool initialized = false;
        // planarity bit per skeleton id (0 = known non-planar rigid) plus the
        // count of zero bits; the whole graph is planar iff the count is zero
        std::vector<std::uint8_t> skel_planar;
        std::size_t nonplanar_rigids = 0;
        // per arena vertex index: cyclic edge order (only members of embedded
        // rigids are meaningful)
        std::vector<std::vector<EdgeId>> rotation;
        // union-find with reversal parity, indexed by arena vertex index
        std::vector<std::uint32_t> uf_parent;
        std::vector<std::uint8_t> uf_parity;
        std::vector<std::uint32_t> uf_size;
        bool path_compression = true;

        bool skeleton_planar(SkeletonId s) const { return s >= skel_planar.size() || skel_planar[s]; }
        void set_skeleton_planar(SkeletonId s, bool planar) {
            if (skel_planar.size() <= s) skel_planar.resize(s + 1, 1);
            if (skel_planar[s] && !planar) ++nonplanar_rigids;
            if (!skel_planar[s] && planar) --nonplanar_rigids;
            skel_planar[s] = planar ? 1 : 0;
        }
    };
    Maintenance& maint() { return maint_; }
    const Maintenance& maint() const { return maint_; }

private:
    struct VMeta {
        SkeletonId skel = kNoSkeleton;
        std::uint32_t pos = 0;       // position inside the skeleton vertex list
        std::uint32_t alloc_pos = 0; // position inside the allocation list of `orig`
        VertexKind kind = VertexKind::Regular;
        VertexId orig; // represented vertex (Regular only)
        VertexId twin; // twin virtual vertex (Virtual only)
    };
    struct EMeta {
        SkeletonId skel = kNoSkeleton;
        std::uint32_t pos = 0;
        EdgeKind kind = EdgeKind::Real;
        EdgeId orig; // represented edge (Real only)
        EdgeId twin; // twin virtual edge (Virtual only)
    };
    struct SkeletonRec {
        std::vector<VertexId> verts;
        std::vector<EdgeId> edges;
        std::uint64_t version = 0;
        SkeletonClass tag = SkeletonClass::Unknown;
        bool alive = false;
    };

    friend SkeletonDecomposition trivial_decomposition(const Multigraph&);

    void touch(SkeletonId s) {
        ++skels_[s].version;
        ++work_;
    }
    void alloc_add(VertexId skel_vertex);
    void alloc_remove(VertexId skel_vertex);

    Multigraph arena_;
    Multigraph represented_;
    std::vector<VMeta> vmeta_;
    std::vector<EMeta> emeta_;
    std::vector<SkeletonRec> skels_;
    std::size_t live_skeletons_ = 0;
    // per represented vertex index: allocation vertices
    std::vector<std::vector<VertexId>> alloc_;
    // per represented edge index: the real skeleton edge
    std::vector<EdgeId> real_of_;
    std::size_t virtual_edges_ = 0;
    std::size_t twinv_pairs_ = 0; // counts virtual vertices that have a twin
    bool spqr_clean_ = false;
    mutable std::uint64_t work_ = 0;
    Maintenance maint_;
};

/// Single-skeleton decomposition isomorphic to g (which must be biconnected
/// and loop-free). The represented graph preserves g's vertex/edge indices.
SkeletonDecomposition trivial_decomposition(const Multigraph& g);

} // namespace spqr

#endif
