#include "spqr/planarity.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "spqr/embedder.hpp"
#include "spqr/spqr_tree.hpp"

namespace spqr {

namespace {

using Maint = SkeletonDecomposition::Maintenance;

void uf_reserve(Maint& m, std::uint32_t index) {
    if (m.uf_parent.size() <= index) {
        std::size_t old = m.uf_parent.size();
        m.uf_parent.resize(index + 1);
        m.uf_parity.resize(index + 1, 0);
        m.uf_size.resize(index + 1, 1);
        for (std::size_t i = old; i <= index; ++i) m.uf_parent[i] = static_cast<std::uint32_t>(i);
    }
}

std::pair<std::uint32_t, bool> uf_find(Maint& m, std::uint32_t x, bool compress) {
    uf_reserve(m, x);
    std::uint32_t root = x;
    bool parity = false;
    while (m.uf_parent[root] != root) {
        parity ^= m.uf_parity[root];
        root = m.uf_parent[root];
    }
    if (compress) {
        std::uint32_t cur = x;
        bool cur_parity = parity;
        while (m.uf_parent[cur] != root) {
            std::uint32_t next = m.uf_parent[cur];
            bool next_parity = cur_parity ^ m.uf_parity[cur];
            m.uf_parent[cur] = root;
            m.uf_parity[cur] = cur_parity;
            cur = next;
            cur_parity = next_parity;
        }
    }
    return {root, parity};
}

std::pair<std::uint32_t, bool> uf_find_const(const Maint& m, std::uint32_t x) {
    if (x >= m.uf_parent.size()) return {x, false};
    std::uint32_t root = x;
    bool parity = false;
    while (m.uf_parent[root] != root) {
        parity ^= m.uf_parity[root];
        root = m.uf_parent[root];
    }
    return {root, parity};
}

void store_rotation(SkeletonDecomposition& d, VertexId v, std::vector<EdgeId> rot) {
    auto& store = d.maint().rotation;
    if (store.size() <= v.index) store.resize(v.index + 1);
    store[v.index] = std::move(rot);
}

} // namespace

std::pair<std::uint32_t, bool> rigid_find(SkeletonDecomposition& d, VertexId v) {
    return uf_find(d.maint(), v.index, d.maint().path_compression);
}

std::pair<std::uint32_t, bool> rigid_find_const(const SkeletonDecomposition& d, VertexId v) {
    return uf_find_const(d.maint(), v.index);
}

void registry_make_group(SkeletonDecomposition& d, const std::vector<VertexId>& members) {
    Maint& m = d.maint();
    if (members.empty()) return;
    for (VertexId v : members) uf_reserve(m, v.index);
    auto [root, parity] = uf_find(m, members.front().index, false);
    for (std::size_t i = 1; i < members.size(); ++i) {
        auto [r2, p2] = uf_find(m, members[i].index, false);
        if (r2 == root) continue;
        // fresh group members are all in one frame
        m.uf_parent[r2] = root;
        m.uf_parity[r2] = parity ^ p2;
        m.uf_size[root] += m.uf_size[r2];
    }
}

void registry_attach(SkeletonDecomposition& d, VertexId fresh, VertexId like) {
    Maint& m = d.maint();
    uf_reserve(m, fresh.index);
    auto [root, parity] = uf_find(m, like.index, m.path_compression);
    m.uf_parent[fresh.index] = root;
    m.uf_parity[fresh.index] = parity; // same frame as `like`
    m.uf_size[root] += 1;
}

void registry_union(SkeletonDecomposition& d, VertexId a, VertexId b, bool rel) {
    Maint& m = d.maint();
    auto [ra, pa] = uf_find(m, a.index, m.path_compression);
    auto [rb, pb] = uf_find(m, b.index, m.path_compression);
    if (ra == rb) return;
    // rel relates the frames of a and b themselves; translate to the roots
    bool root_rel = static_cast<bool>(pa ^ pb ^ rel);
    std::uint32_t big = ra, small = rb;
    if (m.uf_size[big] < m.uf_size[small] || (m.uf_size[big] == m.uf_size[small] && big > small))
        std::swap(big, small);
    m.uf_parent[small] = big;
    m.uf_parity[small] = root_rel;
    m.uf_size[big] += m.uf_size[small];
}

bool embed_and_store(SkeletonDecomposition& d, SkeletonId s) {
    // extract the skeleton into a scratch graph; ids survive via the map
    const Multigraph& g = d.arena();
    Multigraph scratch;
    std::unordered_map<std::uint32_t, VertexId> to_scratch;
    std::unordered_map<std::uint32_t, VertexId> from_scratch;
    std::unordered_map<std::uint32_t, EdgeId> edge_from_scratch;
    for (VertexId v : d.skeleton_vertices(s)) {
        VertexId sv = scratch.add_vertex();
        to_scratch[v.index] = sv;
        from_scratch[sv.index] = v;
    }
    for (EdgeId e : d.skeleton_edges(s)) {
        auto [x, y] = g.endpoints(e);
        EdgeId se = scratch.add_edge(to_scratch[x.index], to_scratch[y.index]);
        edge_from_scratch[se.index] = e;
    }
    auto embedding = embed_biconnected(scratch);
    if (!embedding) {
        d.maint().set_skeleton_planar(s, false);
        return false;
    }
    std::vector<VertexId> members;
    for (const auto& [sv, order] : embedding->rotation) {
        VertexId v = from_scratch[sv.index];
        std::vector<EdgeId> rot;
        rot.reserve(order.size());
        for (EdgeId se : order) rot.push_back(edge_from_scratch[se.index]);
        store_rotation(d, v, std::move(rot));
        members.push_back(v);
    }
    std::sort(members.begin(), members.end());
    registry_make_group(d, members);
    d.maint().set_skeleton_planar(s, true);
    d.bump_work(members.size() + d.skeleton_edges(s).size());
    return true;
}

void init_planarity(SkeletonDecomposition& d) {
    for (SkeletonId s : d.skeleton_ids()) {
        if (d.cached_class(s) == SkeletonClass::Unknown) {
            try {
                d.set_cached_class(s, classify_skeleton(d, s));
            } catch (const Error&) {
                d.set_cached_class(s, SkeletonClass::NotSpqr);
            }
        }
        SkeletonClass c = d.cached_class(s);
        if (c == SkeletonClass::Polygon || c == SkeletonClass::Bond) continue;
        embed_and_store(d, s);
    }
    d.maint().initialized = true;
}

bool is_planar(const SkeletonDecomposition& d) {
    if (!d.maint().initialized) fail(Errc::BadInput, "is_planar: planarity state not initialized");
    return d.maint().nonplanar_rigids == 0;
}

const std::vector<EdgeId>& rotation(const SkeletonDecomposition& d, VertexId v) {
    if (!d.maint().initialized || d.maint().nonplanar_rigids > 0)
        fail(Errc::NonPlanarState, "rotation: no planar rotations are maintained");
    d.arena().check_vertex(v);
    if (d.cached_class(d.skeleton_of(v)) != SkeletonClass::Rigid)
        fail(Errc::NotRigid, "rotation: vertex is not in a rigid skeleton");
    const auto& store = d.maint().rotation;
    if (store.size() <= v.index || store[v.index].empty())
        fail(Errc::RotationUnavailable, "rotation: no stored rotation for this vertex");
    return store[v.index];
}

std::vector<EdgeId> rotation_exact(SkeletonDecomposition& d, VertexId v) {
    std::vector<EdgeId> rot = rotation(d, v);
    auto [root, parity] = rigid_find(d, v);
    (void)root;
    if (parity) std::reverse(rot.begin(), rot.end());
    return rot;
}

bool three_paths(const SkeletonDecomposition& d, VertexId repr_u, VertexId repr_v) {
    d.represented().check_vertex(repr_u);
    d.represented().check_vertex(repr_v);
    if (!d.spqr_clean()) fail(Errc::NotSpqrTree, "three_paths: needs a maintained SPQR-tree");
    if (repr_u == repr_v) fail(Errc::BadInput, "three_paths: vertices must differ");
    std::unordered_map<SkeletonId, VertexId> mine;
    for (VertexId a : d.allocation_vertices(repr_u)) mine.emplace(d.skeleton_of(a), a);
    for (VertexId b : d.allocation_vertices(repr_v)) {
        auto it = mine.find(d.skeleton_of(b));
        if (it == mine.end()) continue;
        SkeletonId s = it->first;
        switch (d.cached_class(s)) {
        case SkeletonClass::Rigid:
            return true;
        case SkeletonClass::Bond:
            if (d.skeleton_edges(s).size() >= 3) return true;
            break;
        case SkeletonClass::Polygon:
            for (EdgeId e : d.arena().incident(it->second))
                if (d.edge_kind(e) == EdgeKind::Virtual && d.arena().opposite(e, it->second) == b) return true;
            break;
        default:
            fail(Errc::NotSpqrTree, "three_paths: skeleton class unknown");
        }
    }
    return false;
}

void wheel_install(SkeletonDecomposition& d, VertexId center, const std::vector<EdgeId>& spoke_order) {
    const Multigraph& g = d.arena();
    if (d.vertex_kind(center) != VertexKind::Virtual)
        fail(Errc::VirtualVertex, "wheel_install: center must be a virtual vertex");
    if (spoke_order.size() != g.degree(center) || spoke_order.size() < 2)
        fail(Errc::BadInput, "wheel_install: spoke order must list every spoke");
    SkeletonId s = d.skeleton_of(center);
    std::vector<VertexId> rim;
    for (EdgeId e : spoke_order) {
        if (!g.is_edge(e) || d.edge_kind(e) != EdgeKind::Occupied)
            fail(Errc::BadInput, "wheel_install: spoke order must consist of the occupied spokes");
        VertexId mid = d.mint_vertex(s, VertexKind::WheelRim);
        d.relink(e, center, mid); // the spoke id survives as the outer half
        d.mint_edge(s, EdgeKind::Occupied, center, mid);
        rim.push_back(mid);
    }
    for (std::size_t i = 0; i < rim.size(); ++i)
        d.mint_edge(s, EdgeKind::Occupied, rim[i], rim[(i + 1) % rim.size()]);
}

void wheel_contract(SkeletonDecomposition& d, VertexId center) {
    const Multigraph& g = d.arena();
    if (d.vertex_kind(center) != VertexKind::Virtual)
        fail(Errc::VirtualVertex, "wheel_contract: center must be a virtual vertex");
    // rim vertices in the cyclic order of the center's stored rotation when
    // available, else in incidence order
    std::vector<EdgeId> inner(g.incident(center).begin(), g.incident(center).end());
    auto& store = d.maint().rotation;
    if (store.size() > center.index && store[center.index].size() == inner.size())
        inner = store[center.index];
    std::vector<EdgeId> new_spokes;
    std::vector<VertexId> rim;
    for (EdgeId e : inner) {
        VertexId mid = g.opposite(e, center);
        if (d.vertex_kind(mid) != VertexKind::WheelRim)
            fail(Errc::BadInput, "wheel_contract: no wheel around this center");
        rim.push_back(mid);
    }
    for (VertexId mid : rim) {
        EdgeId outer{};
        std::vector<EdgeId> rim_edges;
        for (EdgeId e : g.incident(mid)) {
            VertexId w = g.opposite(e, mid);
            if (w == center) continue;
            if (d.vertex_kind(w) == VertexKind::WheelRim)
                rim_edges.push_back(e);
            else
                outer = e;
        }
        if (!outer.valid()) fail(Errc::BadInput, "wheel_contract: rim vertex without outer spoke");
        for (EdgeId e : rim_edges) d.remove_edge(e);
        // drop the inner half, reattach the outer half to the center
        std::vector<EdgeId> left(g.incident(mid).begin(), g.incident(mid).end());
        for (EdgeId e : left)
            if (e != outer) d.remove_edge(e);
        d.relink(outer, mid, center);
        d.remove_vertex(mid);
        new_spokes.push_back(outer);
        if (store.size() > mid.index) store[mid.index].clear();
    }
    if (store.size() > center.index) store[center.index] = new_spokes;
}

} // namespace spqr
