#include "spqr/decomposition.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "spqr/connectivity.hpp"

namespace spqr {

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& v : items) os << "condition " << v.condition << ": " << v.detail << "\n";
    return os.str();
}

// ---------------------------------------------------------------- accessors

std::vector<SkeletonId> SkeletonDecomposition::skeleton_ids() const {
    std::vector<SkeletonId> out;
    out.reserve(live_skeletons_);
    for (SkeletonId s = 0; s < skels_.size(); ++s)
        if (skels_[s].alive) out.push_back(s);
    return out;
}

std::span<const VertexId> SkeletonDecomposition::skeleton_vertices(SkeletonId s) const {
    return skels_.at(s).verts;
}

std::span<const EdgeId> SkeletonDecomposition::skeleton_edges(SkeletonId s) const {
    return skels_.at(s).edges;
}

std::span<const VertexId> SkeletonDecomposition::allocation_vertices(VertexId repr) const {
    represented_.check_vertex(repr);
    return alloc_.at(repr.index);
}

std::vector<SkeletonId> SkeletonDecomposition::allocation_skeletons(VertexId repr) const {
    std::vector<SkeletonId> out;
    for (VertexId v : allocation_vertices(repr)) out.push_back(skeleton_of(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

EdgeId SkeletonDecomposition::real_edge_of(EdgeId repr) const {
    represented_.check_edge(repr);
    return real_of_.at(repr.index);
}

// ---------------------------------------------------------------- primitives

SkeletonId SkeletonDecomposition::new_skeleton() {
    SkeletonId s = static_cast<SkeletonId>(skels_.size());
    skels_.push_back(SkeletonRec{});
    skels_[s].alive = true;
    ++live_skeletons_;
    ++work_;
    return s;
}

void SkeletonDecomposition::retire_skeleton(SkeletonId s) {
    SkeletonRec& rec = skels_.at(s);
    if (!rec.alive) fail(Errc::InvalidHandle, "retire_skeleton: dead skeleton");
    if (!rec.verts.empty() || !rec.edges.empty()) fail(Errc::BadInput, "retire_skeleton: not empty");
    rec.alive = false;
    --live_skeletons_;
    maint_.set_skeleton_planar(s, true); // drops it from the non-planar count
    ++work_;
}

void SkeletonDecomposition::alloc_add(VertexId v) {
    VMeta& m = vmeta_[v.index];
    auto& list = alloc_.at(m.orig.index);
    m.alloc_pos = static_cast<std::uint32_t>(list.size());
    list.push_back(v);
}

void SkeletonDecomposition::alloc_remove(VertexId v) {
    VMeta& m = vmeta_[v.index];
    auto& list = alloc_.at(m.orig.index);
    std::uint32_t pos = m.alloc_pos;
    list[pos] = list.back();
    list.pop_back();
    if (pos < list.size()) vmeta_[list[pos].index].alloc_pos = pos;
}

VertexId SkeletonDecomposition::mint_vertex(SkeletonId s, VertexKind kind, VertexId orig) {
    if (!skeleton_alive(s)) fail(Errc::InvalidHandle, "mint_vertex: dead skeleton");
    VertexId v = arena_.add_vertex();
    if (vmeta_.size() < arena_.vertex_index_bound()) vmeta_.resize(arena_.vertex_index_bound());
    VMeta& m = vmeta_[v.index];
    m.skel = s;
    m.kind = kind;
    m.orig = orig;
    m.twin = VertexId{};
    m.pos = static_cast<std::uint32_t>(skels_[s].verts.size());
    skels_[s].verts.push_back(v);
    if (kind == VertexKind::Regular) {
        if (!orig.valid()) fail(Errc::BadInput, "mint_vertex: regular vertex needs an orig vertex");
        represented_.check_vertex(orig);
        alloc_add(v);
    }
    touch(s);
    return v;
}

EdgeId SkeletonDecomposition::mint_edge(SkeletonId s, EdgeKind kind, VertexId u, VertexId v, EdgeId orig) {
    if (!skeleton_alive(s)) fail(Errc::InvalidHandle, "mint_edge: dead skeleton");
    if (vmeta_.at(u.index).skel != s || vmeta_.at(v.index).skel != s)
        fail(Errc::BadInput, "mint_edge: endpoints must belong to the target skeleton");
    EdgeId e = arena_.add_edge(u, v);
    if (emeta_.size() < arena_.edge_index_bound()) emeta_.resize(arena_.edge_index_bound());
    EMeta& m = emeta_[e.index];
    m.skel = s;
    m.kind = kind;
    m.orig = orig;
    m.twin = EdgeId{};
    m.pos = static_cast<std::uint32_t>(skels_[s].edges.size());
    skels_[s].edges.push_back(e);
    if (kind == EdgeKind::Real) {
        if (!orig.valid()) fail(Errc::BadInput, "mint_edge: real edge needs an orig edge");
        represented_.check_edge(orig);
        if (real_of_.size() < represented_.edge_index_bound()) real_of_.resize(represented_.edge_index_bound());
        real_of_[orig.index] = e;
    } else if (kind == EdgeKind::Virtual) {
        ++virtual_edges_;
    }
    touch(s);
    return e;
}

void SkeletonDecomposition::move_vertex(VertexId v, SkeletonId to) {
    VMeta& m = vmeta_.at(v.index);
    SkeletonId from = m.skel;
    if (from == to) return;
    auto& old_list = skels_[from].verts;
    old_list[m.pos] = old_list.back();
    old_list.pop_back();
    if (m.pos < old_list.size()) vmeta_[old_list[m.pos].index].pos = m.pos;
    m.skel = to;
    m.pos = static_cast<std::uint32_t>(skels_[to].verts.size());
    skels_[to].verts.push_back(v);
    touch(from);
    touch(to);
}

void SkeletonDecomposition::move_edge(EdgeId e, SkeletonId to) {
    EMeta& m = emeta_.at(e.index);
    SkeletonId from = m.skel;
    if (from == to) return;
    auto& old_list = skels_[from].edges;
    old_list[m.pos] = old_list.back();
    old_list.pop_back();
    if (m.pos < old_list.size()) emeta_[old_list[m.pos].index].pos = m.pos;
    m.skel = to;
    m.pos = static_cast<std::uint32_t>(skels_[to].edges.size());
    skels_[to].edges.push_back(e);
    touch(from);
    touch(to);
}

void SkeletonDecomposition::remove_vertex(VertexId v) {
    if (arena_.degree(v) != 0) fail(Errc::BadInput, "remove_vertex: vertex still has edges");
    VMeta& m = vmeta_.at(v.index);
    if (m.kind == VertexKind::Regular) alloc_remove(v);
    if (m.kind == VertexKind::Virtual && m.twin.valid()) {
        vmeta_[m.twin.index].twin = VertexId{};
        twinv_pairs_ -= 2;
    }
    auto& list = skels_[m.skel].verts;
    list[m.pos] = list.back();
    list.pop_back();
    if (m.pos < list.size()) vmeta_[list[m.pos].index].pos = m.pos;
    touch(m.skel);
    m.skel = kNoSkeleton;
    arena_.delete_vertex(v);
}

void SkeletonDecomposition::remove_edge(EdgeId e) {
    EMeta& m = emeta_.at(e.index);
    if (m.kind == EdgeKind::Virtual) {
        --virtual_edges_;
        if (m.twin.valid()) emeta_[m.twin.index].twin = EdgeId{};
    }
    if (m.kind == EdgeKind::Real && m.orig.valid() && m.orig.index < real_of_.size())
        real_of_[m.orig.index] = EdgeId{};
    auto& list = skels_[m.skel].edges;
    list[m.pos] = list.back();
    list.pop_back();
    if (m.pos < list.size()) emeta_[list[m.pos].index].pos = m.pos;
    touch(m.skel);
    m.skel = kNoSkeleton;
    arena_.delete_edge(e);
}

void SkeletonDecomposition::relink(EdgeId e, VertexId from, VertexId to) {
    if (vmeta_.at(to.index).skel != emeta_.at(e.index).skel)
        fail(Errc::BadInput, "relink: target vertex in a different skeleton");
    arena_.relink_endpoint(e, from, to);
    touch(emeta_[e.index].skel);
}

void SkeletonDecomposition::set_twin_edges(EdgeId a, EdgeId b) {
    EMeta& ma = emeta_.at(a.index);
    EMeta& mb = emeta_.at(b.index);
    if (ma.kind != EdgeKind::Virtual || mb.kind != EdgeKind::Virtual)
        fail(Errc::NotVirtualEdge, "set_twin_edges: both edges must be virtual");
    ma.twin = b;
    mb.twin = a;
}

void SkeletonDecomposition::set_twin_vertices(VertexId a, VertexId b) {
    VMeta& ma = vmeta_.at(a.index);
    VMeta& mb = vmeta_.at(b.index);
    if (ma.kind != VertexKind::Virtual || mb.kind != VertexKind::Virtual)
        fail(Errc::VirtualVertex, "set_twin_vertices: both vertices must be virtual");
    ma.twin = b;
    mb.twin = a;
    twinv_pairs_ += 2;
}

void SkeletonDecomposition::make_virtual_vertex(VertexId v) {
    VMeta& m = vmeta_.at(v.index);
    if (m.kind != VertexKind::Regular) fail(Errc::BadInput, "make_virtual_vertex: not a regular vertex");
    alloc_remove(v);
    m.kind = VertexKind::Virtual;
    m.orig = VertexId{};
    touch(m.skel);
}

void SkeletonDecomposition::make_occupied(EdgeId e) {
    EMeta& m = emeta_.at(e.index);
    if (m.kind != EdgeKind::Real) fail(Errc::BadInput, "make_occupied: only real edges convert");
    if (m.orig.valid() && m.orig.index < real_of_.size()) real_of_[m.orig.index] = EdgeId{};
    m.kind = EdgeKind::Occupied;
    m.orig = EdgeId{};
    touch(m.skel);
}

VertexId SkeletonDecomposition::mint_repr_vertex() {
    VertexId v = represented_.add_vertex();
    if (alloc_.size() < represented_.vertex_index_bound()) alloc_.resize(represented_.vertex_index_bound());
    ++work_;
    return v;
}

EdgeId SkeletonDecomposition::mint_repr_edge(VertexId u, VertexId v) {
    EdgeId e = represented_.add_edge(u, v);
    if (real_of_.size() < represented_.edge_index_bound()) real_of_.resize(represented_.edge_index_bound());
    ++work_;
    return e;
}

void SkeletonDecomposition::delete_repr_vertex(VertexId v) {
    if (!alloc_.at(v.index).empty()) fail(Errc::BadInput, "delete_repr_vertex: allocation vertices remain");
    represented_.delete_vertex(v);
    ++work_;
}

void SkeletonDecomposition::delete_repr_edge(EdgeId e) {
    if (e.index < real_of_.size() && real_of_[e.index].valid())
        fail(Errc::BadInput, "delete_repr_edge: a real skeleton edge still maps here");
    represented_.delete_edge(e);
    ++work_;
}

void SkeletonDecomposition::relink_repr(EdgeId e, VertexId from, VertexId to) {
    represented_.relink_endpoint(e, from, to);
    ++work_;
}

SkeletonDecomposition::AbsorbMaps SkeletonDecomposition::absorb(const SkeletonDecomposition& other) {
    AbsorbMaps maps;
    auto rverts = other.represented_.vertices();
    std::sort(rverts.begin(), rverts.end());
    for (VertexId v : rverts) maps.repr_vertex.emplace(v.index, mint_repr_vertex());
    auto redges = other.represented_.edges();
    std::sort(redges.begin(), redges.end());
    for (EdgeId e : redges) {
        auto [u, v] = other.represented_.endpoints(e);
        maps.repr_edge.emplace(e.index, mint_repr_edge(maps.repr_vertex.at(u.index), maps.repr_vertex.at(v.index)));
    }
    for (SkeletonId s : other.skeleton_ids()) {
        SkeletonId here = new_skeleton();
        maps.skeleton.emplace(s, here);
        set_cached_class(here, other.cached_class(s));
        std::vector<VertexId> verts(other.skeleton_vertices(s).begin(), other.skeleton_vertices(s).end());
        std::sort(verts.begin(), verts.end());
        for (VertexId v : verts) {
            VertexKind kind = other.vertex_kind(v);
            VertexId orig = kind == VertexKind::Regular ? maps.repr_vertex.at(other.orig_vertex(v).index)
                                                        : VertexId{};
            maps.arena_vertex.emplace(v.index, mint_vertex(here, kind, orig));
        }
    }
    for (SkeletonId s : other.skeleton_ids()) {
        SkeletonId here = maps.skeleton.at(s);
        std::vector<EdgeId> edges(other.skeleton_edges(s).begin(), other.skeleton_edges(s).end());
        std::sort(edges.begin(), edges.end());
        for (EdgeId e : edges) {
            auto [u, v] = other.arena_.endpoints(e);
            EdgeKind kind = other.edge_kind(e);
            EdgeId orig = kind == EdgeKind::Real ? maps.repr_edge.at(other.orig_edge(e).index) : EdgeId{};
            maps.arena_edge.emplace(
                e.index, mint_edge(here, kind, maps.arena_vertex.at(u.index), maps.arena_vertex.at(v.index), orig));
        }
    }
    // twins
    for (const auto& [idx, here] : maps.arena_edge) {
        EdgeId e{other.arena_.tag(), idx};
        if (other.edge_kind(e) != EdgeKind::Virtual) continue;
        EdgeId twin = other.twin_edge(e);
        if (twin.valid() && e < twin) set_twin_edges(here, maps.arena_edge.at(twin.index));
    }
    for (const auto& [idx, here] : maps.arena_vertex) {
        VertexId v{other.arena_.tag(), idx};
        if (other.vertex_kind(v) != VertexKind::Virtual) continue;
        VertexId twin = other.twin_vertex(v);
        if (twin.valid() && v < twin) set_twin_vertices(here, maps.arena_vertex.at(twin.index));
    }
    // rotations and the reversal registry
    for (const auto& [idx, here] : maps.arena_vertex) {
        if (idx >= other.maint_.rotation.size() || other.maint_.rotation[idx].empty()) continue;
        std::vector<EdgeId> rot;
        for (EdgeId e : other.maint_.rotation[idx]) {
            auto it = maps.arena_edge.find(e.index);
            if (it == maps.arena_edge.end()) {
                rot.clear();
                break;
            }
            rot.push_back(it->second);
        }
        if (rot.empty()) continue;
        if (maint_.rotation.size() <= here.index) maint_.rotation.resize(here.index + 1);
        maint_.rotation[here.index] = std::move(rot);
    }
    {
        // rebuild group relations relative to each group's first absorbed member
        std::unordered_map<std::uint32_t, std::pair<std::uint32_t, bool>> anchor; // other-root -> (here idx, parity)
        auto find_other = [&](std::uint32_t x) {
            std::uint32_t root = x;
            bool parity = false;
            while (root < other.maint_.uf_parent.size() && other.maint_.uf_parent[root] != root) {
                parity = parity != (other.maint_.uf_parity[root] != 0);
                root = other.maint_.uf_parent[root];
            }
            return std::make_pair(root, parity);
        };
        auto grow = [&](std::uint32_t index) {
            if (maint_.uf_parent.size() <= index) {
                std::size_t old = maint_.uf_parent.size();
                maint_.uf_parent.resize(index + 1);
                maint_.uf_parity.resize(index + 1, 0);
                maint_.uf_size.resize(index + 1, 1);
                for (std::size_t i = old; i <= index; ++i) maint_.uf_parent[i] = static_cast<std::uint32_t>(i);
            }
        };
        std::vector<std::uint32_t> indices;
        for (const auto& [idx, here] : maps.arena_vertex)
            if (idx < other.maint_.uf_parent.size()) indices.push_back(idx);
        std::sort(indices.begin(), indices.end());
        for (std::uint32_t idx : indices) {
            VertexId here = maps.arena_vertex.at(idx);
            grow(here.index);
            auto [root, parity] = find_other(idx);
            auto it = anchor.find(root);
            if (it == anchor.end()) {
                anchor.emplace(root, std::make_pair(here.index, parity));
            } else {
                maint_.uf_parent[here.index] = it->second.first;
                maint_.uf_parity[here.index] = static_cast<std::uint8_t>(parity != it->second.second);
                maint_.uf_size[it->second.first] += 1;
            }
        }
    }
    for (const auto& [sid, here] : maps.skeleton)
        maint_.set_skeleton_planar(here, other.maint_.skeleton_planar(sid));
    maint_.initialized = maint_.initialized && other.maint_.initialized;
    bump_work(maps.arena_vertex.size() + maps.arena_edge.size());
    return maps;
}

// ---------------------------------------------------------------- trivial

SkeletonDecomposition trivial_decomposition(const Multigraph& g) {
    if (!is_biconnected(g)) fail(Errc::NotBiconnected, "trivial_decomposition: graph is not biconnected");
    SkeletonDecomposition d;
    d.represented_ = g;
    d.alloc_.resize(g.vertex_index_bound());
    d.real_of_.resize(g.edge_index_bound());
    SkeletonId s = d.new_skeleton();
    std::unordered_map<std::uint32_t, VertexId> map;
    auto verts = g.vertices();
    std::sort(verts.begin(), verts.end());
    for (VertexId v : verts) map[v.index] = d.mint_vertex(s, VertexKind::Regular, v);
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    for (EdgeId e : edges) {
        auto [u, v] = g.endpoints(e);
        d.mint_edge(s, EdgeKind::Real, map[u.index], map[v.index], e);
    }
    return d;
}

// ---------------------------------------------------------------- tree view

DecompositionTree SkeletonDecomposition::decomposition_tree() const {
    DecompositionTree t;
    t.nodes = skeleton_ids();
    for (SkeletonId s : t.nodes) {
        for (EdgeId e : skels_[s].edges) {
            const EMeta& m = emeta_[e.index];
            if (m.kind == EdgeKind::Virtual && m.twin.valid() && e < m.twin)
                t.edges.emplace_back(m.skel, emeta_[m.twin.index].skel);
        }
        for (VertexId v : skels_[s].verts) {
            const VMeta& m = vmeta_[v.index];
            if (m.kind == VertexKind::Virtual && m.twin.valid() && v < m.twin)
                t.edges.emplace_back(m.skel, vmeta_[m.twin.index].skel);
        }
    }
    return t;
}

// ---------------------------------------------------------------- validate

ValidationReport SkeletonDecomposition::validate() const {
    ValidationReport rep;
    auto bad = [&](int cond, const std::string& detail) { rep.items.push_back({cond, detail}); };

    auto vname = [&](VertexId v) { return "sv" + std::to_string(v.index); };
    auto ename = [&](EdgeId e) { return "se" + std::to_string(e.index); };

    // mapping shape per element
    std::unordered_map<std::uint32_t, EdgeId> repr_edge_seen;
    for (SkeletonId s : skeleton_ids()) {
        for (VertexId v : skels_[s].verts) {
            const VMeta& m = vmeta_[v.index];
            switch (m.kind) {
            case VertexKind::Regular:
                if (!m.orig.valid() || !represented_.is_vertex(m.orig))
                    bad(0, "origV missing or dead for " + vname(v));
                break;
            case VertexKind::Virtual: {
                if (!m.twin.valid() || !arena_.is_vertex(m.twin)) {
                    bad(7, "virtual vertex without twin: " + vname(v));
                    break;
                }
                const VMeta& tm = vmeta_[m.twin.index];
                if (tm.twin != v) bad(7, "twinV not an involution at " + vname(v));
                if (m.twin == v) bad(7, "twinV fixed point at " + vname(v));
                if (tm.skel == m.skel) bad(2, "twinV pair inside one skeleton at " + vname(v));
                for (EdgeId e : arena_.incident(v))
                    if (emeta_[e.index].kind != EdgeKind::Occupied)
                        bad(7, "non-occupied edge at virtual vertex " + vname(v));
                break;
            }
            case VertexKind::WheelRim:
                bad(0, "transient wheel vertex present: " + vname(v));
                break;
            }
        }
        for (EdgeId e : skels_[s].edges) {
            const EMeta& m = emeta_[e.index];
            auto [x, y] = arena_.endpoints(e);
            switch (m.kind) {
            case EdgeKind::Real: {
                if (!m.orig.valid() || !represented_.is_edge(m.orig)) {
                    bad(0, "origE missing or dead for " + ename(e));
                    break;
                }
                auto [it, fresh] = repr_edge_seen.emplace(m.orig.index, e);
                if (!fresh) bad(0, "origE not injective at " + ename(e) + " and " + ename(it->second));
                // condition 4
                auto [ru, rv] = represented_.endpoints(m.orig);
                VertexId ou = vmeta_[x.index].orig, ov = vmeta_[y.index].orig;
                bool match = (ou == ru && ov == rv) || (ou == rv && ov == ru);
                if (!ou.valid() || !ov.valid() || !match)
                    bad(4, "endpoints of origE mismatch at " + ename(e));
                break;
            }
            case EdgeKind::Virtual: {
                if (!m.twin.valid() || !arena_.is_edge(m.twin)) {
                    bad(0, "virtual edge without twin: " + ename(e));
                    break;
                }
                const EMeta& tm = emeta_[m.twin.index];
                if (tm.twin != e) bad(0, "twinE not an involution at " + ename(e));
                if (m.twin == e) bad(0, "twinE fixed point at " + ename(e));
                if (tm.skel == m.skel) bad(2, "twinE pair inside one skeleton at " + ename(e));
                break;
            }
            case EdgeKind::Occupied: {
                int virt = (vmeta_[x.index].kind == VertexKind::Virtual) +
                           (vmeta_[y.index].kind == VertexKind::Virtual);
                if (virt != 1) bad(7, "occupied edge with " + std::to_string(virt) + " virtual endpoints: " + ename(e));
                break;
            }
            }
        }
    }
    // origE surjective onto represented edges
    for (EdgeId re : represented_.edges())
        if (!repr_edge_seen.count(re.index)) bad(0, "represented edge not covered by origE: re" + std::to_string(re.index));
    // represented vertices = image of origV
    {
        std::unordered_set<std::uint32_t> image;
        for (SkeletonId s : skeleton_ids())
            for (VertexId v : skels_[s].verts)
                if (vmeta_[v.index].kind == VertexKind::Regular && vmeta_[v.index].orig.valid())
                    image.insert(vmeta_[v.index].orig.index);
        for (VertexId rv : represented_.vertices())
            if (!image.count(rv.index)) bad(0, "represented vertex not covered by origV: rv" + std::to_string(rv.index));
        if (image.size() != represented_.vertex_count()) bad(0, "origV image does not match represented vertex set");
    }

    // condition 1 + skeleton component closure
    for (SkeletonId s : skeleton_ids()) {
        const auto& verts = skels_[s].verts;
        if (verts.empty()) {
            bad(1, "empty skeleton s" + std::to_string(s));
            continue;
        }
        auto comp = component_of(arena_, verts[0]);
        bool closed = comp.size() == verts.size();
        for (VertexId v : comp)
            if (vmeta_[v.index].skel != s) closed = false;
        if (!closed) {
            bad(0, "skeleton s" + std::to_string(s) + " is not one arena component");
            continue;
        }
        if (!component_biconnected(arena_, verts[0]))
            bad(1, "skeleton s" + std::to_string(s) + " is not biconnected");
    }

    // condition 2: the derived tree
    {
        DecompositionTree t = decomposition_tree();
        std::set<std::pair<SkeletonId, SkeletonId>> seen;
        std::unordered_map<SkeletonId, std::vector<SkeletonId>> adj;
        for (auto [a, b] : t.edges) {
            if (a == b) bad(2, "tree self-loop at s" + std::to_string(a));
            auto key = std::minmax(a, b);
            if (!seen.insert(key).second)
                bad(2, "parallel tree edges between s" + std::to_string(a) + " and s" + std::to_string(b));
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        if (!t.nodes.empty()) {
            std::unordered_set<SkeletonId> reach{t.nodes[0]};
            std::vector<SkeletonId> stack{t.nodes[0]};
            while (!stack.empty()) {
                SkeletonId s = stack.back();
                stack.pop_back();
                for (SkeletonId w : adj[s])
                    if (reach.insert(w).second) stack.push_back(w);
            }
            if (reach.size() != t.nodes.size()) bad(2, "decomposition tree is disconnected");
            else if (seen.size() != t.nodes.size() - 1) bad(2, "decomposition tree has a cycle");
        }
    }

    // condition 3
    for (SkeletonId s : skeleton_ids()) {
        std::unordered_map<std::uint32_t, VertexId> seen;
        for (VertexId v : skels_[s].verts) {
            const VMeta& m = vmeta_[v.index];
            if (m.kind != VertexKind::Regular || !m.orig.valid()) continue;
            auto [it, fresh] = seen.emplace(m.orig.index, v);
            if (!fresh) bad(3, "origV not injective on s" + std::to_string(s) + " at " + vname(v));
        }
    }

    auto orig_set = [&](SkeletonId s) {
        std::set<std::uint32_t> out;
        for (VertexId v : skels_[s].verts)
            if (vmeta_[v.index].kind == VertexKind::Regular && vmeta_[v.index].orig.valid())
                out.insert(vmeta_[v.index].orig.index);
        return out;
    };

    // condition 5
    for (SkeletonId s : skeleton_ids()) {
        for (EdgeId e : skels_[s].edges) {
            const EMeta& m = emeta_[e.index];
            if (m.kind != EdgeKind::Virtual || !m.twin.valid() || !(e < m.twin)) continue;
            SkeletonId s2 = emeta_[m.twin.index].skel;
            auto a = orig_set(s), b = orig_set(s2);
            std::set<std::uint32_t> inter;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(inter, inter.end()));
            auto ends_of = [&](EdgeId ee) {
                auto [x, y] = arena_.endpoints(ee);
                std::set<std::uint32_t> out;
                if (vmeta_[x.index].orig.valid()) out.insert(vmeta_[x.index].orig.index);
                if (vmeta_[y.index].orig.valid()) out.insert(vmeta_[y.index].orig.index);
                return out;
            };
            auto ea = ends_of(e), eb = ends_of(m.twin);
            if (inter != ea || inter != eb)
                bad(5, "shared orig vertices of s" + std::to_string(s) + ",s" + std::to_string(s2) +
                           " do not equal the twin edge endpoints");
        }
    }

    // condition 6
    {
        DecompositionTree t = decomposition_tree();
        std::unordered_map<SkeletonId, std::vector<SkeletonId>> adj;
        for (auto [a, b] : t.edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (VertexId rv : represented_.vertices()) {
            auto skels = allocation_skeletons(rv);
            if (skels.empty()) continue;
            std::unordered_set<SkeletonId> want(skels.begin(), skels.end());
            std::unordered_set<SkeletonId> reach{skels[0]};
            std::vector<SkeletonId> stack{skels[0]};
            while (!stack.empty()) {
                SkeletonId s = stack.back();
                stack.pop_back();
                for (SkeletonId w : adj[s])
                    if (want.count(w) && reach.insert(w).second) stack.push_back(w);
            }
            if (reach.size() != want.size())
                bad(6, "allocation skeletons of rv" + std::to_string(rv.index) + " are not connected in the tree");
        }
    }

    // conditions 7 (degree/star shape) and 8
    for (SkeletonId s : skeleton_ids()) {
        for (VertexId v : skels_[s].verts) {
            const VMeta& m = vmeta_[v.index];
            if (m.kind != VertexKind::Virtual || !m.twin.valid() || !(v < m.twin)) continue;
            VertexId w = m.twin;
            if (arena_.degree(v) != arena_.degree(w))
                bad(7, "twin virtual vertices with different degrees: " + vname(v));
            auto nb_origs = [&](VertexId c) {
                std::set<std::uint32_t> out;
                std::size_t count = 0;
                for (EdgeId e : arena_.incident(c)) {
                    VertexId x = arena_.opposite(e, c);
                    if (vmeta_[x.index].orig.valid()) out.insert(vmeta_[x.index].orig.index);
                    ++count;
                }
                return std::make_pair(out, count);
            };
            auto [nv, cv] = nb_origs(v);
            auto [nw, cw] = nb_origs(w);
            if (nv.size() != cv || nw.size() != cw)
                bad(7, "occupied star endpoints not distinct at " + vname(v));
            SkeletonId s2 = vmeta_[w.index].skel;
            auto a = orig_set(s), b = orig_set(s2);
            std::set<std::uint32_t> inter;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(inter, inter.end()));
            if (inter != nv || inter != nw)
                bad(8, "shared orig vertices do not equal star neighborhoods at " + vname(v));
        }
    }

    // maintained represented graph matches the induced one (checked above via
    // coverage + condition 4); finally compare edge counts
    {
        std::size_t reals = 0;
        for (SkeletonId s : skeleton_ids())
            for (EdgeId e : skels_[s].edges)
                if (emeta_[e.index].kind == EdgeKind::Real) ++reals;
        if (reals != represented_.edge_count())
            bad(0, "real edge count differs from represented edge count");
    }

    return rep;
}

// ---------------------------------------------------------------- dump

void SkeletonDecomposition::dump(std::ostream& out,
                                 const std::function<std::string(std::uint32_t)>& vertex_label,
                                 const std::function<std::string(std::uint32_t)>& edge_label) const {
    auto name = [&](std::uint32_t repr_index) {
        return vertex_label ? vertex_label(repr_index) : std::to_string(repr_index);
    };
    auto edge_name = [&](std::uint32_t repr_index) {
        return edge_label ? edge_label(repr_index) : std::to_string(repr_index);
    };

    struct VEntry {
        std::string text;
        VertexId v;
    };
    struct SkelDump {
        SkeletonId id;
        std::string key;
        std::vector<VEntry> verts;
        std::vector<std::pair<std::string, EdgeId>> edges;
    };

    auto skeleton_vertex_text = [&](VertexId v) -> std::string {
        const VMeta& m = vmeta_[v.index];
        if (m.kind == VertexKind::Regular && m.orig.valid()) return name(m.orig.index);
        std::set<std::string> nb;
        for (EdgeId e : arena_.incident(v)) {
            VertexId x = arena_.opposite(e, v);
            if (vmeta_[x.index].orig.valid()) nb.insert(name(vmeta_[x.index].orig.index));
        }
        std::string out = m.kind == VertexKind::WheelRim ? "rim(" : "virt(";
        bool first = true;
        for (const auto& s : nb) {
            if (!first) out += ",";
            out += s;
            first = false;
        }
        return out + ")";
    };

    std::vector<SkelDump> dumps;
    for (SkeletonId s : skeleton_ids()) {
        SkelDump d;
        d.id = s;
        for (VertexId v : skels_[s].verts) d.verts.push_back({skeleton_vertex_text(v), v});
        std::sort(d.verts.begin(), d.verts.end(), [](const VEntry& a, const VEntry& b) {
            return a.text != b.text ? a.text < b.text : a.v < b.v;
        });
        for (EdgeId e : skels_[s].edges) {
            auto [x, y] = arena_.endpoints(e);
            std::string lx = skeleton_vertex_text(x), ly = skeleton_vertex_text(y);
            if (ly < lx) std::swap(lx, ly);
            const EMeta& m = emeta_[e.index];
            char kind = m.kind == EdgeKind::Real ? 'r' : (m.kind == EdgeKind::Virtual ? 'v' : 'o');
            std::string text = std::string(1, kind) + " " + lx + " " + ly;
            if (m.kind == EdgeKind::Real) text += " #" + edge_name(m.orig.index);
            d.edges.push_back({text, e});
        }
        std::sort(d.edges.begin(), d.edges.end());
        d.key = d.verts.empty() ? "" : d.verts.front().text;
        for (const auto& v : d.verts) d.key += "|" + v.text;
        for (const auto& e : d.edges) d.key += "|" + e.first;
        dumps.push_back(std::move(d));
    }
    std::sort(dumps.begin(), dumps.end(), [](const SkelDump& a, const SkelDump& b) {
        return a.key != b.key ? a.key < b.key : a.id < b.id;
    });

    std::unordered_map<SkeletonId, std::size_t> skel_pos;
    std::unordered_map<std::uint32_t, std::pair<std::size_t, std::size_t>> edge_pos; // arena edge -> (skel,edge) pos
    std::unordered_map<std::uint32_t, std::pair<std::size_t, std::size_t>> vert_pos;
    for (std::size_t i = 0; i < dumps.size(); ++i) {
        skel_pos[dumps[i].id] = i;
        for (std::size_t j = 0; j < dumps[i].edges.size(); ++j) edge_pos[dumps[i].edges[j].second.index] = {i, j};
        for (std::size_t j = 0; j < dumps[i].verts.size(); ++j) vert_pos[dumps[i].verts[j].v.index] = {i, j};
    }

    out << "decomposition " << dumps.size() << "\n";
    for (std::size_t i = 0; i < dumps.size(); ++i) {
        out << "skeleton " << i << "\n";
        for (const auto& v : dumps[i].verts) out << "  v " << v.text << "\n";
        for (const auto& e : dumps[i].edges) out << "  e " << e.first << "\n";
    }
    std::vector<std::string> twins;
    for (SkeletonId s : skeleton_ids()) {
        for (EdgeId e : skels_[s].edges) {
            const EMeta& m = emeta_[e.index];
            if (m.kind == EdgeKind::Virtual && m.twin.valid() && e < m.twin) {
                auto a = edge_pos[e.index], b = edge_pos[m.twin.index];
                if (b < a) std::swap(a, b);
                twins.push_back("tE s" + std::to_string(a.first) + ".e" + std::to_string(a.second) + " s" +
                                std::to_string(b.first) + ".e" + std::to_string(b.second));
            }
        }
        for (VertexId v : skels_[s].verts) {
            const VMeta& m = vmeta_[v.index];
            if (m.kind == VertexKind::Virtual && m.twin.valid() && v < m.twin) {
                auto a = vert_pos[v.index], b = vert_pos[m.twin.index];
                if (b < a) std::swap(a, b);
                twins.push_back("tV s" + std::to_string(a.first) + ".v" + std::to_string(a.second) + " s" +
                                std::to_string(b.first) + ".v" + std::to_string(b.second));
            }
        }
    }
    std::sort(twins.begin(), twins.end());
    out << "twins " << twins.size() << "\n";
    for (const auto& t : twins) out << "  " << t << "\n";
}

std::string SkeletonDecomposition::dump_string() const {
    std::ostringstream os;
    dump(os);
    return os.str();
}

} // namespace spqr
