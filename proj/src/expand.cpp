#include "spqr/expand.hpp"

#include <algorithm>
#include <unordered_set>

#include "spqr/connectivity.hpp"
#include "spqr/operations.hpp"
#include "spqr/planarity.hpp"
#include "spqr/spqr_tree.hpp"

namespace spqr {

namespace {

using Maint = SkeletonDecomposition::Maintenance;

std::vector<EdgeId>& stored_rotation(SkeletonDecomposition& d, VertexId v) {
    auto& store = d.maint().rotation;
    if (store.size() <= v.index) store.resize(v.index + 1);
    return store[v.index];
}

} // namespace

namespace detail {

// Splits oversized polygon allocation skeletons down to the triangle around
// the allocation vertex and isolates the allocation vertex out of rigids,
// then joins the allocation subtree into one skeleton. Returns the sole
// allocation vertex of u. Rotations travel onto the fresh centers whenever
// the rigid has an embedding on record.
VertexId prepare_single_allocation(SkeletonDecomposition& d, VertexId u, bool maintain) {
    const Multigraph& g = d.arena();

    std::vector<VertexId> alloc(d.allocation_vertices(u).begin(), d.allocation_vertices(u).end());
    for (VertexId a : alloc) {
        SkeletonId s = d.skeleton_of(a);
        SkeletonClass cls = d.cached_class(s);
        if (cls == SkeletonClass::Polygon && d.skeleton_edges(s).size() > 3) {
            auto inc = g.incident(a);
            VertexId x = g.opposite(inc[0], a), y = g.opposite(inc[1], a);
            auto [tri, rest] = split_off(d, s, x, y, {inc[0], inc[1]});
            d.set_cached_class(tri, SkeletonClass::Polygon);
            d.set_cached_class(rest, SkeletonClass::Polygon);
        } else if (cls == SkeletonClass::Rigid) {
            bool transfer = maintain && d.maint().skeleton_planar(s) &&
                            !stored_rotation(d, a).empty();
            std::vector<EdgeId> old_rot;
            if (transfer) old_rot = stored_rotation(d, a);
            IsolateResult iso = isolate_vertex(d, a);
            d.set_cached_class(d.skeleton_of(iso.center_here), SkeletonClass::Rigid);
            d.set_cached_class(iso.split_off, SkeletonClass::Unknown);
            if (transfer) {
                // the fresh center inherits the isolated vertex's rotation,
                // with each old edge replaced by the matching occupied spoke
                std::unordered_map<std::uint32_t, EdgeId> spoke_by_far;
                for (EdgeId e : g.incident(iso.center_here))
                    spoke_by_far.emplace(g.opposite(e, iso.center_here).index, e);
                std::vector<EdgeId> center_rot;
                for (EdgeId old_edge : old_rot) {
                    // the old edge now lives in the split-off skeleton and
                    // connects a to the copy of its old far endpoint; map it
                    // back through origV
                    VertexId far_copy = g.opposite(old_edge, a);
                    VertexId orig = d.orig_vertex(far_copy);
                    VertexId far{};
                    for (const auto& [idx, spoke] : spoke_by_far)
                        if (d.orig_vertex(VertexId{g.tag(), idx}) == orig) far = VertexId{g.tag(), idx};
                    center_rot.push_back(spoke_by_far.at(far.index));
                    auto& far_store = stored_rotation(d, far);
                    std::replace(far_store.begin(), far_store.end(), old_edge, spoke_by_far.at(far.index));
                }
                stored_rotation(d, iso.center_here) = center_rot;
                registry_attach(d, iso.center_here, a);
                stored_rotation(d, a).clear();
            } else {
                stored_rotation(d, iso.center_here).clear();
            }
        }
    }

    // join every tree edge between two allocation skeletons of u
    for (;;) {
        EdgeId pick{};
        for (VertexId a : d.allocation_vertices(u)) {
            for (EdgeId e : g.incident(a))
                if (d.edge_kind(e) == EdgeKind::Virtual) {
                    pick = e;
                    break;
                }
            if (pick.valid()) break;
        }
        if (!pick.valid()) break;
        SkeletonId merged = join_separation_pair(d, pick);
        d.set_cached_class(merged, SkeletonClass::Unknown);
    }
    auto final_alloc = d.allocation_vertices(u);
    if (final_alloc.size() != 1) fail(Errc::AllocationNotUnique, "expansion: allocation subtree did not collapse");
    return final_alloc[0];
}

} // namespace detail

namespace {

// After integrates and parallel splits the merged skeleton is usually rigid,
// but small results degenerate into polygons or bonds.
void retag_merged(SkeletonDecomposition& d, SkeletonId s) {
    std::size_t nv = d.skeleton_vertices(s).size();
    std::size_t ne = d.skeleton_edges(s).size();
    if (nv == 2) {
        d.set_cached_class(s, SkeletonClass::Bond);
        return;
    }
    if (ne == nv) {
        bool cycle = true;
        for (VertexId v : d.skeleton_vertices(s))
            if (d.arena().degree(v) != 2) cycle = false;
        if (cycle) {
            d.set_cached_class(s, SkeletonClass::Polygon);
            return;
        }
    }
    d.set_cached_class(s, SkeletonClass::Rigid);
}

bool cyclic_equal(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size() || a.empty()) return a.size() == b.size();
    for (std::size_t s = 0; s < a.size(); ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i)
            if (a[i] != b[(s + i) % b.size()]) ok = false;
        if (ok) return true;
    }
    return false;
}

// Rotation bookkeeping around one Integrate of a local piece (center c) into
// the rigid remainder holding the twin t. Performs the structural integrate.
IntegrateResult integrate_with_rotations(SkeletonDecomposition& d, VertexId t, VertexId c, bool maintain) {
    const Multigraph& g = d.arena();
    if (!maintain) {
        auto res = integrate(d, t, c, false);
        retag_merged(d, res.merged);
        return res;
    }
    auto rot_t = stored_rotation(d, t);
    auto rot_c = stored_rotation(d, c);
    auto labels = [&](const std::vector<EdgeId>& rot, VertexId center) {
        std::vector<std::uint32_t> out;
        for (EdgeId e : rot) out.push_back(d.orig_vertex(g.opposite(e, center)).index);
        return out;
    };
    auto lt = labels(rot_t, t), lc = labels(rot_c, c);
    auto rlt = lt;
    std::reverse(rlt.begin(), rlt.end());
    bool same = cyclic_equal(lc, lt);
    bool reversed = cyclic_equal(lc, rlt);
    if (!same && !reversed)
        fail(Errc::BadInput, "integrate: center rotations are incompatible despite the wheel");
    // equal stored center rotations mean the two frames are mirrored
    registry_union(d, t, c, same);

    struct PairInfo {
        VertexId out, in;
        EdgeId spoke_out, spoke_in;
    };
    std::vector<PairInfo> pairs;
    {
        std::unordered_map<std::uint32_t, std::pair<VertexId, EdgeId>> by_label;
        for (EdgeId e : g.incident(t)) {
            VertexId w = g.opposite(e, t);
            by_label.emplace(d.orig_vertex(w).index, std::make_pair(w, e));
        }
        for (EdgeId e : g.incident(c)) {
            VertexId w = g.opposite(e, c);
            auto it = by_label.at(d.orig_vertex(w).index);
            pairs.push_back({it.first, w, it.second, e});
        }
    }

    auto res = integrate(d, t, c, false);
    retag_merged(d, res.merged);

    auto& store = d.maint().rotation;
    for (const PairInfo& p : pairs) {
        VertexId kept{}, gone{};
        EdgeId spoke_kept{}, spoke_gone{};
        for (auto [k, dead] : res.identified) {
            if (k == p.out || dead == p.out) {
                kept = k;
                gone = dead;
                break;
            }
        }
        if (!kept.valid()) continue;
        bool kept_is_out = (kept == p.out);
        spoke_kept = kept_is_out ? p.spoke_out : p.spoke_in;
        spoke_gone = kept_is_out ? p.spoke_in : p.spoke_out;

        auto [rk, pk] = rigid_find(d, kept);
        auto [rg, pg] = rigid_find(d, gone);
        (void)rk;
        (void)rg;
        bool flip = pk != pg;

        std::vector<EdgeId> donor = store.size() > gone.index ? store[gone.index] : std::vector<EdgeId>{};
        auto it = std::find(donor.begin(), donor.end(), spoke_gone);
        std::vector<EdgeId> segment;
        if (it != donor.end()) {
            std::size_t pos = static_cast<std::size_t>(it - donor.begin());
            for (std::size_t i = 1; i < donor.size(); ++i) segment.push_back(donor[(pos + i) % donor.size()]);
            if (flip) std::reverse(segment.begin(), segment.end());
        }
        auto& target = stored_rotation(d, kept);
        auto kt = std::find(target.begin(), target.end(), spoke_kept);
        if (kt != target.end() && !segment.empty()) {
            std::size_t pos = static_cast<std::size_t>(kt - target.begin());
            target.erase(target.begin() + pos);
            target.insert(target.begin() + pos, segment.begin(), segment.end());
        } else if (kt != target.end()) {
            target.erase(kt);
        }
        if (store.size() > gone.index) store[gone.index].clear();
    }
    if (store.size() > t.index) store[t.index].clear();
    if (store.size() > c.index) store[c.index].clear();
    return res;
}

// The identification can stack edges from both sides between two identified
// vertices; the unique SPQR-tree keeps rigids simple, so each new parallel
// class is split off as a bond. While rotations are maintained the parallels
// of one class sit next to each other in the stored rotation (anything else
// would be non-planar), so the fix-up is local.
std::vector<SkeletonId> split_new_parallels(SkeletonDecomposition& d, SkeletonId merged,
                                            const std::vector<std::pair<VertexId, VertexId>>& identified,
                                            bool maintain) {
    const Multigraph& g = d.arena();
    std::vector<SkeletonId> bonds;
    std::unordered_set<std::uint32_t> kept_set;
    for (auto [kept, gone] : identified) kept_set.insert(kept.index);
    for (auto [kept, gone] : identified) {
        if (!g.is_vertex(kept)) continue;
        std::unordered_map<std::uint32_t, std::vector<EdgeId>> classes;
        for (EdgeId e : g.incident(kept)) {
            VertexId far = g.opposite(e, kept);
            if (kept_set.count(far.index) && far.index > kept.index) classes[far.index].push_back(e);
        }
        for (auto& [far_index, group] : classes) {
            if (group.size() < 2) continue;
            std::sort(group.begin(), group.end());
            VertexId far{g.tag(), far_index};
            auto [bond, rest] = split_off(d, merged, kept, far, group);
            d.set_cached_class(bond, SkeletonClass::Bond);
            retag_merged(d, rest);
            bonds.push_back(bond);
            if (maintain) {
                // the fresh virtual edge takes the slot of the adjacent pair
                EdgeId fresh{};
                for (EdgeId e : g.incident(kept))
                    if (d.edge_kind(e) == EdgeKind::Virtual && g.opposite(e, kept) == far &&
                        d.skeleton_of(e) == rest)
                        fresh = e;
                for (VertexId endpoint : {kept, far}) {
                    auto& rot = stored_rotation(d, endpoint);
                    std::vector<EdgeId> cleaned;
                    bool placed = false;
                    for (EdgeId e : rot) {
                        bool in_group = std::find(group.begin(), group.end(), e) != group.end();
                        if (in_group) {
                            if (!placed) {
                                cleaned.push_back(fresh);
                                placed = true;
                            }
                        } else {
                            cleaned.push_back(e);
                        }
                    }
                    rot = std::move(cleaned);
                }
            }
        }
    }
    return bonds;
}

// Step 5 and 6: re-decompose the local skeleton, integrate every remaining
// twin pair and join same-class neighbors. Occupied wheels pin the pieces to
// the rotations of the rigid remainders; when that works (it is sound: the
// glued rigid inherits the spliced embedding), the whole step is local. A
// piece without a usable wheel, or one that refuses to embed against its
// wheel (the remainder minus its center can be separable, which leaves the
// true embedding more freedom than the wheel grants), falls back to an
// exact re-embedding of the merged rigid. Planarity bits stay exact either
// way. Returns the surviving skeletons of the touched region.
std::vector<SkeletonId> redecompose_local(SkeletonDecomposition& d, SkeletonId local) {
    const Multigraph& g = d.arena();
    Maint& m = d.maint();
    std::vector<VertexId> centers;
    for (VertexId v : d.skeleton_vertices(local))
        if (d.vertex_kind(v) == VertexKind::Virtual) centers.push_back(v);
    std::sort(centers.begin(), centers.end());

    std::unordered_set<std::uint32_t> wheeled;
    for (VertexId c : centers) {
        VertexId t = d.twin_vertex(c);
        if (!m.skeleton_planar(d.skeleton_of(t))) continue;
        const auto& rot_t = stored_rotation(d, t);
        if (rot_t.size() != g.degree(c)) continue;
        std::unordered_map<std::uint32_t, EdgeId> spoke_by_label;
        for (EdgeId e : g.incident(c))
            spoke_by_label.emplace(d.orig_vertex(g.opposite(e, c)).index, e);
        std::vector<EdgeId> order;
        for (EdgeId e : rot_t) order.push_back(spoke_by_label.at(d.orig_vertex(g.opposite(e, t)).index));
        wheel_install(d, c, order);
        wheeled.insert(c.index);
    }

    auto pieces = decompose_skeleton(d, local);

    // embed every non-trivial piece: the planarity bits must stay exact
    for (SkeletonId s : pieces) {
        SkeletonClass cls = d.cached_class(s);
        if (cls == SkeletonClass::Polygon || cls == SkeletonClass::Bond) continue;
        embed_and_store(d, s);
    }
    for (VertexId c : centers)
        if (wheeled.count(c.index)) wheel_contract(d, c);

    // integrate every center into its partner; splice rotations along the
    // wheel-pinned path, otherwise re-embed the merged rigid afterwards
    std::vector<SkeletonId> extra;
    std::vector<SkeletonId> reembed;
    for (VertexId c : centers) {
        if (!g.is_vertex(c)) continue;
        VertexId t = d.twin_vertex(c);
        bool fast = wheeled.count(c.index) && m.skeleton_planar(d.skeleton_of(c)) &&
                    m.skeleton_planar(d.skeleton_of(t)) && !stored_rotation(d, c).empty() &&
                    !stored_rotation(d, t).empty();
        auto res = integrate_with_rotations(d, t, c, fast);
        auto bonds = split_new_parallels(d, res.merged, res.identified, fast);
        extra.insert(extra.end(), bonds.begin(), bonds.end());
        extra.push_back(res.merged);
        if (!fast) reembed.push_back(res.merged);
    }
    for (SkeletonId s : reembed) {
        if (!d.skeleton_alive(s)) continue;
        if (d.cached_class(s) != SkeletonClass::Rigid) {
            m.set_skeleton_planar(s, true); // polygons and bonds are planar
            continue;
        }
        embed_and_store(d, s);
    }

    // collect survivors and join same-class neighbors
    std::vector<SkeletonId> touched;
    for (SkeletonId s : pieces)
        if (d.skeleton_alive(s)) touched.push_back(s);
    for (SkeletonId s : extra)
        if (d.skeleton_alive(s)) touched.push_back(s);
    return normalize_adjacent(d, touched);
}

} // namespace

ExpandResult insert_graph_spqr(SkeletonDecomposition& d, VertexId u, const Multigraph& part,
                               const std::vector<VertexId>& marked,
                               const std::unordered_map<VertexId, VertexId, VertexIdHash>& phi) {
    if (!d.spqr_clean()) fail(Errc::NotSpqrTree, "insert_graph_spqr: input is not a maintained SPQR-tree");
    d.represented().check_vertex(u);
    std::unordered_set<std::uint32_t> repr_neighbors;
    for (EdgeId e : d.represented().incident(u)) repr_neighbors.insert(d.represented().opposite(e, u).index);
    if (marked.size() != repr_neighbors.size())
        fail(Errc::ArityMismatch, "insert_graph_spqr: |marked| must equal the number of distinct neighbors");
    std::unordered_set<std::uint32_t> phi_targets;
    for (VertexId m : marked) {
        auto it = phi.find(m);
        if (it == phi.end()) fail(Errc::ArityMismatch, "insert_graph_spqr: phi misses a marked vertex");
        if (!repr_neighbors.count(it->second.index) || !phi_targets.insert(it->second.index).second)
            fail(Errc::ArityMismatch, "insert_graph_spqr: phi is not a bijection onto the neighbors");
    }
    if (!collapse_biconnected(part, marked))
        fail(Errc::CollapseNotBiconnected, "insert_graph_spqr: part fails the collapse condition");

    VertexId v = detail::prepare_single_allocation(d, u, d.maint().initialized);
    auto skel_phi = [&] {
        std::unordered_map<std::uint32_t, VertexId> neighbor_by_repr;
        for (EdgeId e : d.arena().incident(v))
            neighbor_by_repr.emplace(d.orig_vertex(d.arena().opposite(e, v)).index, d.arena().opposite(e, v));
        std::unordered_map<VertexId, VertexId, VertexIdHash> out;
        for (const auto& [m, r] : phi) out.emplace(m, neighbor_by_repr.at(r.index));
        return out;
    }();

    InsertResult ins = insert_graph(d, u, part, marked, skel_phi);
    auto integ = integrate(d, ins.center_old, ins.center_new, false);
    d.set_cached_class(integ.merged, SkeletonClass::Unknown);

    redecompose_local(d, integ.merged);
    d.set_spqr_clean(true);

    ExpandResult out;
    out.repr_vertex_map = std::move(ins.repr_vertex_map);
    out.repr_edge_map = std::move(ins.repr_edge_map);
    return out;
}

MergeResult merge_spqr(SkeletonDecomposition& d, SkeletonDecomposition&& other, VertexId u1, VertexId u2,
                       const std::unordered_map<EdgeId, EdgeId, EdgeIdHash>& phi) {
    if (!d.spqr_clean() || !other.spqr_clean())
        fail(Errc::NotSpqrTree, "merge_spqr: both inputs must be maintained SPQR-trees");
    d.represented().check_vertex(u1);
    other.represented().check_vertex(u2);
    if (d.represented().degree(u1) != other.represented().degree(u2))
        fail(Errc::DegreeMismatch, "merge_spqr: endpoint degrees differ");
    std::unordered_set<std::uint32_t> targets;
    for (EdgeId e1 : d.represented().incident(u1)) {
        auto it = phi.find(e1);
        if (it == phi.end()) fail(Errc::ArityMismatch, "merge_spqr: phi misses an edge at u1");
        bool at_u2 = false;
        for (EdgeId e2 : other.represented().incident(u2)) at_u2 |= (e2 == it->second);
        if (!at_u2 || !targets.insert(it->second.index).second)
            fail(Errc::ArityMismatch, "merge_spqr: phi is not a bijection onto the edges at u2");
    }

    VertexId v1 = detail::prepare_single_allocation(d, u1, d.maint().initialized);
    VertexId v2 = detail::prepare_single_allocation(other, u2, other.maint().initialized);

    auto maps = d.absorb(other);
    VertexId v2m = maps.arena_vertex.at(v2.index);
    VertexId u2m = maps.repr_vertex.at(u2.index);

    // unite the two allocation skeletons into one container and bridge the
    // paired edges (subdivide-and-identify collapses to direct reattachment)
    SkeletonId m1 = d.skeleton_of(v1), m2 = d.skeleton_of(v2m);
    SkeletonId big = m1, small = m2;
    if (d.skeleton_vertices(big).size() + d.skeleton_edges(big).size() <
        d.skeleton_vertices(small).size() + d.skeleton_edges(small).size())
        std::swap(big, small);
    {
        std::vector<VertexId> mv(d.skeleton_vertices(small).begin(), d.skeleton_vertices(small).end());
        std::vector<EdgeId> me(d.skeleton_edges(small).begin(), d.skeleton_edges(small).end());
        for (EdgeId e : me) d.move_edge(e, big);
        for (VertexId v : mv) d.move_vertex(v, big);
        d.retire_skeleton(small);
        d.set_cached_class(big, SkeletonClass::Unknown);
    }

    MergeResult out;
    for (const auto& [idx, mapped] : maps.repr_vertex)
        if (mapped != u2m) out.repr_vertex_map.emplace(VertexId{other.represented().tag(), idx}, mapped);

    std::vector<EdgeId> at_u1(d.represented().incident(u1).begin(), d.represented().incident(u1).end());
    std::sort(at_u1.begin(), at_u1.end());
    for (EdgeId e1 : at_u1) {
        EdgeId e2 = phi.at(e1);
        EdgeId e2m = maps.repr_edge.at(e2.index);
        EdgeId r1 = d.real_edge_of(e1);
        EdgeId r2 = d.real_edge_of(e2m);
        VertexId x = d.arena().opposite(r1, v1);
        VertexId y = d.arena().opposite(r2, v2m);
        d.remove_edge(r1);
        d.remove_edge(r2);
        d.relink_repr(e1, u1, d.orig_vertex(y));
        d.delete_repr_edge(e2m);
        d.mint_edge(big, EdgeKind::Real, x, y, e1);
        out.repr_edge_map.emplace(e2, e1);
    }
    for (const auto& [idx, mapped] : maps.repr_edge) {
        EdgeId orig{other.represented().tag(), idx};
        if (!out.repr_edge_map.count(orig)) out.repr_edge_map.emplace(orig, mapped);
    }
    d.remove_vertex(v1);
    d.remove_vertex(v2m);
    d.delete_repr_vertex(u1);
    d.delete_repr_vertex(u2m);

    redecompose_local(d, big);
    d.set_spqr_clean(true);
    return out;
}

} // namespace spqr
