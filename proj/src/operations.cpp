#include "spqr/operations.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace spqr {

namespace {

bool is_pair_incident(const SkeletonDecomposition& d, EdgeId e, VertexId u, VertexId v) {
    auto [x, y] = d.arena().endpoints(e);
    return x == u || x == v || y == u || y == v;
}

} // namespace

std::pair<SkeletonId, SkeletonId> split_off(SkeletonDecomposition& d, SkeletonId mu, VertexId u,
                                            VertexId v, const std::vector<EdgeId>& seeds) {
    const Multigraph& g = d.arena();
    if (!d.skeleton_alive(mu)) fail(Errc::InvalidHandle, "split: dead skeleton");
    if (u == v) fail(Errc::BadInput, "split: pair vertices must differ");
    if (d.skeleton_of(u) != mu || d.skeleton_of(v) != mu)
        fail(Errc::BadInput, "split: pair vertices not in the skeleton");
    if (d.vertex_kind(u) != VertexKind::Regular || d.vertex_kind(v) != VertexKind::Regular)
        fail(Errc::VirtualPairVertex, "split: separation pair vertices may not be virtual");
    if (seeds.empty()) fail(Errc::BadBipartition, "split: side A is empty");

    std::unordered_set<std::uint32_t> seed_set;
    for (EdgeId e : seeds) {
        if (d.skeleton_of(e) != mu) fail(Errc::BadInput, "split: seed edge not in the skeleton");
        if (!is_pair_incident(d, e, u, v)) fail(Errc::BadBipartition, "split: seed edge not incident to the pair");
        seed_set.insert(e.index);
    }

    // discover side A: interior vertices and all edges, never walking through u or v
    std::unordered_set<std::uint32_t> edge_in_a;
    std::vector<VertexId> interior;
    std::unordered_set<std::uint32_t> interior_set;
    std::vector<VertexId> stack;
    auto visit_vertex = [&](VertexId w) {
        if (w == u || w == v) return;
        if (interior_set.insert(w.index).second) {
            interior.push_back(w);
            stack.push_back(w);
        }
    };
    for (EdgeId e : seeds) {
        if (!edge_in_a.insert(e.index).second) continue;
        auto [x, y] = g.endpoints(e);
        visit_vertex(x);
        visit_vertex(y);
    }
    while (!stack.empty()) {
        VertexId w = stack.back();
        stack.pop_back();
        for (EdgeId e : g.incident(w)) {
            if (!edge_in_a.insert(e.index).second) continue;
            VertexId x = g.opposite(e, w);
            if (x == u || x == v) {
                if (!seed_set.count(e.index))
                    fail(Errc::BadBipartition, "split: side A is not a union of bridges");
                continue;
            }
            visit_vertex(x);
        }
    }
    if (edge_in_a.size() >= d.skeleton_edges(mu).size())
        fail(Errc::BadBipartition, "split: side B is empty");

    SkeletonId alpha = d.new_skeleton();
    VertexId ua = d.mint_vertex(alpha, VertexKind::Regular, d.orig_vertex(u));
    VertexId va = d.mint_vertex(alpha, VertexKind::Regular, d.orig_vertex(v));
    for (VertexId w : interior) d.move_vertex(w, alpha);
    std::vector<EdgeId> a_edges;
    a_edges.reserve(edge_in_a.size());
    for (EdgeId e : seeds)
        if (edge_in_a.count(e.index)) a_edges.push_back(e); // seeds first, deterministic
    for (VertexId w : interior)
        for (EdgeId e : g.incident(w)) a_edges.push_back(e);
    std::unordered_set<std::uint32_t> moved;
    for (EdgeId e : a_edges) {
        if (!moved.insert(e.index).second) continue;
        d.move_edge(e, alpha);
        for (int pass = 0; pass < 2; ++pass) {
            auto [x, y] = g.endpoints(e);
            if (x == u || y == u) d.relink(e, u, ua);
            else if (x == v || y == v) d.relink(e, v, va);
            else break;
        }
    }
    EdgeId e_alpha = d.mint_edge(alpha, EdgeKind::Virtual, ua, va);
    EdgeId e_beta = d.mint_edge(mu, EdgeKind::Virtual, u, v);
    d.set_twin_edges(e_alpha, e_beta);
    d.set_spqr_clean(false);
    d.set_cached_class(mu, SkeletonClass::Unknown);
    d.bump_work(edge_in_a.size() + interior.size());
    return {alpha, mu};
}

std::pair<SkeletonId, SkeletonId> split_separation_pair(SkeletonDecomposition& d, SkeletonId mu,
                                                        VertexId u, VertexId v,
                                                        const std::vector<Bridge>& side_a,
                                                        const std::vector<Bridge>& side_b) {
    if (!d.skeleton_alive(mu)) fail(Errc::InvalidHandle, "split: dead skeleton");
    if (d.skeleton_of(u) != mu || d.skeleton_of(v) != mu)
        fail(Errc::BadInput, "split: pair vertices not in the skeleton");
    if (d.vertex_kind(u) != VertexKind::Regular || d.vertex_kind(v) != VertexKind::Regular)
        fail(Errc::VirtualPairVertex, "split: separation pair vertices may not be virtual");
    if (side_a.empty() || side_b.empty()) fail(Errc::BadBipartition, "split: bipartition must be non-trivial");
    if (!is_separation_pair(d.arena(), u, v))
        fail(Errc::NotSeparationPair, "split: {u,v} is not a separation pair of the skeleton");

    // the two sides must exactly partition the bridges at {u,v}
    auto bridges = bridges_at(d.arena(), u, v);
    auto bridge_key = [](const Bridge& b) { return b.edges; };
    std::vector<std::vector<EdgeId>> want;
    for (const Bridge& b : bridges) want.push_back(bridge_key(b));
    std::sort(want.begin(), want.end());
    std::vector<std::vector<EdgeId>> given;
    for (const Bridge& b : side_a) {
        auto k = bridge_key(b);
        std::sort(k.begin(), k.end());
        given.push_back(std::move(k));
    }
    for (const Bridge& b : side_b) {
        auto k = bridge_key(b);
        std::sort(k.begin(), k.end());
        given.push_back(std::move(k));
    }
    std::sort(given.begin(), given.end());
    if (given != want) fail(Errc::BadBipartition, "split: sides do not partition the bridges at the pair");

    std::vector<EdgeId> seeds;
    for (const Bridge& b : side_a)
        for (EdgeId e : b.edges)
            if (is_pair_incident(d, e, u, v)) seeds.push_back(e);
    return split_off(d, mu, u, v, seeds);
}

SkeletonId join_separation_pair(SkeletonDecomposition& d, EdgeId e) {
    if (!d.arena().is_edge(e)) fail(Errc::InvalidHandle, "join: dead edge");
    if (d.edge_kind(e) != EdgeKind::Virtual) fail(Errc::NotVirtualEdge, "join: edge is not virtual");
    EdgeId t = d.twin_edge(e);
    SkeletonId sa = d.skeleton_of(e), sb = d.skeleton_of(t);
    if (sa == sb) fail(Errc::BadInput, "join: twins in one skeleton");

    // survivor: the larger side stays in place
    std::size_t size_a = d.skeleton_vertices(sa).size() + d.skeleton_edges(sa).size();
    std::size_t size_b = d.skeleton_vertices(sb).size() + d.skeleton_edges(sb).size();
    SkeletonId surv = size_a >= size_b ? sa : sb;
    SkeletonId gone = surv == sa ? sb : sa;
    EdgeId e_surv = surv == sa ? e : t;
    EdgeId e_gone = surv == sa ? t : e;

    auto [ks1, ks2] = d.arena().endpoints(e_surv);
    auto [kg1, kg2] = d.arena().endpoints(e_gone);
    VertexId s1 = ks1, s2 = ks2, g1 = kg1, g2 = kg2;
    if (d.orig_vertex(s1) == d.orig_vertex(g2)) std::swap(g1, g2);
    if (d.orig_vertex(s1) != d.orig_vertex(g1) || d.orig_vertex(s2) != d.orig_vertex(g2))
        fail(Errc::BadInput, "join: twin endpoints do not map to the same represented vertices");

    d.remove_edge(e_surv);
    d.remove_edge(e_gone);

    std::vector<VertexId> gone_verts(d.skeleton_vertices(gone).begin(), d.skeleton_vertices(gone).end());
    std::vector<EdgeId> gone_edges(d.skeleton_edges(gone).begin(), d.skeleton_edges(gone).end());
    for (EdgeId ge : gone_edges) d.move_edge(ge, surv);
    for (VertexId gv : gone_verts)
        if (gv != g1 && gv != g2) d.move_vertex(gv, surv);
    for (auto [from, to] : {std::pair{g1, s1}, std::pair{g2, s2}}) {
        std::vector<EdgeId> inc(d.arena().incident(from).begin(), d.arena().incident(from).end());
        for (EdgeId ie : inc) d.relink(ie, from, to);
        d.remove_vertex(from);
    }
    d.retire_skeleton(gone);
    d.set_spqr_clean(false);
    d.set_cached_class(surv, SkeletonClass::Unknown);
    d.bump_work(gone_verts.size() + gone_edges.size());
    return surv;
}

IsolateResult isolate_vertex(SkeletonDecomposition& d, VertexId v) {
    const Multigraph& g = d.arena();
    if (!g.is_vertex(v)) fail(Errc::InvalidHandle, "isolate: dead vertex");
    if (d.vertex_kind(v) != VertexKind::Regular) fail(Errc::VirtualVertex, "isolate: vertex is virtual");
    for (EdgeId e : g.incident(v))
        if (d.edge_kind(e) == EdgeKind::Occupied) fail(Errc::OccupiedAtVertex, "isolate: occupied edge at vertex");

    SkeletonId mu = d.skeleton_of(v);
    std::vector<VertexId> neighbors;
    std::unordered_set<std::uint32_t> seen;
    for (EdgeId e : g.incident(v)) {
        VertexId w = g.opposite(e, v);
        if (seen.insert(w.index).second) neighbors.push_back(w);
    }
    if (neighbors.size() < 2) fail(Errc::TooFewNeighbors, "isolate: needs at least two distinct neighbors");

    SkeletonId beta = d.new_skeleton();
    d.move_vertex(v, beta);
    std::vector<EdgeId> star(g.incident(v).begin(), g.incident(v).end());
    std::unordered_map<std::uint32_t, VertexId> copy_of;
    for (VertexId w : neighbors) copy_of[w.index] = d.mint_vertex(beta, VertexKind::Regular, d.orig_vertex(w));
    for (EdgeId e : star) {
        VertexId w = g.opposite(e, v);
        d.move_edge(e, beta);
        d.relink(e, w, copy_of[w.index]);
    }
    VertexId ca = d.mint_vertex(mu, VertexKind::Virtual);
    VertexId cb = d.mint_vertex(beta, VertexKind::Virtual);
    for (VertexId w : neighbors) {
        d.mint_edge(mu, EdgeKind::Occupied, w, ca);
        d.mint_edge(beta, EdgeKind::Occupied, copy_of[w.index], cb);
    }
    d.set_twin_vertices(ca, cb);
    d.set_spqr_clean(false);
    d.set_cached_class(mu, SkeletonClass::Unknown);
    d.bump_work(star.size() + neighbors.size());
    return {ca, cb, beta};
}

namespace {

// Builds the would-be merged skeleton and checks its biconnectivity without
// touching the decomposition. Integrate on a valid but hand-crafted state can
// otherwise leave a skeleton with a cutvertex.
bool merged_stays_biconnected(const SkeletonDecomposition& d, VertexId v_alpha, VertexId v_beta) {
    const Multigraph& g = d.arena();
    Multigraph probe;
    std::unordered_map<std::uint32_t, VertexId> map;
    std::unordered_map<std::uint32_t, std::uint32_t> pair_of; // beta neighbor -> alpha neighbor, via origV
    for (EdgeId e : g.incident(v_alpha)) {
        VertexId w = g.opposite(e, v_alpha);
        pair_of.emplace(d.orig_vertex(w).index, w.index);
    }
    auto scratch = [&](VertexId x) {
        auto it = map.find(x.index);
        if (it != map.end()) return it->second;
        VertexId s = probe.add_vertex();
        map.emplace(x.index, s);
        return s;
    };
    for (SkeletonId s : {d.skeleton_of(v_alpha), d.skeleton_of(v_beta)}) {
        for (EdgeId e : d.skeleton_edges(s)) {
            auto [x, y] = g.endpoints(e);
            if (x == v_alpha || y == v_alpha || x == v_beta || y == v_beta) continue;
            auto resolve = [&](VertexId w) {
                if (d.skeleton_of(w) == d.skeleton_of(v_beta) && d.orig_vertex(w).valid()) {
                    auto it = pair_of.find(d.orig_vertex(w).index);
                    if (it != pair_of.end()) return scratch(VertexId{g.tag(), it->second});
                }
                return scratch(w);
            };
            probe.add_edge(resolve(x), resolve(y));
        }
    }
    return is_biconnected(probe);
}

} // namespace

IntegrateResult integrate(SkeletonDecomposition& d, VertexId v_alpha, VertexId v_beta, bool check_result) {
    const Multigraph& g = d.arena();
    if (!g.is_vertex(v_alpha) || !g.is_vertex(v_beta)) fail(Errc::InvalidHandle, "integrate: dead vertex");
    if (d.vertex_kind(v_alpha) != VertexKind::Virtual || d.vertex_kind(v_beta) != VertexKind::Virtual ||
        d.twin_vertex(v_alpha) != v_beta)
        fail(Errc::NotTwinnedPair, "integrate: vertices are not a twinV pair");
    if (check_result && !merged_stays_biconnected(d, v_alpha, v_beta))
        fail(Errc::NotBiconnected, "integrate: identification would break skeleton biconnectivity");
    SkeletonId sa = d.skeleton_of(v_alpha), sb = d.skeleton_of(v_beta);

    std::size_t size_a = d.skeleton_vertices(sa).size() + d.skeleton_edges(sa).size();
    std::size_t size_b = d.skeleton_vertices(sb).size() + d.skeleton_edges(sb).size();
    SkeletonId surv = size_a >= size_b ? sa : sb;
    SkeletonId gone = surv == sa ? sb : sa;
    VertexId c_surv = surv == sa ? v_alpha : v_beta;
    VertexId c_gone = surv == sa ? v_beta : v_alpha;

    // match neighbors through origV (the gamma bijection)
    std::unordered_map<std::uint32_t, VertexId> surv_by_orig;
    for (EdgeId e : g.incident(c_surv)) {
        VertexId w = g.opposite(e, c_surv);
        surv_by_orig.emplace(d.orig_vertex(w).index, w);
    }
    std::vector<std::pair<VertexId, VertexId>> identified;
    for (EdgeId e : g.incident(c_gone)) {
        VertexId w = g.opposite(e, c_gone);
        auto it = surv_by_orig.find(d.orig_vertex(w).index);
        if (it == surv_by_orig.end())
            fail(Errc::NotTwinnedPair, "integrate: star neighborhoods do not match");
        identified.emplace_back(it->second, w);
    }
    if (identified.size() != surv_by_orig.size())
        fail(Errc::NotTwinnedPair, "integrate: star degrees differ");

    auto drop_center = [&](VertexId c) {
        std::vector<EdgeId> star(g.incident(c).begin(), g.incident(c).end());
        for (EdgeId e : star) d.remove_edge(e);
        d.remove_vertex(c);
    };
    drop_center(c_surv);
    drop_center(c_gone);

    std::vector<VertexId> gone_verts(d.skeleton_vertices(gone).begin(), d.skeleton_vertices(gone).end());
    std::vector<EdgeId> gone_edges(d.skeleton_edges(gone).begin(), d.skeleton_edges(gone).end());
    for (EdgeId e : gone_edges) d.move_edge(e, surv);
    std::unordered_set<std::uint32_t> dying;
    for (auto [kept, dead] : identified) dying.insert(dead.index);
    for (VertexId w : gone_verts)
        if (!dying.count(w.index)) d.move_vertex(w, surv);
    for (auto [kept, dead] : identified) {
        std::vector<EdgeId> inc(g.incident(dead).begin(), g.incident(dead).end());
        for (EdgeId e : inc) d.relink(e, dead, kept);
        d.remove_vertex(dead);
    }
    d.retire_skeleton(gone);
    d.set_spqr_clean(false);
    d.set_cached_class(surv, SkeletonClass::Unknown);
    d.bump_work(gone_verts.size() + gone_edges.size() + identified.size());
    return {surv, std::move(identified)};
}

bool collapse_biconnected(const Multigraph& part, const std::vector<VertexId>& marked) {
    std::unordered_set<std::uint32_t> marked_set;
    for (VertexId m : marked) {
        part.check_vertex(m);
        marked_set.insert(m.index);
    }
    // collapsing all marked vertices into one must leave the part biconnected;
    // the collapse point is modelled as a hub with one spoke per marked vertex
    {
        Multigraph probe = part; // copies share the id space
        VertexId hub = probe.add_vertex();
        for (VertexId m : marked) probe.add_edge(m, hub);
        if (!is_biconnected(probe)) return false;
    }
    // and every two marked vertices need a connection whose interior avoids
    // all other marked vertices: a direct edge or a shared unmarked component
    std::unordered_map<std::uint32_t, std::uint32_t> comp; // unmarked vertex -> component id
    std::vector<std::unordered_set<std::uint32_t>> comp_marked; // component -> adjacent marked
    for (VertexId x : part.vertices()) {
        if (marked_set.count(x.index) || comp.count(x.index)) continue;
        std::uint32_t id = static_cast<std::uint32_t>(comp_marked.size());
        comp_marked.emplace_back();
        std::vector<VertexId> stack{x};
        comp[x.index] = id;
        while (!stack.empty()) {
            VertexId w = stack.back();
            stack.pop_back();
            for (EdgeId e : part.incident(w)) {
                VertexId y = part.opposite(e, w);
                if (marked_set.count(y.index)) {
                    comp_marked[id].insert(y.index);
                } else if (!comp.count(y.index)) {
                    comp[y.index] = id;
                    stack.push_back(y);
                }
            }
        }
    }
    std::set<std::pair<std::uint32_t, std::uint32_t>> linked;
    for (EdgeId e : part.edges()) {
        auto [x, y] = part.endpoints(e);
        if (marked_set.count(x.index) && marked_set.count(y.index))
            linked.insert(std::minmax(x.index, y.index));
    }
    for (const auto& adj : comp_marked)
        for (std::uint32_t a : adj)
            for (std::uint32_t b : adj)
                if (a < b) linked.insert({a, b});
    for (std::size_t i = 0; i < marked.size(); ++i)
        for (std::size_t j = i + 1; j < marked.size(); ++j)
            if (!linked.count(std::minmax(marked[i].index, marked[j].index))) return false;
    return true;
}

InsertResult insert_graph(SkeletonDecomposition& d, VertexId u, const Multigraph& part,
                          const std::vector<VertexId>& marked,
                          const std::unordered_map<VertexId, VertexId, VertexIdHash>& phi) {
    const Multigraph& g = d.arena();
    d.represented().check_vertex(u);
    auto alloc = d.allocation_vertices(u);
    if (alloc.size() != 1) fail(Errc::AllocationNotUnique, "insert_graph: vertex needs exactly one allocation vertex");
    VertexId v = alloc[0];
    SkeletonId mu = d.skeleton_of(v);

    std::vector<VertexId> neighbors;
    std::unordered_set<std::uint32_t> nseen;
    for (EdgeId e : g.incident(v)) {
        if (d.edge_kind(e) == EdgeKind::Occupied)
            fail(Errc::OccupiedAtVertex, "insert_graph: allocation vertex touches an occupied star");
        if (d.edge_kind(e) == EdgeKind::Virtual)
            fail(Errc::BadInput, "insert_graph: allocation vertex has a virtual edge");
        VertexId w = g.opposite(e, v);
        if (nseen.insert(w.index).second) neighbors.push_back(w);
    }
    if (neighbors.size() < 2) fail(Errc::TooFewNeighbors, "insert_graph: vertex needs at least two distinct neighbors");
    if (marked.size() != neighbors.size())
        fail(Errc::ArityMismatch, "insert_graph: |marked| must equal the number of distinct neighbors");

    std::unordered_set<std::uint32_t> marked_set;
    std::unordered_set<std::uint32_t> phi_targets;
    for (VertexId m : marked) {
        part.check_vertex(m);
        if (!marked_set.insert(m.index).second) fail(Errc::ArityMismatch, "insert_graph: duplicate marked vertex");
        auto it = phi.find(m);
        if (it == phi.end()) fail(Errc::ArityMismatch, "insert_graph: phi misses a marked vertex");
        if (!nseen.count(it->second.index) || !phi_targets.insert(it->second.index).second)
            fail(Errc::ArityMismatch, "insert_graph: phi is not a bijection onto the neighbors");
    }

    if (!collapse_biconnected(part, marked))
        fail(Errc::CollapseNotBiconnected, "insert_graph: part is not biconnected under collapsed marked vertices");

    InsertResult res;
    res.nu = d.new_skeleton();
    res.center_old = v;

    auto pverts = part.vertices();
    std::sort(pverts.begin(), pverts.end());
    for (VertexId x : pverts) {
        VertexId repr = marked_set.count(x.index) ? d.orig_vertex(phi.at(x)) : d.mint_repr_vertex();
        res.repr_vertex_map.emplace(x, repr);
        res.skeleton_map.emplace(x, d.mint_vertex(res.nu, VertexKind::Regular, repr));
    }
    auto pedges = part.edges();
    std::sort(pedges.begin(), pedges.end());
    for (EdgeId e : pedges) {
        auto [x, y] = part.endpoints(e);
        EdgeId repr = d.mint_repr_edge(res.repr_vertex_map.at(x), res.repr_vertex_map.at(y));
        res.repr_edge_map.emplace(e, repr);
        d.mint_edge(res.nu, EdgeKind::Real, res.skeleton_map.at(x), res.skeleton_map.at(y), repr);
    }

    res.center_new = d.mint_vertex(res.nu, VertexKind::Virtual);
    for (VertexId m : marked) d.mint_edge(res.nu, EdgeKind::Occupied, res.skeleton_map.at(m), res.center_new);

    // old allocation vertex turns into the twin center: its real edges become
    // occupied (one per neighbor, parallels dropped) and the represented
    // vertex u disappears with all its edges
    std::vector<EdgeId> old_edges(g.incident(v).begin(), g.incident(v).end());
    std::unordered_set<std::uint32_t> kept_neighbor;
    for (EdgeId e : old_edges) {
        VertexId w = g.opposite(e, v);
        EdgeId repr = d.orig_edge(e);
        d.make_occupied(e);
        d.delete_repr_edge(repr);
        if (!kept_neighbor.insert(w.index).second) d.remove_edge(e);
    }
    d.make_virtual_vertex(v);
    d.delete_repr_vertex(u);
    d.set_twin_vertices(v, res.center_new);
    d.set_spqr_clean(false);
    d.set_cached_class(mu, SkeletonClass::Unknown);
    d.bump_work(pverts.size() + pedges.size() + old_edges.size());
    return res;
}

void exhaustive_join(SkeletonDecomposition& d) {
    if (d.twin_vertex_pairs() != 0)
        fail(Errc::TwinsRemain, "exhaustive_join: twinV pairs present, integrate them first");
    std::vector<EdgeId> virtuals;
    for (SkeletonId s : d.skeleton_ids())
        for (EdgeId e : d.skeleton_edges(s))
            if (d.edge_kind(e) == EdgeKind::Virtual) virtuals.push_back(e);
    std::sort(virtuals.begin(), virtuals.end());
    for (EdgeId e : virtuals)
        if (d.arena().is_edge(e)) join_separation_pair(d, e);
}

void exhaustive_integrate(SkeletonDecomposition& d) {
    std::vector<VertexId> centers;
    for (SkeletonId s : d.skeleton_ids())
        for (VertexId v : d.skeleton_vertices(s))
            if (d.vertex_kind(v) == VertexKind::Virtual && d.twin_vertex(v).valid() && v < d.twin_vertex(v))
                centers.push_back(v);
    std::sort(centers.begin(), centers.end());
    for (VertexId v : centers)
        if (d.arena().is_vertex(v)) integrate(d, v, d.twin_vertex(v));
}

} // namespace spqr
