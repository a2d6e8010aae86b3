#include "spqr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <unordered_set>

#include "spqr/connectivity.hpp"

namespace spqr::oracle {

namespace {

// Compact dart model: dart 2e has its tail at endpoint u of edge e, dart
// 2e+1 at endpoint v. Face permutation is rot-successor of the reversal.
struct DartSystem {
    std::vector<VertexId> verts;
    std::vector<EdgeId> edges;
    std::unordered_map<std::uint32_t, int> vidx;
    std::vector<std::vector<int>> darts_at;

    explicit DartSystem(const Multigraph& g) {
        verts = g.vertices();
        std::sort(verts.begin(), verts.end());
        edges = g.edges();
        std::sort(edges.begin(), edges.end());
        for (std::size_t i = 0; i < verts.size(); ++i) vidx[verts[i].index] = static_cast<int>(i);
        darts_at.resize(verts.size());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto [u, v] = g.endpoints(edges[e]);
            darts_at[vidx[u.index]].push_back(static_cast<int>(2 * e));
            darts_at[vidx[v.index]].push_back(static_cast<int>(2 * e + 1));
        }
    }
    std::size_t dart_count() const { return 2 * edges.size(); }
};

int face_count(const DartSystem& sys, const std::vector<int>& rot_next) {
    std::vector<char> seen(sys.dart_count(), 0);
    int faces = 0;
    for (std::size_t d0 = 0; d0 < sys.dart_count(); ++d0) {
        if (seen[d0]) continue;
        ++faces;
        int d = static_cast<int>(d0);
        do {
            seen[d] = 1;
            d = rot_next[d ^ 1];
        } while (!seen[d]);
    }
    return faces;
}

// Enumerates rotation systems; stops early when visit returns true.
// The first dart of every vertex is pinned, and at the pivot vertex only one
// of each mirror-image pair of orders is generated.
bool enumerate_rotation_systems(const DartSystem& sys,
                                const std::function<bool(const std::vector<int>&)>& visit) {
    std::size_t nv = sys.verts.size();
    std::vector<std::vector<int>> order(nv);
    for (std::size_t i = 0; i < nv; ++i) order[i] = sys.darts_at[i];

    int pivot = -1;
    std::size_t best = 0;
    for (std::size_t i = 0; i < nv; ++i)
        if (order[i].size() >= 3 && order[i].size() > best) {
            best = order[i].size();
            pivot = static_cast<int>(i);
        }

    std::vector<int> rot_next(sys.dart_count(), -1);
    auto apply = [&](std::size_t v) {
        const auto& o = order[v];
        for (std::size_t k = 0; k < o.size(); ++k) rot_next[o[k]] = o[(k + 1) % o.size()];
    };

    std::function<bool(std::size_t)> rec = [&](std::size_t v) -> bool {
        if (v == nv) return visit(rot_next);
        auto& o = order[v];
        if (o.size() <= 2) {
            apply(v);
            return rec(v + 1);
        }
        std::sort(o.begin() + 1, o.end());
        do {
            if (static_cast<int>(v) == pivot && o[1] > o.back()) continue;
            apply(v);
            if (rec(v + 1)) return true;
        } while (std::next_permutation(o.begin() + 1, o.end()));
        return false;
    };
    return rec(0);
}

Multigraph simple_version(const Multigraph& g) {
    Multigraph s;
    std::unordered_map<std::uint32_t, VertexId> map;
    for (VertexId v : g.vertices()) map[v.index] = s.add_vertex();
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.endpoints(e);
        auto key = std::minmax(u.index, v.index);
        if (seen.insert(key).second) s.add_edge(map[u.index], map[v.index]);
    }
    return s;
}

double log_system_count(const DartSystem& sys) {
    double lg = 0;
    for (const auto& o : sys.darts_at)
        for (std::size_t k = 2; k < o.size(); ++k) lg += std::log2(double(k));
    return lg;
}

} // namespace

namespace {

std::vector<std::pair<VertexId, VertexId>> separation_pairs_impl(const Multigraph& g, bool include_parallel) {
    auto verts = g.vertices();
    std::sort(verts.begin(), verts.end());
    std::vector<std::pair<VertexId, VertexId>> out;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            VertexId a = verts[i], b = verts[j];
            if (include_parallel) {
                std::size_t parallel = 0;
                for (EdgeId e : g.incident(a))
                    if (g.opposite(e, a) == b) ++parallel;
                if (parallel >= 2) {
                    out.emplace_back(a, b);
                    continue;
                }
            }
            // does removing {a,b} disconnect the rest?
            std::vector<VertexId> rest;
            for (VertexId v : verts)
                if (v != a && v != b) rest.push_back(v);
            if (rest.size() < 2) continue;
            std::unordered_set<std::uint32_t> seen{rest[0].index};
            std::vector<VertexId> stack{rest[0]};
            while (!stack.empty()) {
                VertexId v = stack.back();
                stack.pop_back();
                for (EdgeId e : g.incident(v)) {
                    VertexId w = g.opposite(e, v);
                    if (w == a || w == b) continue;
                    if (seen.insert(w.index).second) stack.push_back(w);
                }
            }
            if (seen.size() < rest.size()) out.emplace_back(a, b);
        }
    }
    return out;
}

} // namespace

std::vector<std::pair<VertexId, VertexId>> separation_pairs_bf(const Multigraph& g) {
    return separation_pairs_impl(g, true);
}

std::vector<std::pair<VertexId, VertexId>> separation_pairs_removal_bf(const Multigraph& g) {
    return separation_pairs_impl(g, false);
}

bool planar_bf(const Multigraph& g) {
    if (g.vertex_count() > 8) fail(Errc::SizeGuard, "planar_bf: more than 8 vertices");
    if (g.vertex_count() == 0) return true;
    Multigraph s = simple_version(g);
    long n = static_cast<long>(s.vertex_count());
    long m = static_cast<long>(s.edge_count());
    if (n >= 3 && m > 3 * n - 6) return false;
    if (m <= 2) return true;
    DartSystem sys(s);
    long target = 2 - n + m;
    return enumerate_rotation_systems(
        sys, [&](const std::vector<int>& rot) { return face_count(sys, rot) == target; });
}

std::vector<std::vector<EdgeId>> rotations_at_bf(const Multigraph& g, VertexId v) {
    if (g.vertex_count() > 8) fail(Errc::SizeGuard, "rotations_at_bf: more than 8 vertices");
    g.check_vertex(v);
    DartSystem sys(g);
    if (log_system_count(sys) > 24.5) fail(Errc::SizeGuard, "rotations_at_bf: too many rotation systems");
    long n = static_cast<long>(g.vertex_count());
    long m = static_cast<long>(g.edge_count());
    long target = 2 - n + m;

    std::set<std::vector<EdgeId>> classes;
    enumerate_rotation_systems(sys, [&](const std::vector<int>& rot) {
        if (face_count(sys, rot) != target) return false;
        // read off v's rotation from the dart cycle
        int first = sys.darts_at[sys.vidx.at(v.index)].front();
        std::vector<EdgeId> cyc;
        int d = first;
        do {
            cyc.push_back(sys.edges[d / 2]);
            d = rot[d];
        } while (d != first);
        classes.insert(canonical_cycle(std::move(cyc)));
        return false; // keep enumerating
    });
    return {classes.begin(), classes.end()};
}

bool menger3_bf(const Multigraph& g, VertexId a, VertexId b) {
    g.check_vertex(a);
    g.check_vertex(b);
    if (a == b) fail(Errc::BadInput, "menger3_bf: vertices must differ");

    // node-splitting flow network: in(v)=2i, out(v)=2i+1
    auto verts = g.vertices();
    std::unordered_map<std::uint32_t, int> idx;
    for (std::size_t i = 0; i < verts.size(); ++i) idx[verts[i].index] = static_cast<int>(i);

    struct Arc {
        int to, cap, rev;
    };
    std::vector<std::vector<Arc>> net(2 * verts.size());
    auto arc = [&](int from, int to, int cap) {
        net[from].push_back({to, cap, static_cast<int>(net[to].size())});
        net[to].push_back({from, 0, static_cast<int>(net[from].size()) - 1});
    };
    for (std::size_t i = 0; i < verts.size(); ++i) {
        int cap = (verts[i] == a || verts[i] == b) ? 8 : 1;
        arc(static_cast<int>(2 * i), static_cast<int>(2 * i + 1), cap);
    }
    for (EdgeId e : g.edges()) {
        auto [x, y] = g.endpoints(e);
        arc(2 * idx[x.index] + 1, 2 * idx[y.index], 1);
        arc(2 * idx[y.index] + 1, 2 * idx[x.index], 1);
    }
    int source = 2 * idx[a.index] + 1, sink = 2 * idx[b.index];
    int flow = 0;
    while (flow < 3) {
        std::vector<std::pair<int, int>> parent(net.size(), {-1, -1});
        std::vector<int> queue{source};
        parent[source] = {source, 0};
        for (std::size_t qi = 0; qi < queue.size() && parent[sink].first < 0; ++qi) {
            int u = queue[qi];
            for (std::size_t k = 0; k < net[u].size(); ++k) {
                const Arc& arc_ = net[u][k];
                if (arc_.cap > 0 && parent[arc_.to].first < 0) {
                    parent[arc_.to] = {u, static_cast<int>(k)};
                    queue.push_back(arc_.to);
                }
            }
        }
        if (parent[sink].first < 0) break;
        for (int v = sink; v != source;) {
            auto [pu, pk] = parent[v];
            net[pu][pk].cap -= 1;
            net[net[pu][pk].to][net[pu][pk].rev].cap += 1;
            v = pu;
        }
        ++flow;
    }
    return flow >= 3;
}

std::unordered_map<VertexId, VertexId, VertexIdHash>
replace_bf(Multigraph& g, VertexId u, const Multigraph& part, const std::vector<VertexId>& marked,
           const std::unordered_map<VertexId, VertexId, VertexIdHash>& embed_at) {
    g.check_vertex(u);
    std::unordered_map<VertexId, VertexId, VertexIdHash> map;
    std::unordered_set<std::uint32_t> marked_set;
    for (VertexId m : marked) {
        marked_set.insert(m.index);
        auto it = embed_at.find(m);
        if (it == embed_at.end()) fail(Errc::ArityMismatch, "replace_bf: marked vertex without partner");
        map.emplace(m, it->second);
    }
    auto pverts = part.vertices();
    std::sort(pverts.begin(), pverts.end());
    for (VertexId x : pverts)
        if (!marked_set.count(x.index)) map.emplace(x, g.add_vertex());
    auto pedges = part.edges();
    std::sort(pedges.begin(), pedges.end());
    for (EdgeId e : pedges) {
        auto [x, y] = part.endpoints(e);
        g.add_edge(map.at(x), map.at(y));
    }
    g.delete_vertex(u);
    return map;
}

std::unordered_map<VertexId, VertexId, VertexIdHash>
merge_replace_bf(Multigraph& g1, VertexId u1, const Multigraph& g2, VertexId u2,
                 const std::unordered_map<EdgeId, EdgeId, EdgeIdHash>& edge_map) {
    g1.check_vertex(u1);
    g2.check_vertex(u2);
    std::unordered_map<VertexId, VertexId, VertexIdHash> map;
    auto verts = g2.vertices();
    std::sort(verts.begin(), verts.end());
    for (VertexId x : verts) map.emplace(x, g1.add_vertex());
    auto edges = g2.edges();
    std::sort(edges.begin(), edges.end());
    for (EdgeId e : edges) {
        auto [x, y] = g2.endpoints(e);
        g1.add_edge(map.at(x), map.at(y));
    }
    std::vector<EdgeId> at_u1(g1.incident(u1).begin(), g1.incident(u1).end());
    std::sort(at_u1.begin(), at_u1.end());
    for (EdgeId e1 : at_u1) {
        auto it = edge_map.find(e1);
        if (it == edge_map.end()) fail(Errc::ArityMismatch, "merge_replace_bf: unmapped edge at u1");
        VertexId far = g2.opposite(it->second, u2);
        g1.relink_endpoint(e1, u1, map.at(far));
    }
    g1.delete_vertex(map.at(u2)); // drops the copied u2 edges
    g1.delete_vertex(u1);
    map.erase(u2);
    return map;
}

std::vector<EdgeId> canonical_cycle(std::vector<EdgeId> cycle) {
    if (cycle.size() <= 1) return cycle;
    std::vector<EdgeId> best;
    auto consider = [&](const std::vector<EdgeId>& seq) {
        for (std::size_t s = 0; s < seq.size(); ++s) {
            std::vector<EdgeId> rot(seq.size());
            for (std::size_t k = 0; k < seq.size(); ++k) rot[k] = seq[(s + k) % seq.size()];
            if (best.empty() || rot < best) best = std::move(rot);
        }
    };
    consider(cycle);
    std::reverse(cycle.begin(), cycle.end());
    consider(cycle);
    return best;
}

bool graphs_identical_by_index(const Multigraph& a, const Multigraph& b) {
    auto va = a.vertices(), vb = b.vertices();
    auto key = [](std::vector<VertexId> v) {
        std::vector<std::uint32_t> k;
        k.reserve(v.size());
        for (auto x : v) k.push_back(x.index);
        std::sort(k.begin(), k.end());
        return k;
    };
    if (key(va) != key(vb)) return false;
    auto ekey = [](const Multigraph& g) {
        std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> k;
        for (EdgeId e : g.edges()) {
            auto [u, v] = g.endpoints(e);
            auto [lo, hi] = std::minmax(u.index, v.index);
            k.emplace_back(e.index, lo, hi);
        }
        std::sort(k.begin(), k.end());
        return k;
    };
    return ekey(a) == ekey(b);
}

} // namespace spqr::oracle
