#include <algorithm>
#include <set>

#include "doctest.h"
#include "spqr/connectivity.hpp"
#include "test_support.hpp"

using namespace spqr;
using namespace spqr::testing;

namespace {

// independent oracle: cutvertex enumeration by deletion
bool biconnected_by_enumeration(const Multigraph& g) {
    auto verts = g.vertices();
    if (verts.size() < 2) return false;
    if (component_of(g, verts[0]).size() != verts.size()) return false;
    if (verts.size() == 2) return g.edge_count() >= 2;
    for (VertexId w : verts) {
        Multigraph h = g;
        h.delete_vertex(w);
        auto rest = h.vertices();
        if (component_of(h, rest[0]).size() != rest.size()) return false;
    }
    return true;
}

std::set<std::set<std::uint32_t>> bridge_sets(const std::vector<Bridge>& bridges) {
    std::set<std::set<std::uint32_t>> out;
    for (const Bridge& b : bridges) {
        std::set<std::uint32_t> s;
        for (EdgeId e : b.edges) s.insert(e.index);
        out.insert(std::move(s));
    }
    return out;
}

} // namespace

TEST_CASE("biconnectivity basics") {
    CHECK(is_biconnected(make_cycle(4).g));

    // two triangles sharing one vertex: the shared vertex cuts
    auto shared = from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
    CHECK(!is_biconnected(shared.g));

    auto k4_minus = from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(biconnected_by_enumeration(k4_minus.g));
    CHECK(is_biconnected(k4_minus.g));

    CHECK(is_biconnected(make_bond(2).g));
    CHECK(!is_biconnected(make_bond(1).g));
    Multigraph single;
    single.add_vertex();
    CHECK(!is_biconnected(single));
}

TEST_CASE("biconnectivity agrees with deletion oracle on random graphs") {
    Rng rng(20240811);
    for (int round = 0; round < 300; ++round) {
        Multigraph g;
        int n = 3 + static_cast<int>(rng() % 7);
        std::vector<VertexId> v;
        for (int i = 0; i < n; ++i) v.push_back(g.add_vertex());
        int m = 2 + static_cast<int>(rng() % (2 * n));
        for (int i = 0; i < m; ++i) {
            int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
            if (a != b) g.add_edge(v[a], v[b]);
        }
        if (g.edge_count() == 0) continue;
        CHECK(is_biconnected(g) == biconnected_by_enumeration(g));
    }
}

TEST_CASE("bridges at a pair: K4 minus one edge") {
    // vertices {a,b,c,d}, edges {ab,ac,bc,bd,cd}, pair {b,c}
    Multigraph g;
    VertexId a = g.add_vertex(), b = g.add_vertex(), c = g.add_vertex(), d = g.add_vertex();
    EdgeId ab = g.add_edge(a, b), ac = g.add_edge(a, c), bc = g.add_edge(b, c);
    EdgeId bd = g.add_edge(b, d), cd = g.add_edge(c, d);
    auto bridges = bridges_at(g, b, c);
    REQUIRE(bridges.size() == 3);
    auto sets = bridge_sets(bridges);
    CHECK(sets.count({bc.index}));
    CHECK(sets.count({ab.index, ac.index}));
    CHECK(sets.count({bd.index, cd.index}));
    CHECK(is_separation_pair(g, b, c));
    CHECK(!is_separation_pair(g, a, d));
}

TEST_CASE("bridges at a pair: cycle arcs and bonds") {
    auto c4 = make_cycle(4);
    auto bridges = bridges_at(c4.g, c4.v[0], c4.v[2]);
    CHECK(bridges.size() == 2);
    CHECK(bridges[0].edges.size() == 2);
    CHECK(bridges[1].edges.size() == 2);

    auto bond = make_bond(3);
    auto bb = bridges_at(bond.g, bond.v[0], bond.v[1]);
    CHECK(bb.size() == 3);
    for (const Bridge& b : bb) CHECK(b.edges.size() == 1);
}

TEST_CASE("bridges form a partition and detect separation pairs (path oracle)") {
    Rng rng(7);
    for (int round = 0; round < 120; ++round) {
        Multigraph g = random_biconnected(rng, 8);
        auto verts = g.vertices();
        for (std::size_t i = 0; i < verts.size(); ++i) {
            for (std::size_t j = i + 1; j < verts.size(); ++j) {
                auto bridges = bridges_at(g, verts[i], verts[j]);
                std::size_t total = 0;
                std::set<std::uint32_t> seen;
                for (const Bridge& b : bridges) {
                    total += b.edges.size();
                    for (EdgeId e : b.edges) CHECK(seen.insert(e.index).second);
                }
                CHECK(total == g.edge_count());
                // class counts: a separating pair has >= 2 classes; otherwise
                // one class plus a singleton per direct parallel edge
                std::size_t direct = 0;
                for (EdgeId e : g.incident(verts[i]))
                    if (g.opposite(e, verts[i]) == verts[j]) ++direct;
                if (is_separation_pair(g, verts[i], verts[j])) {
                    CHECK(bridges.size() >= 2);
                } else {
                    CHECK(bridges.size() == 1 + direct);
                }
            }
        }
    }
}

TEST_CASE("collapse_vertices") {
    // star x-m1, x-m2 collapses into a 2-bond
    auto star = from_edges(3, {{0, 1}, {0, 2}});
    auto collapsed = collapse_vertices(star.g, {star.v[1], star.v[2]});
    CHECK(collapsed.graph.vertex_count() == 2);
    CHECK(collapsed.graph.edge_count() == 2);

    auto tri = make_cycle(3);
    auto all = collapse_vertices(tri.g, {tri.v[0], tri.v[1], tri.v[2]});
    CHECK(all.graph.vertex_count() == 1);
    CHECK(all.graph.edge_count() == 0);

    auto k13 = from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    auto leaves = collapse_vertices(k13.g, {k13.v[1], k13.v[2], k13.v[3]});
    CHECK(leaves.graph.vertex_count() == 2);
    CHECK(leaves.graph.edge_count() == 3);
    CHECK(is_biconnected(leaves.graph));
}

TEST_CASE("collapse preserves exterior edge counts") {
    Rng rng(99);
    for (int round = 0; round < 60; ++round) {
        Multigraph g = random_biconnected(rng, 7);
        auto verts = g.vertices();
        std::size_t k = 1 + rng() % (verts.size() - 1);
        std::vector<VertexId> group(verts.begin(), verts.begin() + k);
        std::set<std::uint32_t> in_group;
        for (VertexId v : group) in_group.insert(v.index);
        std::size_t exterior = 0;
        for (EdgeId e : g.edges()) {
            auto [x, y] = g.endpoints(e);
            if (!in_group.count(x.index) || !in_group.count(y.index)) ++exterior;
        }
        auto res = collapse_vertices(g, group);
        CHECK(res.graph.edge_count() == exterior);
    }
}
