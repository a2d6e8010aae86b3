#include <set>

#include "doctest.h"
#include "spqr/connectivity.hpp"
#include "spqr/operations.hpp"
#include "spqr/oracle.hpp"
#include "test_support.hpp"

using namespace spqr;
using namespace spqr::testing;

namespace {

Bridge find_bridge(const std::vector<Bridge>& bridges, const std::set<std::uint32_t>& want) {
    for (const Bridge& b : bridges) {
        std::set<std::uint32_t> got;
        for (EdgeId e : b.edges) got.insert(e.index);
        if (got == want) return b;
    }
    REQUIRE(false);
    return {};
}

} // namespace

TEST_CASE("split at a separation pair peels the chosen bridges") {
    // {a,b,c,d; ab,ac,bc,bd,cd}, pair {b,c}, A = {bc} + {ab,ac}, B = {bd,cd}
    Multigraph g;
    VertexId a = g.add_vertex(), b = g.add_vertex(), c = g.add_vertex(), d0 = g.add_vertex();
    EdgeId ab = g.add_edge(a, b), ac = g.add_edge(a, c), bc = g.add_edge(b, c);
    EdgeId bd = g.add_edge(b, d0), cd = g.add_edge(c, d0);

    SkeletonDecomposition d = trivial_decomposition(g);
    SkeletonId s = d.skeleton_ids()[0];
    VertexId sb = d.allocation_vertices(b)[0], sc = d.allocation_vertices(c)[0];
    auto bridges = bridges_at(d.arena(), sb, sc);
    REQUIRE(bridges.size() == 3);

    auto b_bc = find_bridge(bridges, {d.real_edge_of(bc).index});
    auto b_a = find_bridge(bridges, {d.real_edge_of(ab).index, d.real_edge_of(ac).index});
    auto b_d = find_bridge(bridges, {d.real_edge_of(bd).index, d.real_edge_of(cd).index});

    auto [alpha, beta] = split_separation_pair(d, s, sb, sc, {b_bc, b_a}, {b_d});
    CHECK(d.validate().ok());
    CHECK(oracle::graphs_identical_by_index(d.represented(), g));
    CHECK(d.skeleton_vertices(alpha).size() == 3);  // a plus copies of b, c
    CHECK(d.skeleton_edges(alpha).size() == 4);     // ab, ac, bc + virtual
    CHECK(d.skeleton_vertices(beta).size() == 3);   // b, c, d
    CHECK(d.skeleton_edges(beta).size() == 3);      // bd, cd + virtual
}

TEST_CASE("split of a cycle yields two polygons sharing the pair") {
    auto c4 = make_cycle(4);
    SkeletonDecomposition d = trivial_decomposition(c4.g);
    SkeletonId s = d.skeleton_ids()[0];
    VertexId a = d.allocation_vertices(c4.v[0])[0], c = d.allocation_vertices(c4.v[2])[0];
    auto bridges = bridges_at(d.arena(), a, c);
    auto [alpha, beta] = split_separation_pair(d, s, a, c, {bridges[0]}, {bridges[1]});
    CHECK(d.validate().ok());
    for (SkeletonId sk : {alpha, beta}) {
        CHECK(d.skeleton_vertices(sk).size() == 3);
        CHECK(d.skeleton_edges(sk).size() == 3);
    }
}

TEST_CASE("split rejects a non-separating pair") {
    auto c4 = make_cycle(4);
    SkeletonDecomposition d = trivial_decomposition(c4.g);
    SkeletonId s = d.skeleton_ids()[0];
    VertexId a = d.allocation_vertices(c4.v[0])[0], b = d.allocation_vertices(c4.v[1])[0];
    auto bridges = bridges_at(d.arena(), a, b);
    REQUIRE(bridges.size() == 2);
    CHECK_THROWS_AS(split_separation_pair(d, s, a, b, {bridges[0]}, {bridges[1]}), Error);
}

TEST_CASE("split rejects a trivial bipartition") {
    auto c4 = make_cycle(4);
    SkeletonDecomposition d = trivial_decomposition(c4.g);
    SkeletonId s = d.skeleton_ids()[0];
    VertexId a = d.allocation_vertices(c4.v[0])[0], c = d.allocation_vertices(c4.v[2])[0];
    auto bridges = bridges_at(d.arena(), a, c);
    CHECK_THROWS_AS(split_separation_pair(d, s, a, c, {bridges[0], bridges[1]}, {}), Error);
}

TEST_CASE("join undoes a split") {
    auto c4 = make_cycle(4);
    SkeletonDecomposition d = trivial_decomposition(c4.g);
    std::string before = d.dump_string();
    SkeletonId s = d.skeleton_ids()[0];
    VertexId a = d.allocation_vertices(c4.v[0])[0], c = d.allocation_vertices(c4.v[2])[0];
    auto bridges = bridges_at(d.arena(), a, c);
    auto [alpha, beta] = split_separation_pair(d, s, a, c, {bridges[0]}, {bridges[1]});

    EdgeId virtual_edge{};
    for (EdgeId e : d.skeleton_edges(alpha))
        if (d.edge_kind(e) == EdgeKind::Virtual) virtual_edge = e;
    REQUIRE(virtual_edge.valid());
    join_separation_pair(d, virtual_edge);
    CHECK(d.validate().ok());
    CHECK(d.skeleton_count() == 1);
    CHECK(d.dump_string() == before);
}

TEST_CASE("join rejects a real edge") {
    auto c4 = make_cycle(4);
    SkeletonDecomposition d = trivial_decomposition(c4.g);
    EdgeId real = d.skeleton_edges(d.skeleton_ids()[0])[0];
    CHECK_THROWS_AS(join_separation_pair(d, real), Error);
}

TEST_CASE("exhaustive join restores the trivial decomposition") {
    Rng rng(40);
    for (int round = 0; round < 80; ++round) {
        Multigraph g = random_biconnected(rng, 9);
        SkeletonDecomposition d = trivial_decomposition(g);
        std::string before = d.dump_string();
        int applied = 0;
        for (int step = 0; step < 10; ++step) {
            // splits only
            auto ids = d.skeleton_ids();
            bool done = false;
            for (SkeletonId s : ids) {
                auto verts = d.skeleton_vertices(s);
                for (std::size_t i = 0; i < verts.size() && !done; ++i)
                    for (std::size_t j = i + 1; j < verts.size() && !done; ++j)
                        if (is_separation_pair(d.arena(), verts[i], verts[j])) {
                            auto bridges = bridges_at(d.arena(), verts[i], verts[j]);
                            std::vector<Bridge> a{bridges[0]}, b(bridges.begin() + 1, bridges.end());
                            split_separation_pair(d, s, verts[i], verts[j], a, b);
                            ++applied;
                            done = true;
                        }
                if (done) break;
            }
            if (!done) break;
        }
        exhaustive_join(d);
        CHECK(d.skeleton_count() == 1);
        CHECK(d.validate().ok());
        CHECK(d.dump_string() == before);
        // orig maps become bijections onto the single skeleton
        SkeletonId s = d.skeleton_ids()[0];
        CHECK(d.skeleton_vertices(s).size() == g.vertex_count());
        CHECK(d.skeleton_edges(s).size() == g.edge_count());
        (void)applied;
    }
}

TEST_CASE("isolate the hub of K4 and integrate back") {
    auto k4 = make_wheel(3);
    SkeletonDecomposition d = trivial_decomposition(k4.g);
    std::string before = d.dump_string();
    VertexId hub = d.allocation_vertices(k4.v[0])[0];
    auto res = isolate_vertex(d, hub);
    CHECK(d.validate().ok());
    CHECK(d.skeleton_count() == 2);
    CHECK(oracle::graphs_identical_by_index(d.represented(), k4.g));

    // old skeleton: triangle + center + 3 occupied spokes
    SkeletonId alpha = d.skeleton_of(res.center_here);
    CHECK(d.skeleton_vertices(alpha).size() == 4);
    CHECK(d.skeleton_edges(alpha).size() == 6);
    // new skeleton: hub + 3 copies + center + 3 star edges + 3 occupied spokes
    CHECK(d.skeleton_vertices(res.split_off).size() == 5);
    CHECK(d.skeleton_edges(res.split_off).size() == 6);

    integrate(d, res.center_here, res.center_moved);
    CHECK(d.validate().ok());
    CHECK(d.skeleton_count() == 1);
    CHECK(d.dump_string() == before);
}

TEST_CASE("isolate preconditions") {
    auto k4 = make_wheel(3);
    SkeletonDecomposition d = trivial_decomposition(k4.g);
    VertexId hub = d.allocation_vertices(k4.v[0])[0];
    auto res = isolate_vertex(d, hub);
    // neighbors of the center now carry occupied edges
    VertexId blocked{};
    for (EdgeId e : d.arena().incident(res.center_here)) {
        blocked = d.arena().opposite(e, res.center_here);
        break;
    }
    CHECK_THROWS_AS(isolate_vertex(d, blocked), Error);
    CHECK_THROWS_AS(isolate_vertex(d, res.center_here), Error);
}

TEST_CASE("exhaustive integrate clears all twin pairs and is idempotent") {
    Rng rng(41);
    for (int round = 0; round < 60; ++round) {
        Multigraph g = random_biconnected(rng, 8, 0.0);
        SkeletonDecomposition d = trivial_decomposition(g);
        Multigraph shadow = d.represented_copy();
        for (int step = 0; step < 8; ++step) random_operation(d, rng, false, nullptr);
        std::size_t pairs = d.twin_vertex_pairs();
        exhaustive_integrate(d);
        CHECK(d.twin_vertex_pairs() == 0);
        CHECK(d.validate().ok());
        exhaustive_integrate(d); // idempotent
        CHECK(d.twin_vertex_pairs() == 0);
        CHECK(oracle::graphs_identical_by_index(d.represented(), shadow));
        (void)pairs;
    }
}

TEST_CASE("insert_graph: a two-interior path turns C4 into C5") {
    auto c4 = make_cycle(4);
    SkeletonDecomposition d = trivial_decomposition(c4.g);
    Multigraph shadow = d.represented_copy();

    Multigraph part;
    VertexId m1 = part.add_vertex(), w1 = part.add_vertex(), w2 = part.add_vertex(), m2 = part.add_vertex();
    part.add_edge(m1, w1);
    part.add_edge(w1, w2);
    part.add_edge(w2, m2);
    std::unordered_map<VertexId, VertexId, VertexIdHash> repr_phi{
        {m1, c4.v[0]},
        {m2, c4.v[2]},
    };
    VertexId v = d.allocation_vertices(c4.v[1])[0];
    auto phi = skeleton_phi(d, v, repr_phi);
    insert_graph(d, c4.v[1], part, {m1, m2}, phi);
    CHECK(d.validate().ok());

    oracle::replace_bf(shadow, c4.v[1], part, {m1, m2}, repr_phi);
    CHECK(oracle::graphs_identical_by_index(d.represented(), shadow));
    CHECK(d.represented().vertex_count() == 5);
    CHECK(d.represented().edge_count() == 5);
}

TEST_CASE("insert_graph then integrate: hub expansion gives the prism") {
    auto k4 = make_wheel(3);
    SkeletonDecomposition d = trivial_decomposition(k4.g);
    Multigraph shadow = d.represented_copy();

    Multigraph part;
    std::vector<VertexId> marked, inner;
    for (int i = 0; i < 3; ++i) inner.push_back(part.add_vertex());
    for (int i = 0; i < 3; ++i) {
        VertexId m = part.add_vertex();
        part.add_edge(m, inner[i]);
        marked.push_back(m);
    }
    part.add_edge(inner[0], inner[1]);
    part.add_edge(inner[1], inner[2]);
    part.add_edge(inner[2], inner[0]);
    std::unordered_map<VertexId, VertexId, VertexIdHash> repr_phi;
    for (int i = 0; i < 3; ++i) repr_phi.emplace(marked[i], k4.v[i + 1]);

    VertexId v = d.allocation_vertices(k4.v[0])[0];
    auto res = insert_graph(d, k4.v[0], part, marked, skeleton_phi(d, v, repr_phi));
    CHECK(d.validate().ok());
    oracle::replace_bf(shadow, k4.v[0], part, marked, repr_phi);
    CHECK(oracle::graphs_identical_by_index(d.represented(), shadow));

    integrate(d, res.center_old, res.center_new);
    CHECK(d.validate().ok());
    CHECK(d.skeleton_count() == 1);
    CHECK(oracle::graphs_identical_by_index(d.represented(), shadow));
    // prism: 6 vertices, 9 edges, triconnected
    CHECK(oracle::separation_pairs_bf(d.represented()).empty());
}

TEST_CASE("insert_graph preconditions") {
    auto c4 = make_cycle(4);
    SkeletonDecomposition d = trivial_decomposition(c4.g);

    Multigraph part;
    VertexId m1 = part.add_vertex(), m2 = part.add_vertex();
    part.add_edge(m1, m2);

    SUBCASE("arity mismatch") {
        std::unordered_map<VertexId, VertexId, VertexIdHash> repr_phi{{m1, c4.v[0]}, {m2, c4.v[2]}};
        VertexId v = d.allocation_vertices(c4.v[1])[0];
        auto phi = skeleton_phi(d, v, repr_phi);
        CHECK_THROWS_AS(insert_graph(d, c4.v[1], part, {m1}, phi), Error);
    }
    SUBCASE("disconnected marked vertices are rejected") {
        Multigraph bad;
        VertexId b1 = bad.add_vertex(), b2 = bad.add_vertex();
        std::unordered_map<VertexId, VertexId, VertexIdHash> repr_phi{{b1, c4.v[0]}, {b2, c4.v[2]}};
        VertexId v = d.allocation_vertices(c4.v[1])[0];
        auto phi = skeleton_phi(d, v, repr_phi);
        CHECK_THROWS_AS(insert_graph(d, c4.v[1], bad, {b1, b2}, phi), Error);
    }
    SUBCASE("multiple allocation vertices are rejected") {
        SkeletonId s = d.skeleton_ids()[0];
        VertexId a = d.allocation_vertices(c4.v[0])[0], c = d.allocation_vertices(c4.v[2])[0];
        auto bridges = bridges_at(d.arena(), a, c);
        split_separation_pair(d, s, a, c, {bridges[0]}, {bridges[1]});
        std::unordered_map<VertexId, VertexId, VertexIdHash> phi; // never reached
        CHECK_THROWS_AS(insert_graph(d, c4.v[0], part, {m1, m2}, phi), Error);
    }
    SUBCASE("path through an interior vertex is accepted") {
        Multigraph wpath;
        VertexId p1 = wpath.add_vertex(), w = wpath.add_vertex(), p2 = wpath.add_vertex();
        wpath.add_edge(p1, w);
        wpath.add_edge(w, p2);
        std::unordered_map<VertexId, VertexId, VertexIdHash> repr_phi{{p1, c4.v[0]}, {p2, c4.v[2]}};
        VertexId v = d.allocation_vertices(c4.v[1])[0];
        insert_graph(d, c4.v[1], wpath, {p1, p2}, skeleton_phi(d, v, repr_phi));
        CHECK(d.validate().ok());
        CHECK(d.represented().vertex_count() == 4);
        CHECK(d.represented().edge_count() == 4);
    }
    SUBCASE("single marked edge closes a triangle") {
        std::unordered_map<VertexId, VertexId, VertexIdHash> repr_phi{{m1, c4.v[0]}, {m2, c4.v[2]}};
        VertexId v = d.allocation_vertices(c4.v[1])[0];
        insert_graph(d, c4.v[1], part, {m1, m2}, skeleton_phi(d, v, repr_phi));
        CHECK(d.validate().ok());
        CHECK(d.represented().vertex_count() == 3);
        CHECK(d.represented().edge_count() == 3);
    }
}

TEST_CASE("random operation sequences keep the structure valid and the graph fixed") {
    Rng rng(100);
    for (int round = 0; round < 40; ++round) {
        Multigraph g = random_biconnected(rng, 8);
        SkeletonDecomposition d = trivial_decomposition(g);
        Multigraph shadow = d.represented_copy();
        for (int step = 0; step < 15; ++step) {
            std::string op = random_operation(d, rng, true, &shadow);
            if (op.empty()) break;
            auto report = d.validate();
            if (!report.ok()) {
                CAPTURE(op);
                CAPTURE(report.to_string());
                REQUIRE(report.ok());
            }
            REQUIRE(oracle::graphs_identical_by_index(d.represented(), shadow));
        }
    }
}
