#include <algorithm>
#include <set>
#include <unordered_set>

#include "doctest.h"
#include "spqr/connectivity.hpp"
#include "spqr/expand.hpp"
#include "spqr/operations.hpp"
#include "spqr/oracle.hpp"
#include "spqr/planarity.hpp"
#include "spqr/spqr_tree.hpp"
#include "test_support.hpp"

using namespace spqr;
using namespace spqr::testing;

namespace {

// skeleton as a standalone graph plus the mapping to represented labels
struct SkeletonGraph {
    Multigraph g;
    std::unordered_map<std::uint32_t, std::uint32_t> label_of; // scratch vertex -> origV index (center: ~0)
};

SkeletonGraph extract_skeleton(const SkeletonDecomposition& d, SkeletonId s) {
    SkeletonGraph out;
    std::unordered_map<std::uint32_t, VertexId> map;
    for (VertexId v : d.skeleton_vertices(s)) {
        VertexId sv = out.g.add_vertex();
        map[v.index] = sv;
        out.label_of[sv.index] =
            d.vertex_kind(v) == VertexKind::Regular ? d.orig_vertex(v).index : kInvalidIndex;
    }
    for (EdgeId e : d.skeleton_edges(s)) {
        auto [x, y] = d.arena().endpoints(e);
        out.g.add_edge(map[x.index], map[y.index]);
    }
    return out;
}

std::set<std::pair<std::uint32_t, std::uint32_t>> labeled_pairs(const SkeletonGraph& sg,
                                                                const std::vector<std::pair<VertexId, VertexId>>& pairs) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> out;
    for (auto [a, b] : pairs) {
        std::uint32_t la = sg.label_of.at(a.index), lb = sg.label_of.at(b.index);
        out.insert(std::minmax(la, lb));
    }
    return out;
}

} // namespace

TEST_CASE("expansion of a cycle vertex stays one polygon") {
    auto c4 = make_cycle(4);
    SkeletonDecomposition d = build_spqr(c4.g);
    Multigraph shadow = d.represented_copy();

    Multigraph part;
    VertexId m1 = part.add_vertex(), w1 = part.add_vertex(), w2 = part.add_vertex(), m2 = part.add_vertex();
    part.add_edge(m1, w1);
    part.add_edge(w1, w2);
    part.add_edge(w2, m2);
    std::unordered_map<VertexId, VertexId, VertexIdHash> phi{{m1, c4.v[0]}, {m2, c4.v[2]}};

    insert_graph_spqr(d, c4.v[1], part, {m1, m2}, phi);
    oracle::replace_bf(shadow, c4.v[1], part, {m1, m2}, phi);

    CHECK(d.validate().ok());
    CHECK(is_spqr(d));
    CHECK(oracle::graphs_identical_by_index(d.represented(), shadow));
    CHECK(d.skeleton_count() == 1);
    CHECK(classify_skeleton(d, d.skeleton_ids()[0]) == SkeletonClass::Polygon);
    CHECK(d.represented().vertex_count() == 5);
    CHECK(canonical_form(d) == canonical_form(build_spqr(shadow)));
}

TEST_CASE("hub expansion of K4 yields the prism rigid") {
    auto k4 = make_wheel(3);
    SkeletonDecomposition d = build_spqr(k4.g);
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
    std::unordered_map<VertexId, VertexId, VertexIdHash> phi;
    for (int i = 0; i < 3; ++i) phi.emplace(marked[i], k4.v[i + 1]);

    insert_graph_spqr(d, k4.v[0], part, marked, phi);
    oracle::replace_bf(shadow, k4.v[0], part, marked, phi);

    CHECK(d.validate().ok());
    CHECK(is_spqr(d));
    CHECK(oracle::graphs_identical_by_index(d.represented(), shadow));
    CHECK(d.skeleton_count() == 1);
    CHECK(classify_skeleton(d, d.skeleton_ids()[0]) == SkeletonClass::Rigid);
    CHECK(canonical_form(d) == canonical_form(build_spqr(shadow)));
    CHECK(is_planar(d));
}

TEST_CASE("expansion introducing a parallel path creates a bond") {
    // expand a K4 vertex so that two of its former edges now run through a
    // two-path piece: the replaced graph holds a separation pair
    auto k4 = make_wheel(3);
    SkeletonDecomposition d = build_spqr(k4.g);
    Multigraph shadow = d.represented_copy();

    Multigraph part;
    VertexId a = part.add_vertex(), b = part.add_vertex(), c = part.add_vertex();
    VertexId x = part.add_vertex(), y = part.add_vertex();
    // marked a,b,c; x,y interior forming two parallel routes between a and b
    part.add_edge(a, x);
    part.add_edge(x, b);
    part.add_edge(a, y);
    part.add_edge(y, b);
    part.add_edge(x, c);
    part.add_edge(y, c);
    std::unordered_map<VertexId, VertexId, VertexIdHash> phi{
        {a, k4.v[1]}, {b, k4.v[2]}, {c, k4.v[3]}};
    insert_graph_spqr(d, k4.v[0], part, {a, b, c}, phi);
    oracle::replace_bf(shadow, k4.v[0], part, {a, b, c}, phi);

    CHECK(d.validate().ok());
    CHECK(is_spqr(d));
    CHECK(oracle::graphs_identical_by_index(d.represented(), shadow));
    CHECK(canonical_form(d) == canonical_form(build_spqr(shadow)));
}

TEST_CASE("random expansion sequences match the from-scratch tree") {
    Rng rng(90210);
    for (int round = 0; round < 120; ++round) {
        Multigraph shadow;
        SkeletonDecomposition d = grow_random_tree(rng, 10, shadow);
        auto report = d.validate();
        if (!report.ok()) {
            CAPTURE(report.to_string());
            REQUIRE(report.ok());
        }
        REQUIRE(oracle::graphs_identical_by_index(d.represented(), shadow));
        REQUIRE(is_spqr(d));
        SkeletonDecomposition fresh = build_spqr(shadow);
        REQUIRE(canonical_form(d) == canonical_form(fresh));
    }
}

TEST_CASE("expansion locality: the prepared allocation skeleton is small") {
    Rng rng(5);
    int checked = 0;
    for (int round = 0; round < 40; ++round) {
        Multigraph shadow;
        SkeletonDecomposition d = grow_random_tree(rng, 14, shadow);
        auto verts = d.represented().vertices();
        VertexId u = verts[rng() % verts.size()];
        std::size_t deg = d.represented().degree(u);
        std::unordered_set<std::uint32_t> nb;
        for (EdgeId e : d.represented().incident(u)) nb.insert(d.represented().opposite(e, u).index);
        if (nb.size() < 2) continue;
        VertexId v = detail::prepare_single_allocation(d, u, is_planar(d));
        SkeletonId m = d.skeleton_of(v);
        CHECK(d.skeleton_vertices(m).size() <= 4 * deg);
        ++checked;
    }
    CHECK(checked >= 30);
}

TEST_CASE("expansion does not touch skeletons far from the allocation subtree") {
    Rng rng(6);
    int checked = 0;
    for (int round = 0; round < 60 && checked < 20; ++round) {
        Multigraph shadow;
        SkeletonDecomposition d = grow_random_tree(rng, 16, shadow);
        if (d.skeleton_count() < 4) continue;

        auto verts = d.represented().vertices();
        VertexId u = verts[rng() % verts.size()];
        std::unordered_set<std::uint32_t> nb;
        for (EdgeId e : d.represented().incident(u)) nb.insert(d.represented().opposite(e, u).index);
        if (nb.size() < 2) continue;

        // allocation subtree plus its direct tree neighbors may be touched
        std::set<SkeletonId> nearby;
        for (SkeletonId s : d.allocation_skeletons(u)) nearby.insert(s);
        auto tree = d.decomposition_tree();
        for (auto [a, b] : tree.edges) {
            if (nearby.count(a)) nearby.insert(b);
            else if (nearby.count(b)) nearby.insert(a);
        }
        std::unordered_map<SkeletonId, std::uint64_t> version;
        for (SkeletonId s : d.skeleton_ids())
            if (!nearby.count(s)) version[s] = d.skeleton_version(s);
        if (version.empty()) continue;

        std::vector<VertexId> neighbors(nb.size() ? 0 : 0);
        std::unordered_set<std::uint32_t> seen;
        for (EdgeId e : d.represented().incident(u)) {
            VertexId w = d.represented().opposite(e, u);
            if (seen.insert(w.index).second) neighbors.push_back(w);
        }
        RandomPart rp = random_part(rng, static_cast<int>(neighbors.size()));
        std::unordered_map<VertexId, VertexId, VertexIdHash> phi;
        for (std::size_t i = 0; i < neighbors.size(); ++i) phi.emplace(rp.marked[i], neighbors[i]);
        insert_graph_spqr(d, u, rp.part, rp.marked, phi);
        CHECK(d.validate().ok());
        for (const auto& [s, ver] : version) {
            if (!d.skeleton_alive(s)) continue; // far skeletons must stay alive
            CHECK(d.skeleton_version(s) == ver);
        }
        for (const auto& [s, ver] : version) CHECK(d.skeleton_alive(s));
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("integrating into a triconnected side keeps exactly the far pairs") {
    Rng rng(7);
    int done = 0;
    for (int round = 0; round < 400 && done < 60; ++round) {
        // triconnected host: wheel plus random chords
        auto wheel = make_wheel(3 + static_cast<int>(rng() % 4));
        Multigraph g = wheel.g;
        for (int extra = 0; extra < 3; ++extra) {
            VertexId a = wheel.v[rng() % wheel.v.size()], b = wheel.v[rng() % wheel.v.size()];
            bool dup = (a == b);
            for (EdgeId e : g.incident(a)) dup |= (g.opposite(e, a) == b);
            if (!dup) g.add_edge(a, b);
        }
        REQUIRE(oracle::separation_pairs_removal_bf(g).empty());
        SkeletonDecomposition d = trivial_decomposition(g);
        auto verts = g.vertices();
        VertexId u = verts[rng() % verts.size()];
        VertexId v = d.allocation_vertices(u)[0];
        auto iso = isolate_vertex(d, v);
        REQUIRE(d.validate().ok());

        // grow the split-off side into a random biconnected skeleton
        std::unordered_set<std::uint32_t> nbset;
        for (EdgeId e : d.represented().incident(u)) nbset.insert(d.represented().opposite(e, u).index);
        std::vector<VertexId> neighbors;
        for (std::uint32_t i : nbset) neighbors.push_back(VertexId{d.represented().tag(), i});
        std::sort(neighbors.begin(), neighbors.end());
        RandomPart rp = random_part(rng, static_cast<int>(neighbors.size()));
        std::unordered_map<VertexId, VertexId, VertexIdHash> phi;
        for (std::size_t i = 0; i < neighbors.size(); ++i) phi.emplace(rp.marked[i], neighbors[i]);
        auto ins = insert_graph(d, u, rp.part, rp.marked, skeleton_phi(d, d.allocation_vertices(u)[0], phi));
        integrate(d, ins.center_old, ins.center_new, false);
        REQUIRE(d.validate().ok());

        // the beta side now holds iso.center_moved; alpha keeps iso.center_here
        SkeletonId beta = d.skeleton_of(iso.center_moved);
        SkeletonGraph before = extract_skeleton(d, beta);
        auto pairs_before = labeled_pairs(before, oracle::separation_pairs_removal_bf(before.g));
        // P' = pairs avoiding the center (the center is the only unlabeled vertex)
        std::set<std::pair<std::uint32_t, std::uint32_t>> expected;
        for (auto p : pairs_before)
            if (p.first != kInvalidIndex && p.second != kInvalidIndex) expected.insert(p);

        auto res = integrate(d, iso.center_here, iso.center_moved, false);
        REQUIRE(d.validate().ok());
        SkeletonGraph after = extract_skeleton(d, res.merged);
        auto pairs_after = labeled_pairs(after, oracle::separation_pairs_removal_bf(after.g));
        CHECK(pairs_after == expected);
        ++done;
    }
    CHECK(done >= 60);
}

TEST_CASE("merge: two K4s at degree-3 vertices give the prism") {
    auto k1 = make_wheel(3);
    auto k2 = make_wheel(3);
    SkeletonDecomposition d1 = build_spqr(k1.g);
    SkeletonDecomposition d2 = build_spqr(k2.g);
    Multigraph s1 = d1.represented_copy();
    Multigraph s2 = d2.represented_copy();

    std::vector<EdgeId> e1(s1.incident(k1.v[0]).begin(), s1.incident(k1.v[0]).end());
    std::vector<EdgeId> e2(s2.incident(k2.v[0]).begin(), s2.incident(k2.v[0]).end());
    std::sort(e1.begin(), e1.end());
    std::sort(e2.begin(), e2.end());
    std::unordered_map<EdgeId, EdgeId, EdgeIdHash> phi;
    for (std::size_t i = 0; i < e1.size(); ++i) phi.emplace(e1[i], e2[i]);

    merge_spqr(d1, std::move(d2), k1.v[0], k2.v[0], phi);
    oracle::merge_replace_bf(s1, k1.v[0], s2, k2.v[0], phi);

    CHECK(d1.validate().ok());
    CHECK(is_spqr(d1));
    CHECK(oracle::graphs_identical_by_index(d1.represented(), s1));
    CHECK(d1.represented().vertex_count() == 6);
    CHECK(d1.represented().edge_count() == 9);
    CHECK(d1.skeleton_count() == 1);
    CHECK(classify_skeleton(d1, d1.skeleton_ids()[0]) == SkeletonClass::Rigid);
    CHECK(canonical_form(d1) == canonical_form(build_spqr(s1)));
    CHECK(is_planar(d1));
}

TEST_CASE("merge: two triangles at degree-2 vertices give C4") {
    auto t1 = make_cycle(3);
    auto t2 = make_cycle(3);
    SkeletonDecomposition d1 = build_spqr(t1.g);
    SkeletonDecomposition d2 = build_spqr(t2.g);
    Multigraph s1 = d1.represented_copy();
    Multigraph s2 = d2.represented_copy();

    std::vector<EdgeId> e1(s1.incident(t1.v[0]).begin(), s1.incident(t1.v[0]).end());
    std::vector<EdgeId> e2(s2.incident(t2.v[0]).begin(), s2.incident(t2.v[0]).end());
    std::sort(e1.begin(), e1.end());
    std::sort(e2.begin(), e2.end());
    std::unordered_map<EdgeId, EdgeId, EdgeIdHash> phi{{e1[0], e2[0]}, {e1[1], e2[1]}};

    merge_spqr(d1, std::move(d2), t1.v[0], t2.v[0], phi);
    oracle::merge_replace_bf(s1, t1.v[0], s2, t2.v[0], phi);

    CHECK(d1.validate().ok());
    CHECK(is_spqr(d1));
    CHECK(oracle::graphs_identical_by_index(d1.represented(), s1));
    CHECK(d1.skeleton_count() == 1);
    CHECK(classify_skeleton(d1, d1.skeleton_ids()[0]) == SkeletonClass::Polygon);
    CHECK(d1.represented().vertex_count() == 4);
    CHECK(canonical_form(d1) == canonical_form(build_spqr(s1)));
}

TEST_CASE("merge: wheels joined at the hubs follow the oracle verdict") {
    Rng rng(2026);
    for (int round = 0; round < 12; ++round) {
        auto w1 = make_wheel(4);
        auto w2 = make_wheel(4);
        SkeletonDecomposition d1 = build_spqr(w1.g);
        SkeletonDecomposition d2 = build_spqr(w2.g);
        Multigraph s1 = d1.represented_copy();
        Multigraph s2 = d2.represented_copy();

        std::vector<EdgeId> e1(s1.incident(w1.v[0]).begin(), s1.incident(w1.v[0]).end());
        std::vector<EdgeId> e2(s2.incident(w2.v[0]).begin(), s2.incident(w2.v[0]).end());
        std::sort(e1.begin(), e1.end());
        std::shuffle(e2.begin(), e2.end(), rng); // arbitrary, possibly twisted pairing
        std::unordered_map<EdgeId, EdgeId, EdgeIdHash> phi;
        for (std::size_t i = 0; i < e1.size(); ++i) phi.emplace(e1[i], e2[i]);

        merge_spqr(d1, std::move(d2), w1.v[0], w2.v[0], phi);
        oracle::merge_replace_bf(s1, w1.v[0], s2, w2.v[0], phi);

        CHECK(d1.validate().ok());
        CHECK(is_spqr(d1));
        CHECK(oracle::graphs_identical_by_index(d1.represented(), s1));
        CHECK(is_planar(d1) == oracle::planar_bf(s1));
        CHECK(canonical_form(d1) == canonical_form(build_spqr(s1)));
    }
}

TEST_CASE("random merges match the from-scratch tree") {
    Rng rng(31);
    int done = 0;
    for (int round = 0; round < 120 && done < 40; ++round) {
        Multigraph sh1, sh2;
        SkeletonDecomposition d1 = grow_random_tree(rng, 8, sh1);
        SkeletonDecomposition d2 = grow_random_tree(rng, 8, sh2);
        // pick vertices with matching edge degree
        std::vector<std::pair<VertexId, VertexId>> candidates;
        for (VertexId a : d1.represented().vertices())
            for (VertexId b : d2.represented().vertices())
                if (d1.represented().degree(a) == d2.represented().degree(b)) candidates.emplace_back(a, b);
        if (candidates.empty()) continue;
        auto [u1, u2] = candidates[rng() % candidates.size()];
        std::vector<EdgeId> e1(d1.represented().incident(u1).begin(), d1.represented().incident(u1).end());
        std::vector<EdgeId> e2(d2.represented().incident(u2).begin(), d2.represented().incident(u2).end());
        std::sort(e1.begin(), e1.end());
        std::shuffle(e2.begin(), e2.end(), rng);
        std::unordered_map<EdgeId, EdgeId, EdgeIdHash> phi;
        for (std::size_t i = 0; i < e1.size(); ++i) phi.emplace(e1[i], e2[i]);

        merge_spqr(d1, std::move(d2), u1, u2, phi);
        oracle::merge_replace_bf(sh1, u1, sh2, u2, phi);

        REQUIRE(d1.validate().ok());
        REQUIRE(is_spqr(d1));
        REQUIRE(oracle::graphs_identical_by_index(d1.represented(), sh1));
        REQUIRE(canonical_form(d1) == canonical_form(build_spqr(sh1)));
        ++done;
    }
    CHECK(done >= 40);
}
