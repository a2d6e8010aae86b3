#include <algorithm>
#include <map>

#include "doctest.h"
#include "spqr/connectivity.hpp"
#include "spqr/operations.hpp"
#include "spqr/oracle.hpp"
#include "spqr/planarity.hpp"
#include "spqr/spqr_tree.hpp"
#include "test_support.hpp"

using namespace spqr;
using namespace spqr::testing;

namespace {

std::map<SkeletonClass, int> class_census(const SkeletonDecomposition& d) {
    std::map<SkeletonClass, int> out;
    for (SkeletonId s : d.skeleton_ids()) ++out[classify_skeleton(d, s)];
    return out;
}

} // namespace

TEST_CASE("classify skeletons") {
    auto tri = trivial_decomposition(make_cycle(3).g);
    CHECK(classify_skeleton(tri, tri.skeleton_ids()[0]) == SkeletonClass::Polygon);

    auto bond = trivial_decomposition(make_bond(4).g);
    CHECK(classify_skeleton(bond, bond.skeleton_ids()[0]) == SkeletonClass::Bond);

    auto k4 = trivial_decomposition(make_complete(4).g);
    CHECK(oracle::separation_pairs_bf(make_complete(4).g).empty());
    CHECK(classify_skeleton(k4, k4.skeleton_ids()[0]) == SkeletonClass::Rigid);

    // two triangles sharing an edge: neither polygon, bond nor rigid
    auto glued = trivial_decomposition(from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {1, 3}, {3, 0}}).g);
    CHECK(classify_skeleton(glued, glued.skeleton_ids()[0]) == SkeletonClass::NotSpqr);
}

TEST_CASE("is_spqr") {
    auto k4 = trivial_decomposition(make_complete(4).g);
    CHECK(is_spqr(k4));

    // splitting C4 into two adjacent triangles is not the SPQR-tree
    auto c4 = make_cycle(4);
    SkeletonDecomposition d = trivial_decomposition(c4.g);
    CHECK(is_spqr(d));
    SkeletonId s = d.skeleton_ids()[0];
    VertexId a = d.allocation_vertices(c4.v[0])[0], c = d.allocation_vertices(c4.v[2])[0];
    auto bridges = bridges_at(d.arena(), a, c);
    split_separation_pair(d, s, a, c, {bridges[0]}, {bridges[1]});
    CHECK(!is_spqr(d));
}

TEST_CASE("build_spqr: cycles give one polygon, bonds one bond") {
    for (int n : {3, 4, 7, 12}) {
        auto cn = make_cycle(n);
        SkeletonDecomposition d = build_spqr(cn.g);
        CHECK(d.skeleton_count() == 1);
        CHECK(classify_skeleton(d, d.skeleton_ids()[0]) == SkeletonClass::Polygon);
        CHECK(is_spqr(d));
        CHECK(d.validate().ok());
    }
    auto bk = make_bond(5);
    SkeletonDecomposition d = build_spqr(bk.g);
    CHECK(d.skeleton_count() == 1);
    CHECK(classify_skeleton(d, d.skeleton_ids()[0]) == SkeletonClass::Bond);
    CHECK(is_spqr(d));
}

TEST_CASE("build_spqr: subdivided K4 gives rigid plus polygon") {
    // K4 on {a,b,c,d} with edge cd replaced by the path c-x-d
    auto g = from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4}, {4, 3}});
    SkeletonDecomposition d = build_spqr(g.g);
    auto census = class_census(d);
    CHECK(census[SkeletonClass::Rigid] == 1);
    CHECK(census[SkeletonClass::Polygon] == 1);
    CHECK(d.skeleton_count() == 2);
    CHECK(is_spqr(d));
    CHECK(d.validate().ok());
}

TEST_CASE("build_spqr: K4 minus an edge gives bond between two triangles") {
    auto g = from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
    SkeletonDecomposition d = build_spqr(g.g);
    auto census = class_census(d);
    CHECK(census[SkeletonClass::Polygon] == 2);
    CHECK(census[SkeletonClass::Bond] == 1);
    CHECK(d.skeleton_count() == 3);
    CHECK(is_spqr(d));
    // the bond holds the real edge bc plus two virtual edges
    for (SkeletonId s : d.skeleton_ids()) {
        if (classify_skeleton(d, s) != SkeletonClass::Bond) continue;
        int real = 0, virt = 0;
        for (EdgeId e : d.skeleton_edges(s))
            (d.edge_kind(e) == EdgeKind::Real ? real : virt)++;
        CHECK(real == 1);
        CHECK(virt == 2);
    }
}

TEST_CASE("build_spqr: theta graph gives bond hub with path polygons") {
    auto theta = make_theta(3, 2);
    SkeletonDecomposition d = build_spqr(theta.g);
    auto census = class_census(d);
    CHECK(census[SkeletonClass::Bond] == 1);
    CHECK(census[SkeletonClass::Polygon] == 3);
    CHECK(is_spqr(d));
}

TEST_CASE("build_spqr leaves the represented graph untouched and valid") {
    Rng rng(2024);
    for (int round = 0; round < 150; ++round) {
        Multigraph g = random_biconnected(rng, 10);
        SkeletonDecomposition d = build_spqr(g);
        CHECK(d.validate().ok());
        CHECK(is_spqr(d));
        CHECK(oracle::graphs_identical_by_index(d.represented(), g));
    }
}

TEST_CASE("allocation subtrees of a built tree stay linear in the degree") {
    // leaves carry real edges and internal polygons are pairwise non-adjacent,
    // which caps the subtree at twice the degree
    Rng rng(899);
    for (int round = 0; round < 120; ++round) {
        Multigraph g = random_biconnected(rng, 10);
        SkeletonDecomposition d = build_spqr(g);
        for (VertexId w : d.represented().vertices())
            CHECK(d.allocation_skeletons(w).size() <= 2 * std::max<std::size_t>(1, d.represented().degree(w)));
    }
}

TEST_CASE("rigid skeletons of the built tree really are triconnected") {
    Rng rng(2025);
    for (int round = 0; round < 80; ++round) {
        Multigraph g = random_biconnected(rng, 9);
        SkeletonDecomposition d = build_spqr(g);
        for (SkeletonId s : d.skeleton_ids()) {
            SkeletonClass c = classify_skeleton(d, s);
            CHECK(c == d.cached_class(s));
            CHECK(c != SkeletonClass::NotSpqr);
        }
    }
}

TEST_CASE("canonical form distinguishes and matches") {
    auto c4 = make_cycle(4);
    auto c5 = make_cycle(5);
    SkeletonDecomposition d4 = build_spqr(c4.g);
    SkeletonDecomposition d5 = build_spqr(c5.g);
    CHECK(canonical_form(d4) != canonical_form(d5));
    SkeletonDecomposition d4b = build_spqr(c4.g);
    CHECK(canonical_form(d4) == canonical_form(d4b));
}

TEST_CASE("canonical form is invariant under the construction path") {
    // random splits followed by exhaustive joins, then rebuild: same string
    Rng rng(71);
    for (int round = 0; round < 60; ++round) {
        Multigraph g = random_biconnected(rng, 9);
        SkeletonDecomposition a = build_spqr(g);
        SkeletonDecomposition b = trivial_decomposition(g);
        for (int i = 0; i < 6; ++i) random_operation(b, rng, false, nullptr);
        exhaustive_integrate(b);
        exhaustive_join(b);
        SkeletonId root = b.skeleton_ids()[0];
        auto pieces = decompose_skeleton(b, root);
        normalize_adjacent(b, pieces);
        CHECK(is_spqr(b));
        CHECK(canonical_form(a) == canonical_form(b));
    }
}

TEST_CASE("planarity flag after construction") {
    CHECK(is_planar(build_spqr(make_cycle(4).g)));
    CHECK(is_planar(build_spqr(make_complete(4).g)));
    CHECK(is_planar(build_spqr(make_prism().g)));
    CHECK(!is_planar(build_spqr(make_complete(5).g)));
    CHECK(!is_planar(build_spqr(make_k33().g)));
    for (int rim = 4; rim <= 7; ++rim) CHECK(is_planar(build_spqr(make_wheel(rim).g)));
}
