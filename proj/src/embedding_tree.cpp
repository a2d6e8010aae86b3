#include "spqr/embedding_tree.hpp"

#include <algorithm>
#include <set>

#include "spqr/oracle.hpp"
#include "spqr/planarity.hpp"

namespace spqr {

namespace {

struct TreeBuilder {
    const SkeletonDecomposition& d;
    VertexId target; // represented vertex
    EmbeddingTree out;

    // follows an edge of an allocation vertex to a leaf or a subtree node
    EmbeddingTree::Child resolve(EdgeId e, VertexId from) {
        ++out.visited;
        if (d.edge_kind(e) == EdgeKind::Real) {
            ++out.leaf_count;
            return {true, d.orig_edge(e), -1};
        }
        EdgeId twin = d.twin_edge(e);
        auto [x, y] = d.arena().endpoints(twin);
        VertexId next = d.orig_vertex(x).valid() && d.orig_vertex(x) == target ? x : y;
        (void)from;
        return descend(next, twin);
    }

    EmbeddingTree::Child descend(VertexId a, EdgeId entry) {
        ++out.visited;
        const Multigraph& g = d.arena();
        auto inc = g.incident(a);
        if (inc.size() == 2 && d.cached_class(d.skeleton_of(a)) == SkeletonClass::Polygon) {
            EdgeId other = inc[0] == entry ? inc[1] : inc[0];
            return resolve(other, a);
        }
        // bond when two incident edges share both endpoints, rigid otherwise
        bool bond = g.opposite(inc[0], a) == g.opposite(inc[1], a);
        EmbeddingTree::Node node;
        node.q = !bond;
        std::vector<EdgeId> order;
        if (bond) {
            order.assign(inc.begin(), inc.end());
            std::sort(order.begin(), order.end());
        } else {
            order = rotation(d, a);
        }
        // children follow the cyclic order starting after the entry edge
        std::size_t start = 0;
        if (entry.valid()) {
            for (std::size_t i = 0; i < order.size(); ++i)
                if (order[i] == entry) start = i + 1;
        }
        for (std::size_t i = 0; i < order.size(); ++i) {
            EdgeId e = order[(start + i) % order.size()];
            if (e == entry) continue;
            node.children.push_back(resolve(e, a));
        }
        out.nodes.push_back(std::move(node));
        return {false, EdgeId{}, static_cast<int>(out.nodes.size()) - 1};
    }
};

std::string render(const EmbeddingTree& t, int node,
                   const std::function<std::string(std::uint32_t)>& label, bool cyclic_root);

std::string render_child(const EmbeddingTree& t, const EmbeddingTree::Child& c,
                         const std::function<std::string(std::uint32_t)>& label) {
    if (c.leaf) return label ? label(c.edge.index) : std::to_string(c.edge.index);
    return render(t, c.node, label, false);
}

std::string render(const EmbeddingTree& t, int node,
                   const std::function<std::string(std::uint32_t)>& label, bool cyclic_root) {
    const auto& n = t.nodes[node];
    std::vector<std::string> parts;
    for (const auto& c : n.children) parts.push_back(render_child(t, c, label));
    if (!n.q) {
        std::sort(parts.begin(), parts.end());
        std::string s = "P(";
        for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
        return s + ")";
    }
    // Q: fixed up to reversal; the root is additionally cyclic
    auto joined = [&](const std::vector<std::string>& seq) {
        std::string s;
        for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? "," : "") + seq[i];
        return s;
    };
    std::vector<std::string> best = parts;
    auto consider = [&](std::vector<std::string> cand) {
        if (joined(cand) < joined(best)) best = std::move(cand);
    };
    if (cyclic_root) {
        for (std::size_t s = 0; s < parts.size(); ++s) {
            std::vector<std::string> rot;
            for (std::size_t i = 0; i < parts.size(); ++i) rot.push_back(parts[(s + i) % parts.size()]);
            consider(rot);
            std::reverse(rot.begin(), rot.end());
            std::vector<std::string> rot2;
            for (std::size_t i = 0; i < parts.size(); ++i) rot2.push_back(rot[i]);
            consider(rot2);
        }
    } else {
        std::vector<std::string> rev = parts;
        std::reverse(rev.begin(), rev.end());
        consider(rev);
    }
    return "Q[" + joined(best) + "]";
}

} // namespace

EmbeddingTree embedding_tree(const SkeletonDecomposition& d, VertexId repr_v) {
    d.represented().check_vertex(repr_v);
    if (!d.spqr_clean()) fail(Errc::NotSpqrTree, "embedding_tree: needs a maintained SPQR-tree");
    if (!is_planar(d)) fail(Errc::NonPlanarState, "embedding_tree: represented graph is non-planar");
    if (d.represented().degree(repr_v) < 2)
        fail(Errc::BadInput, "embedding_tree: vertex degree below two");

    // enter at the allocation skeleton holding the smallest incident edge
    EdgeId smallest{};
    for (EdgeId e : d.represented().incident(repr_v))
        if (!smallest.valid() || e < smallest) smallest = e;
    EdgeId real = d.real_edge_of(smallest);
    auto [x, y] = d.arena().endpoints(real);
    VertexId a0 = (d.orig_vertex(x) == repr_v) ? x : y;

    TreeBuilder b{d, repr_v, {}};
    const Multigraph& g = d.arena();
    auto inc = g.incident(a0);
    if (inc.size() == 2 && d.cached_class(d.skeleton_of(a0)) == SkeletonClass::Polygon) {
        auto c1 = b.resolve(inc[0], a0);
        auto c2 = b.resolve(inc[1], a0);
        if (c1.leaf && c2.leaf) {
            b.out.nodes.push_back({false, {c1, c2}});
            b.out.root = 0;
        } else if (!c1.leaf) {
            b.out.nodes[c1.node].children.push_back(c2);
            b.out.root = c1.node;
        } else {
            b.out.nodes[c2.node].children.push_back(c1);
            b.out.root = c2.node;
        }
    } else {
        auto c = b.descend(a0, EdgeId{});
        b.out.root = c.node;
    }
    if (b.out.leaf_count != d.represented().degree(repr_v))
        fail(Errc::BadInput, "embedding_tree: leaf census mismatch");
    return std::move(b.out);
}

std::string format_embedding_tree(const EmbeddingTree& t,
                                  const std::function<std::string(std::uint32_t)>& label) {
    if (t.root < 0) return "()";
    return render(t, t.root, label, true);
}

namespace {

// all linear left-to-right leaf orders of a child
void child_linears(const EmbeddingTree& t, const EmbeddingTree::Child& c,
                   std::vector<std::vector<EdgeId>>& out);

void node_linears(const EmbeddingTree& t, int node, std::vector<std::vector<EdgeId>>& out) {
    const auto& n = t.nodes[node];
    std::vector<std::vector<std::vector<EdgeId>>> per_child;
    for (const auto& c : n.children) {
        per_child.emplace_back();
        child_linears(t, c, per_child.back());
    }
    std::vector<int> order(n.children.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

    auto emit_orderings = [&](const std::vector<int>& perm) {
        std::vector<std::vector<EdgeId>> partial{{}};
        for (int ci : perm) {
            std::vector<std::vector<EdgeId>> next;
            for (const auto& prefix : partial)
                for (const auto& block : per_child[ci]) {
                    auto seq = prefix;
                    seq.insert(seq.end(), block.begin(), block.end());
                    next.push_back(std::move(seq));
                }
            partial = std::move(next);
        }
        for (auto& seq : partial) out.push_back(std::move(seq));
    };

    if (!n.q) {
        std::sort(order.begin(), order.end());
        do {
            emit_orderings(order);
        } while (std::next_permutation(order.begin(), order.end()));
    } else {
        emit_orderings(order);
        std::reverse(order.begin(), order.end());
        if (order.size() > 1) emit_orderings(order);
    }
}

void child_linears(const EmbeddingTree& t, const EmbeddingTree::Child& c,
                   std::vector<std::vector<EdgeId>>& out) {
    if (c.leaf) {
        out.push_back({c.edge});
        return;
    }
    node_linears(t, c.node, out);
}

} // namespace

std::vector<std::vector<EdgeId>> admissible_rotations(const EmbeddingTree& t) {
    if (t.leaf_count > 8) fail(Errc::SizeGuard, "admissible_rotations: degree above the guard");
    if (t.root < 0) return {};
    std::vector<std::vector<EdgeId>> linears;
    node_linears(t, t.root, linears);
    std::set<std::vector<EdgeId>> classes;
    for (auto& seq : linears) classes.insert(oracle::canonical_cycle(std::move(seq)));
    return {classes.begin(), classes.end()};
}

} // namespace spqr
