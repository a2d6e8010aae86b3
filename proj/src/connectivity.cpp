#include "spqr/connectivity.hpp"

#include <algorithm>
#include <unordered_set>

namespace spqr {

std::vector<VertexId> component_of(const Multigraph& g, VertexId seed) {
    g.check_vertex(seed);
    std::vector<VertexId> out;
    std::unordered_set<std::uint32_t> seen;
    std::vector<VertexId> stack{seed};
    seen.insert(seed.index);
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        out.push_back(v);
        for (EdgeId e : g.incident(v)) {
            VertexId w = g.opposite(e, v);
            if (seen.insert(w.index).second) stack.push_back(w);
        }
    }
    return out;
}

namespace {

// Iterative lowpoint DFS over the component of `seed`; true iff a cutvertex exists.
bool has_cutvertex(const Multigraph& g, VertexId seed, std::size_t component_size) {
    struct Frame {
        VertexId v;
        EdgeId via; // tree edge into v (invalid for root)
        std::size_t next = 0;
    };
    std::unordered_map<std::uint32_t, int> num;
    std::unordered_map<std::uint32_t, int> low;
    int counter = 0;
    std::vector<Frame> stack;
    stack.push_back({seed, EdgeId{}, 0});
    num[seed.index] = low[seed.index] = counter++;
    std::size_t root_children = 0;

    while (!stack.empty()) {
        Frame& f = stack.back();
        auto inc = g.incident(f.v);
        if (f.next < inc.size()) {
            EdgeId e = inc[f.next++];
            if (e == f.via) {
                f.via = EdgeId{}; // skip the tree edge once; parallels act as back edges
                continue;
            }
            VertexId w = g.opposite(e, f.v);
            auto it = num.find(w.index);
            if (it == num.end()) {
                num[w.index] = low[w.index] = counter++;
                if (stack.size() == 1) ++root_children;
                stack.push_back({w, e, 0});
            } else {
                low[f.v.index] = std::min(low[f.v.index], it->second);
            }
        } else {
            Frame done = f;
            stack.pop_back();
            if (!stack.empty()) {
                VertexId parent = stack.back().v;
                low[parent.index] = std::min(low[parent.index], low[done.v.index]);
                if (stack.size() > 1 && low[done.v.index] >= num[parent.index]) return true;
            }
        }
    }
    (void)component_size;
    return root_children > 1;
}

} // namespace

bool component_biconnected(const Multigraph& g, VertexId seed) {
    auto comp = component_of(g, seed);
    if (comp.size() < 2) return false;
    if (comp.size() == 2) {
        // bond case: needs at least two parallel edges
        return g.degree(comp[0]) >= 2;
    }
    return !has_cutvertex(g, seed, comp.size());
}

bool is_biconnected(const Multigraph& g) {
    if (g.vertex_count() == 0) return false;
    auto verts = g.vertices();
    if (component_of(g, verts[0]).size() != g.vertex_count()) return false;
    return component_biconnected(g, verts[0]);
}

std::vector<Bridge> bridges_at(const Multigraph& g, VertexId u, VertexId v) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (u == v) fail(Errc::BadInput, "bridges_at: pair vertices must differ");

    std::vector<Bridge> bridges;
    std::unordered_set<std::uint32_t> visited; // interior vertices already assigned
    std::unordered_set<std::uint32_t> edge_seen;

    auto flood = [&](VertexId start) {
        std::vector<VertexId> stack{start};
        visited.insert(start.index);
        Bridge b;
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            for (EdgeId e : g.incident(x)) {
                if (!edge_seen.insert(e.index).second) continue;
                b.edges.push_back(e);
                VertexId w = g.opposite(e, x);
                if (w == u || w == v) continue;
                if (visited.insert(w.index).second) stack.push_back(w);
            }
        }
        std::sort(b.edges.begin(), b.edges.end());
        bridges.push_back(std::move(b));
    };

    for (VertexId pole : {u, v}) {
        for (EdgeId e : g.incident(pole)) {
            VertexId w = g.opposite(e, pole);
            if (w == u || w == v) {
                // direct pair edge: its own singleton bridge
                if (edge_seen.insert(e.index).second) bridges.push_back(Bridge{{e}});
                continue;
            }
            if (!visited.count(w.index)) flood(w);
        }
    }

    std::sort(bridges.begin(), bridges.end(),
              [](const Bridge& a, const Bridge& b) { return a.edges.front() < b.edges.front(); });
    return bridges;
}

bool is_separation_pair(const Multigraph& g, VertexId u, VertexId v) {
    std::size_t direct = 0, interior = 0;
    for (const Bridge& b : bridges_at(g, u, v)) {
        auto [x, y] = g.endpoints(b.edges.front());
        bool is_direct = (x == u || x == v) && (y == u || y == v);
        if (b.edges.size() == 1 && is_direct)
            ++direct;
        else
            ++interior;
    }
    return interior >= 2 || direct >= 2;
}

CollapseResult collapse_vertices(const Multigraph& g, const std::vector<VertexId>& group) {
    if (group.empty()) fail(Errc::BadInput, "collapse_vertices: empty group");
    for (VertexId v : group) g.check_vertex(v);

    CollapseResult out;
    out.merged = out.graph.add_vertex();
    std::unordered_set<std::uint32_t> in_group;
    for (VertexId v : group) {
        in_group.insert(v.index);
        out.vertex_map.emplace(v, out.merged);
    }
    for (VertexId v : g.vertices()) {
        if (in_group.count(v.index)) continue;
        out.vertex_map.emplace(v, out.graph.add_vertex());
    }
    for (EdgeId e : g.edges()) {
        auto [x, y] = g.endpoints(e);
        VertexId nx = out.vertex_map.at(x), ny = out.vertex_map.at(y);
        if (nx == ny) continue;
        out.graph.add_edge(nx, ny);
    }
    return out;
}

} // namespace spqr
