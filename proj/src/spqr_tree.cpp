#include "spqr/spqr_tree.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "spqr/connectivity.hpp"
#include "spqr/operations.hpp"
#include "spqr/planarity.hpp"

namespace spqr {

SkeletonClass classify_skeleton(const SkeletonDecomposition& d, SkeletonId s) {
    const Multigraph& g = d.arena();
    auto verts = d.skeleton_vertices(s);
    auto edges = d.skeleton_edges(s);
    for (VertexId v : verts)
        if (d.vertex_kind(v) != VertexKind::Regular)
            fail(Errc::VirtualVertex, "classify_skeleton: virtual vertices present");
    for (EdgeId e : edges)
        if (d.edge_kind(e) == EdgeKind::Occupied)
            fail(Errc::BadInput, "classify_skeleton: occupied edges present");

    if (verts.size() == 2) return edges.size() >= 2 ? SkeletonClass::Bond : SkeletonClass::NotSpqr;
    bool all_deg2 = true;
    for (VertexId v : verts)
        if (g.degree(v) != 2) all_deg2 = false;
    if (all_deg2 && edges.size() == verts.size() && verts.size() >= 3) return SkeletonClass::Polygon;

    if (verts.size() < 4) return SkeletonClass::NotSpqr;
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (EdgeId e : edges) {
        auto [x, y] = g.endpoints(e);
        if (!seen.insert(std::minmax(x.index, y.index)).second) return SkeletonClass::NotSpqr;
    }
    std::vector<VertexId> vv(verts.begin(), verts.end());
    for (std::size_t i = 0; i < vv.size(); ++i)
        for (std::size_t j = i + 1; j < vv.size(); ++j)
            if (is_separation_pair(g, vv[i], vv[j])) return SkeletonClass::NotSpqr;
    return SkeletonClass::Rigid;
}

bool is_spqr(const SkeletonDecomposition& d) {
    if (d.twin_vertex_pairs() != 0) return false;
    std::unordered_map<SkeletonId, SkeletonClass> cls;
    bool single = d.skeleton_count() == 1;
    for (SkeletonId s : d.skeleton_ids()) {
        SkeletonClass c;
        try {
            c = classify_skeleton(d, s);
        } catch (const Error&) {
            return false;
        }
        if (c != SkeletonClass::Polygon && c != SkeletonClass::Bond && c != SkeletonClass::Rigid) return false;
        if (c == SkeletonClass::Bond && d.skeleton_edges(s).size() == 2 && !single)
            return false; // a two-edge bond inside a tree carries no information
        cls[s] = c;
    }
    for (auto [a, b] : d.decomposition_tree().edges)
        if (cls[a] == cls[b] && (cls[a] == SkeletonClass::Polygon || cls[a] == SkeletonClass::Bond))
            return false;
    return true;
}

namespace {

bool is_plain(const SkeletonDecomposition& d, VertexId v) {
    return d.vertex_kind(v) == VertexKind::Regular;
}

// terminal shapes of the splitting recursion
bool tag_if_terminal(SkeletonDecomposition& d, SkeletonId s) {
    const Multigraph& g = d.arena();
    auto verts = d.skeleton_vertices(s);
    auto edges = d.skeleton_edges(s);
    if (verts.size() == 2) {
        d.set_cached_class(s, SkeletonClass::Bond);
        return true;
    }
    bool cycle = edges.size() == verts.size();
    for (VertexId v : verts) {
        if (!cycle) break;
        if (g.degree(v) != 2 || !is_plain(d, v)) cycle = false;
    }
    if (cycle && verts.size() >= 3) {
        d.set_cached_class(s, SkeletonClass::Polygon);
        return true;
    }
    return false;
}

// applies one split move if any exists
std::optional<std::pair<SkeletonId, SkeletonId>> find_and_split(SkeletonDecomposition& d, SkeletonId s) {
    const Multigraph& g = d.arena();
    std::vector<VertexId> verts(d.skeleton_vertices(s).begin(), d.skeleton_vertices(s).end());
    std::sort(verts.begin(), verts.end());

    // parallel classes between two regular vertices split off as bonds
    {
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<EdgeId>> classes;
        for (EdgeId e : d.skeleton_edges(s)) {
            auto [x, y] = g.endpoints(e);
            if (!is_plain(d, x) || !is_plain(d, y)) continue;
            classes[std::minmax(x.index, y.index)].push_back(e);
        }
        for (auto& [key, group] : classes) {
            if (group.size() < 2) continue;
            std::sort(group.begin(), group.end());
            return split_off(d, s, VertexId{g.tag(), key.first}, VertexId{g.tag(), key.second}, group);
        }
    }

    // maximal chains of regular degree-2 vertices split off as polygons
    {
        std::unordered_set<std::uint32_t> used;
        for (VertexId x : verts) {
            if (g.degree(x) != 2 || !is_plain(d, x) || used.count(x.index)) continue;
            used.insert(x.index);
            VertexId ends[2];
            EdgeId end_edges[2];
            bool wrapped = false;
            int side = 0;
            for (EdgeId e0 : g.incident(x)) {
                EdgeId e = e0;
                VertexId cur = g.opposite(e, x);
                while (cur != x && g.degree(cur) == 2 && is_plain(d, cur)) {
                    used.insert(cur.index);
                    EdgeId next{};
                    for (EdgeId e2 : g.incident(cur))
                        if (e2 != e) next = e2;
                    e = next;
                    cur = g.opposite(e, cur);
                }
                if (cur == x) wrapped = true;
                ends[side] = cur;
                end_edges[side] = e;
                ++side;
            }
            if (wrapped) continue;                 // the skeleton is one cycle (handled as terminal)
            if (ends[0] == ends[1]) continue;      // chain closes on a single attachment
            if (!is_plain(d, ends[0]) || !is_plain(d, ends[1])) continue;
            return split_off(d, s, ends[0], ends[1], {end_edges[0], end_edges[1]});
        }
    }

    // general separation pairs {v, c}: c a cutvertex of the skeleton minus v
    for (VertexId v : verts) {
        if (!is_plain(d, v)) continue;
        std::unordered_map<std::uint32_t, int> num, low;
        std::set<std::uint32_t> cuts;
        int counter = 0;
        for (VertexId root : verts) {
            if (root == v || num.count(root.index)) continue;
            struct Frame {
                VertexId vert;
                EdgeId via;
                std::size_t next = 0;
            };
            std::vector<Frame> stack{{root, EdgeId{}, 0}};
            num[root.index] = low[root.index] = counter++;
            std::size_t root_children = 0;
            while (!stack.empty()) {
                Frame& f = stack.back();
                auto inc = g.incident(f.vert);
                if (f.next < inc.size()) {
                    EdgeId e = inc[f.next++];
                    if (e == f.via) {
                        f.via = EdgeId{};
                        continue;
                    }
                    VertexId w = g.opposite(e, f.vert);
                    if (w == v) continue;
                    auto it = num.find(w.index);
                    if (it == num.end()) {
                        num[w.index] = low[w.index] = counter++;
                        if (stack.size() == 1) ++root_children;
                        stack.push_back({w, e, 0});
                    } else {
                        low[f.vert.index] = std::min(low[f.vert.index], it->second);
                    }
                } else {
                    Frame done = f;
                    stack.pop_back();
                    if (!stack.empty()) {
                        VertexId parent = stack.back().vert;
                        low[parent.index] = std::min(low[parent.index], low[done.vert.index]);
                        if (stack.size() > 1 && low[done.vert.index] >= num[parent.index])
                            cuts.insert(parent.index);
                    }
                }
            }
            if (root_children > 1) cuts.insert(root.index);
        }
        for (std::uint32_t ci : cuts) {
            VertexId c{g.tag(), ci};
            if (!is_plain(d, c)) continue;
            auto bridges = bridges_at(g, v, c);
            const Bridge* pick = nullptr;
            for (const Bridge& b : bridges) {
                if (b.edges.size() == 1) {
                    auto [x, y] = g.endpoints(b.edges[0]);
                    bool direct = (x == v || x == c) && (y == v || y == c);
                    if (direct) continue;
                }
                if (!pick || b.edges.size() < pick->edges.size()) pick = &b;
            }
            if (!pick) continue;
            std::vector<EdgeId> seeds;
            for (EdgeId e : pick->edges) {
                auto [x, y] = g.endpoints(e);
                if (x == v || x == c || y == v || y == c) seeds.push_back(e);
            }
            return split_off(d, s, v, c, seeds);
        }
    }
    return std::nullopt;
}

} // namespace

std::vector<SkeletonId> decompose_skeleton(SkeletonDecomposition& d, SkeletonId s) {
    std::vector<SkeletonId> queue{s};
    std::vector<SkeletonId> out;
    while (!queue.empty()) {
        SkeletonId cur = queue.back();
        queue.pop_back();
        if (tag_if_terminal(d, cur)) {
            out.push_back(cur);
            continue;
        }
        auto split = find_and_split(d, cur);
        if (!split) {
            // pure leftovers are rigid; pieces that keep virtual vertices are
            // finished later by Integrate
            bool plain = true;
            for (VertexId v : d.skeleton_vertices(cur))
                if (!is_plain(d, v)) plain = false;
            d.set_cached_class(cur, plain ? SkeletonClass::Rigid : SkeletonClass::Unknown);
            out.push_back(cur);
            continue;
        }
        queue.push_back(split->first);
        queue.push_back(split->second);
    }
    return out;
}

std::vector<SkeletonId> normalize_adjacent(SkeletonDecomposition& d, std::vector<SkeletonId> seeds) {
    std::set<SkeletonId> active(seeds.begin(), seeds.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (SkeletonId s : std::vector<SkeletonId>(active.begin(), active.end())) {
            if (!d.skeleton_alive(s)) {
                active.erase(s);
                continue;
            }
            SkeletonClass cs = d.cached_class(s);
            if (cs != SkeletonClass::Polygon && cs != SkeletonClass::Bond) continue;

            std::vector<EdgeId> virtuals;
            for (EdgeId e : d.skeleton_edges(s))
                if (d.edge_kind(e) == EdgeKind::Virtual) virtuals.push_back(e);
            std::sort(virtuals.begin(), virtuals.end());

            // a two-edge bond is a degree-2 tree node carrying no information:
            // suppress it into its neighbor through either virtual edge
            if (cs == SkeletonClass::Bond && d.skeleton_edges(s).size() == 2 && !virtuals.empty()) {
                EdgeId via = virtuals.front();
                EdgeId other{};
                for (EdgeId e : d.skeleton_edges(s))
                    if (e != via) other = e;
                SkeletonId t = d.skeleton_of(d.twin_edge(via));
                EdgeId tv = d.twin_edge(via);
                SkeletonClass ct = d.cached_class(t);
                SkeletonId merged = join_separation_pair(d, via);
                d.set_cached_class(merged, ct);
                if (ct == SkeletonClass::Rigid && d.maint().skeleton_planar(t)) {
                    // the surviving edge takes the slot of the removed twin
                    auto& store = d.maint().rotation;
                    for (VertexId end : {d.arena().endpoints(other).first, d.arena().endpoints(other).second}) {
                        if (store.size() <= end.index) continue;
                        std::replace(store[end.index].begin(), store[end.index].end(), tv, other);
                    }
                }
                active.erase(s);
                active.erase(t);
                active.insert(merged);
                changed = true;
                break;
            }

            for (EdgeId e : virtuals) {
                if (!d.arena().is_edge(e)) continue;
                SkeletonId t = d.skeleton_of(d.twin_edge(e));
                if (d.cached_class(t) != cs) continue;
                SkeletonId merged = join_separation_pair(d, e);
                d.set_cached_class(merged, cs);
                active.erase(s);
                active.erase(t);
                active.insert(merged);
                changed = true;
                break;
            }
            if (changed) break;
        }
    }
    return {active.begin(), active.end()};
}

SkeletonDecomposition build_spqr(const Multigraph& g) {
    SkeletonDecomposition d = trivial_decomposition(g);
    SkeletonId root = d.skeleton_ids()[0];
    auto pieces = decompose_skeleton(d, root);
    normalize_adjacent(d, pieces);
    init_planarity(d);
    d.set_spqr_clean(true);
    return d;
}

// ------------------------------------------------------------- canonical

namespace {

struct CanonicalWriter {
    const SkeletonDecomposition& d;

    std::string vertex_label(VertexId v) const {
        const Multigraph& g = d.arena();
        if (d.vertex_kind(v) == VertexKind::Regular) return "v" + std::to_string(d.orig_vertex(v).index);
        std::set<std::string> nb;
        for (EdgeId e : g.incident(v)) {
            VertexId w = g.opposite(e, v);
            if (d.vertex_kind(w) == VertexKind::Regular) nb.insert(std::to_string(d.orig_vertex(w).index));
        }
        std::string out = d.vertex_kind(v) == VertexKind::Virtual ? "w(" : "rim(";
        for (auto it = nb.begin(); it != nb.end(); ++it) out += (it == nb.begin() ? "" : ",") + *it;
        return out + ")";
    }

    char class_char(SkeletonId s) const {
        SkeletonClass c = d.cached_class(s);
        if (c == SkeletonClass::Unknown) {
            try {
                c = classify_skeleton(d, s);
            } catch (const Error&) {
                c = SkeletonClass::NotSpqr;
            }
        }
        switch (c) {
        case SkeletonClass::Polygon: return 'P';
        case SkeletonClass::Bond: return 'B';
        case SkeletonClass::Rigid: return 'R';
        default: return 'X';
        }
    }

    std::string skeleton_string(SkeletonId s, EdgeId entry_edge, VertexId entry_vertex) const {
        const Multigraph& g = d.arena();
        std::vector<std::string> items;
        for (VertexId v : d.skeleton_vertices(s)) items.push_back("." + vertex_label(v));
        for (EdgeId e : d.skeleton_edges(s)) {
            auto [x, y] = g.endpoints(e);
            std::string lx = vertex_label(x), ly = vertex_label(y);
            if (ly < lx) std::swap(lx, ly);
            switch (d.edge_kind(e)) {
            case EdgeKind::Real:
                items.push_back("r" + lx + "-" + ly + "#" + std::to_string(d.orig_edge(e).index));
                break;
            case EdgeKind::Occupied:
                items.push_back("o" + lx + "-" + ly);
                break;
            case EdgeKind::Virtual:
                if (e == entry_edge) {
                    items.push_back("^" + lx + "-" + ly);
                } else {
                    EdgeId twin = d.twin_edge(e);
                    items.push_back("t" + lx + "-" + ly + "[" +
                                    skeleton_string(d.skeleton_of(twin), twin, VertexId{}) + "]");
                }
                break;
            }
        }
        for (VertexId v : d.skeleton_vertices(s)) {
            if (d.vertex_kind(v) != VertexKind::Virtual) continue;
            if (v == entry_vertex) {
                items.push_back("^^" + vertex_label(v));
                continue;
            }
            VertexId twin = d.twin_vertex(v);
            if (!twin.valid()) continue;
            items.push_back("T" + vertex_label(v) + "[" + skeleton_string(d.skeleton_of(twin), EdgeId{}, twin) +
                            "]");
        }
        std::sort(items.begin(), items.end());
        std::string out(1, class_char(s));
        out += "{";
        for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ";" : "") + items[i];
        return out + "}";
    }
};

} // namespace

std::string canonical_form(const SkeletonDecomposition& d) {
    SkeletonId root = kNoSkeleton;
    std::uint32_t best = kInvalidIndex;
    for (SkeletonId s : d.skeleton_ids())
        for (EdgeId e : d.skeleton_edges(s))
            if (d.edge_kind(e) == EdgeKind::Real && d.orig_edge(e).index < best) {
                best = d.orig_edge(e).index;
                root = s;
            }
    if (root == kNoSkeleton) return "empty";
    CanonicalWriter w{d};
    return w.skeleton_string(root, EdgeId{}, VertexId{});
}

} // namespace spqr
