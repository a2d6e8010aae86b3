#include "spqr/embedder.hpp"

#include <algorithm>
#include <map>
#include <cstdio>
#include <cstdlib>
#include <unordered_set>

namespace spqr {

namespace {

struct SimpleView {
    std::vector<VertexId> verts;
    std::unordered_map<std::uint32_t, int> vidx;
    std::vector<std::pair<int, int>> edges; // representative edges, local indices
    std::vector<EdgeId> rep;                // representative ids
    std::map<std::pair<int, int>, std::vector<EdgeId>> extras; // parallel copies per class
    std::vector<std::vector<std::pair<int, int>>> adj; // vertex -> (neighbor, edge index)
};

SimpleView simplify(const Multigraph& g) {
    SimpleView s;
    s.verts = g.vertices();
    std::sort(s.verts.begin(), s.verts.end());
    for (std::size_t i = 0; i < s.verts.size(); ++i) s.vidx[s.verts[i].index] = static_cast<int>(i);
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    std::map<std::pair<int, int>, int> index_of;
    for (EdgeId e : edges) {
        auto [u, v] = g.endpoints(e);
        auto key = std::minmax(s.vidx[u.index], s.vidx[v.index]);
        auto it = index_of.find(key);
        if (it == index_of.end()) {
            index_of.emplace(key, static_cast<int>(s.edges.size()));
            s.edges.push_back(key);
            s.rep.push_back(e);
        } else {
            s.extras[key].push_back(e);
        }
    }
    s.adj.resize(s.verts.size());
    for (std::size_t i = 0; i < s.edges.size(); ++i) {
        auto [a, b] = s.edges[i];
        s.adj[a].emplace_back(b, static_cast<int>(i));
        s.adj[b].emplace_back(a, static_cast<int>(i));
    }
    return s;
}

// Face-insertion planarity testing and embedding on the simplified graph.
// Darts: 2e = a->b, 2e+1 = b->a for edge e = (a,b).
struct FaceInserter {
    const SimpleView& s;
    int n, m;
    std::vector<int> face_next;
    std::vector<int> face_of;
    std::vector<char> edge_embedded;
    std::vector<char> vertex_embedded;
    int face_count = 0;

    explicit FaceInserter(const SimpleView& view)
        : s(view), n(static_cast<int>(view.verts.size())), m(static_cast<int>(view.edges.size())),
          face_next(2 * m, -1), face_of(2 * m, -1), edge_embedded(m, 0), vertex_embedded(n, 0) {}

    int tail(int d) const { return d % 2 == 0 ? s.edges[d / 2].first : s.edges[d / 2].second; }

    std::vector<int> initial_cycle() {
        std::vector<int> parent_edge(n, -1), parent(n, -1), state(n, 0);
        std::vector<int> stack{0};
        state[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            bool advanced = false;
            for (auto [w, e] : s.adj[v]) {
                if (e == parent_edge[v]) continue;
                if (state[w] == 1) {
                    std::vector<int> cyc_edges{e};
                    std::vector<int> cyc_verts{v};
                    for (int x = v; x != w; x = parent[x]) {
                        cyc_edges.push_back(parent_edge[x]);
                        cyc_verts.push_back(parent[x]);
                    }
                    std::reverse(cyc_verts.begin(), cyc_verts.end());
                    std::reverse(cyc_edges.begin(), cyc_edges.end());
                    std::vector<int> darts;
                    for (std::size_t i = 0; i < cyc_edges.size(); ++i) {
                        int e2 = cyc_edges[i];
                        int from = cyc_verts[i];
                        darts.push_back(s.edges[e2].first == from ? 2 * e2 : 2 * e2 + 1);
                    }
                    return darts;
                }
                if (state[w] == 0) {
                    state[w] = 1;
                    parent[w] = v;
                    parent_edge[w] = e;
                    stack.push_back(w);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                state[v] = 2;
                stack.pop_back();
            }
        }
        return {};
    }

    void embed_cycle(const std::vector<int>& darts) {
        int k = static_cast<int>(darts.size());
        for (int i = 0; i < k; ++i) {
            face_next[darts[i]] = darts[(i + 1) % k];
            face_of[darts[i]] = 0;
            face_next[darts[i] ^ 1] = darts[(i + k - 1) % k] ^ 1;
            face_of[darts[i] ^ 1] = 1;
            edge_embedded[darts[i] / 2] = 1;
            vertex_embedded[tail(darts[i])] = 1;
        }
        face_count = 2;
    }

    std::vector<int> face_darts(int d) const {
        std::vector<int> out;
        int x = d;
        do {
            out.push_back(x);
            x = face_next[x];
        } while (x != d);
        return out;
    }

    struct Fragment {
        std::vector<int> attachments; // embedded vertices, sorted
        int chord = -1;               // edge index when the fragment is a single edge
        std::vector<int> interior;    // the unembedded component, empty for chords
    };

    std::vector<Fragment> fragments() const {
        std::vector<Fragment> out;
        for (int e = 0; e < m; ++e) {
            if (edge_embedded[e]) continue;
            auto [a, b] = s.edges[e];
            if (vertex_embedded[a] && vertex_embedded[b]) {
                Fragment f;
                f.attachments = {std::min(a, b), std::max(a, b)};
                f.chord = e;
                out.push_back(std::move(f));
            }
        }
        std::vector<char> seen(n, 0);
        for (int v = 0; v < n; ++v) {
            if (vertex_embedded[v] || seen[v]) continue;
            Fragment f;
            std::unordered_set<int> attach;
            std::vector<int> stack{v};
            seen[v] = 1;
            f.interior.push_back(v);
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (auto [w, e] : s.adj[x]) {
                    (void)e;
                    if (vertex_embedded[w]) {
                        attach.insert(w);
                    } else if (!seen[w]) {
                        seen[w] = 1;
                        f.interior.push_back(w);
                        stack.push_back(w);
                    }
                }
            }
            f.attachments.assign(attach.begin(), attach.end());
            std::sort(f.attachments.begin(), f.attachments.end());
            out.push_back(std::move(f));
        }
        return out;
    }

    struct Path {
        std::vector<int> verts; // a .. b, interior unembedded
        std::vector<int> edges;
    };

    // alpha-path between two attachments whose interior stays inside the
    // fragment's own component
    Path fragment_path(const Fragment& f) const {
        if (f.chord >= 0) return {{s.edges[f.chord].first, s.edges[f.chord].second}, {f.chord}};
        std::vector<char> mine(n, 0);
        for (int x : f.interior) mine[x] = 1;
        int a = f.attachments.front();
        std::vector<int> pv(n, -1), pe(n, -1);
        std::vector<int> queue;
        for (auto [w, e] : s.adj[a]) {
            if (mine[w] && pv[w] < 0) {
                pv[w] = a;
                pe[w] = e;
                queue.push_back(w);
            }
        }
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int x = queue[qi];
            for (auto [w, e] : s.adj[x]) {
                if (vertex_embedded[w]) {
                    if (w == a) continue;
                    Path p;
                    p.verts = {w};
                    p.edges = {e};
                    for (int y = x; y != a; y = pv[y]) {
                        p.verts.push_back(y);
                        p.edges.push_back(pe[y]);
                    }
                    p.verts.push_back(a);
                    std::reverse(p.verts.begin(), p.verts.end());
                    std::reverse(p.edges.begin(), p.edges.end());
                    return p;
                }
                if (mine[w] && pv[w] < 0) {
                    pv[w] = x;
                    pe[w] = e;
                    queue.push_back(w);
                }
            }
        }
        return {};
    }

    void embed_path(const Path& p, int face_dart) {
        int a = p.verts.front(), b = p.verts.back();
        auto darts = face_darts(face_dart);
        int t = static_cast<int>(darts.size());
        int ia = -1, ib = -1;
        for (int i = 0; i < t; ++i) {
            if (tail(darts[i]) == a) ia = i;
            if (tail(darts[i]) == b) ib = i;
        }
        std::vector<int> fwd, bwd;
        for (std::size_t i = 0; i + 1 < p.verts.size(); ++i) {
            int e = p.edges[i];
            fwd.push_back(s.edges[e].first == p.verts[i] ? 2 * e : 2 * e + 1);
        }
        for (std::size_t i = p.verts.size() - 1; i > 0; --i) bwd.push_back(fwd[i - 1] ^ 1);

        int old_face = face_of[face_dart];
        int new_face = face_count++;
        int prev_a = darts[(ia + t - 1) % t];
        int prev_b = darts[(ib + t - 1) % t];

        // old id keeps the side a -> path -> b -> along old boundary -> a
        for (std::size_t i = 0; i + 1 < fwd.size(); ++i) face_next[fwd[i]] = fwd[i + 1];
        face_next[fwd.back()] = darts[ib];
        face_next[prev_a] = fwd.front();
        // new face runs b -> path -> a -> along old boundary -> b
        for (std::size_t i = 0; i + 1 < bwd.size(); ++i) face_next[bwd[i]] = bwd[i + 1];
        face_next[bwd.back()] = darts[ia];
        face_next[prev_b] = bwd.front();

        for (int d : fwd) face_of[d] = old_face;
        int d = bwd.front();
        do {
            face_of[d] = new_face;
            d = face_next[d];
        } while (d != bwd.front());

        for (std::size_t i = 0; i + 1 < p.verts.size(); ++i) {
            edge_embedded[p.edges[i]] = 1;
            vertex_embedded[p.verts[i]] = 1;
        }
        vertex_embedded[b] = 1;
    }

    bool run() {
        bool trace = std::getenv("SPQR_TRACE_DMP") != nullptr;
        auto cycle = initial_cycle();
        if (cycle.empty()) return false;
        embed_cycle(cycle);
        int remaining = m - static_cast<int>(cycle.size());
        while (remaining > 0) {
            auto frags = fragments();
            if (frags.empty()) break;
            std::vector<int> reps(face_count, -1);
            for (int d = 0; d < 2 * m; ++d)
                if (face_of[d] >= 0 && reps[face_of[d]] < 0) reps[face_of[d]] = d;
            std::vector<std::unordered_set<int>> face_verts(reps.size());
            for (std::size_t fi = 0; fi < reps.size(); ++fi)
                if (reps[fi] >= 0)
                    for (int fd : face_darts(reps[fi])) face_verts[fi].insert(tail(fd));
            if (trace) {
                for (std::size_t fi = 0; fi < reps.size(); ++fi) {
                    if (reps[fi] < 0) continue;
                    fprintf(stderr, "face %zu:", fi);
                    for (int fd : face_darts(reps[fi])) fprintf(stderr, " %d", tail(fd));
                    fprintf(stderr, "\n");
                }
            }

            int chosen_frag = -1, chosen_face = -1, best_count = -1;
            for (std::size_t i = 0; i < frags.size(); ++i) {
                int count = 0, candidate = -1;
                for (std::size_t fi = 0; fi < reps.size(); ++fi) {
                    if (reps[fi] < 0) continue;
                    bool ok = true;
                    for (int x : frags[i].attachments)
                        if (!face_verts[fi].count(x)) {
                            ok = false;
                            break;
                        }
                    if (ok) {
                        ++count;
                        candidate = reps[fi];
                    }
                }
                if (trace) {
                    fprintf(stderr, "frag %zu: chord=%d attach:", i, frags[i].chord);
                    for (int x : frags[i].attachments) fprintf(stderr, " %d", x);
                    fprintf(stderr, " admissible=%d\n", count);
                }
                if (count == 0) return false;
                if (best_count < 0 || count < best_count) {
                    best_count = count;
                    chosen_frag = static_cast<int>(i);
                    chosen_face = candidate;
                }
            }
            Path p = fragment_path(frags[chosen_frag]);
            if (p.edges.empty()) return false;
            if (trace) {
                fprintf(stderr, "embed frag %d into face %d, path:", chosen_frag, face_of[chosen_face]);
                for (int x : p.verts) fprintf(stderr, " %d", x);
                fprintf(stderr, "\n");
            }
            embed_path(p, chosen_face);
            remaining -= static_cast<int>(p.edges.size());
        }
        return true;
    }
};

} // namespace

std::size_t count_faces(const Multigraph& g,
                        const std::unordered_map<VertexId, std::vector<EdgeId>, VertexIdHash>& rotation) {
    auto rot_next = [&](EdgeId e, VertexId at) -> EdgeId {
        const auto& order = rotation.at(at);
        for (std::size_t i = 0; i < order.size(); ++i)
            if (order[i] == e) return order[(i + 1) % order.size()];
        fail(Errc::BadInput, "count_faces: rotation misses an incident edge");
    };
    // dart = (edge, tail vertex); successor: next edge around the head
    std::unordered_set<std::uint64_t> seen;
    auto key = [](EdgeId e, VertexId tail) { return (std::uint64_t(e.index) << 32) | tail.index; };
    std::size_t faces = 0;
    for (const auto& [v, order] : rotation) {
        for (EdgeId e : order) {
            if (seen.count(key(e, v))) continue;
            ++faces;
            EdgeId ce = e;
            VertexId ct = v;
            do {
                seen.insert(key(ce, ct));
                VertexId head = g.opposite(ce, ct);
                ce = rot_next(ce, head);
                ct = head;
            } while (!seen.count(key(ce, ct)));
        }
    }
    return faces;
}

std::optional<EmbeddingResult> embed_biconnected(const Multigraph& g) {
    EmbeddingResult out;
    if (g.vertex_count() <= 2 || g.edge_count() <= 2) {
        // paths, bonds and bigons embed directly: opposite orders at the poles
        for (VertexId v : g.vertices()) {
            std::vector<EdgeId> order(g.incident(v).begin(), g.incident(v).end());
            std::sort(order.begin(), order.end());
            out.rotation.emplace(v, std::move(order));
        }
        if (g.vertex_count() == 2 && g.edge_count() > 1) {
            auto verts = g.vertices();
            std::sort(verts.begin(), verts.end());
            std::reverse(out.rotation[verts[1]].begin(), out.rotation[verts[1]].end());
        }
        out.faces = count_faces(g, out.rotation);
        return out;
    }

    SimpleView s = simplify(g);
    long n = static_cast<long>(s.verts.size());
    long ms = static_cast<long>(s.edges.size());
    if (n >= 3 && ms > 3 * n - 6) return std::nullopt;

    FaceInserter ins(s);
    if (!ins.run()) return std::nullopt;

    // rotations from the face successor: sigma(d) = face_next[rev(d)]
    for (int vi = 0; vi < static_cast<int>(s.verts.size()); ++vi) {
        if (s.adj[vi].empty()) continue;
        int e0 = s.adj[vi].front().second;
        int d0 = s.edges[e0].first == vi ? 2 * e0 : 2 * e0 + 1;
        std::vector<EdgeId> order;
        int d = d0;
        do {
            order.push_back(s.rep[d / 2]);
            d = ins.face_next[d ^ 1];
        } while (d != d0 && static_cast<int>(order.size()) <= 2 * ins.m);
        if (d != d0 || order.size() != s.adj[vi].size())
            fail(Errc::BadInput, "embed_biconnected: inconsistent rotation extraction");
        out.rotation.emplace(s.verts[vi], std::move(order));
    }

    // reinstate parallel classes: forward order at one endpoint, reversed at the other
    for (const auto& [ekey, copies] : s.extras) {
        VertexId a = s.verts[ekey.first], b = s.verts[ekey.second];
        EdgeId rep{};
        for (std::size_t i = 0; i < s.edges.size(); ++i)
            if (s.edges[i] == ekey) rep = s.rep[i];
        auto& ra = out.rotation[a];
        auto& rb = out.rotation[b];
        auto ita = std::find(ra.begin(), ra.end(), rep);
        ra.insert(ita + 1, copies.begin(), copies.end());
        // reversed and placed before the representative so each consecutive
        // pair bounds a bigon
        auto itb = std::find(rb.begin(), rb.end(), rep);
        rb.insert(itb, copies.rbegin(), copies.rend());
    }

    out.faces = count_faces(g, out.rotation);
    long total_n = static_cast<long>(g.vertex_count());
    long total_m = static_cast<long>(g.edge_count());
    if (total_n - total_m + static_cast<long>(out.faces) != 2)
        fail(Errc::BadInput, "embed_biconnected: Euler check failed");
    return out;
}

} // namespace spqr
