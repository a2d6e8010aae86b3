#include "spqr/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "spqr/expand.hpp"
#include "spqr/spqr_tree.hpp"

namespace spqr {

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

struct Host {
    SkeletonDecomposition d;
    std::vector<VertexId> live; // represented vertices, kept fresh locally
};

struct PartSpec {
    Multigraph part;
    std::vector<VertexId> marked;
    std::vector<VertexId> interior_order; // insertion order, for bookkeeping
};

// path interior for low-degree vertices, ring-with-pendants otherwise; a
// connected interior touching every marked vertex keeps hosts growing and
// skeleton cores modest
PartSpec make_part(Rng& rng, std::size_t k, bool ring) {
    PartSpec out;
    if (!ring && k == 2) {
        int inner = 1 + static_cast<int>(rng() % 3);
        VertexId m1 = out.part.add_vertex();
        out.marked.push_back(m1);
        VertexId prev = m1;
        for (int i = 0; i < inner; ++i) {
            VertexId w = out.part.add_vertex();
            out.interior_order.push_back(w);
            out.part.add_edge(prev, w);
            prev = w;
        }
        VertexId m2 = out.part.add_vertex();
        out.marked.push_back(m2);
        out.part.add_edge(prev, m2);
        return out;
    }
    std::vector<VertexId> ring_verts;
    for (std::size_t i = 0; i < k; ++i) {
        VertexId c = out.part.add_vertex();
        ring_verts.push_back(c);
        out.interior_order.push_back(c);
    }
    for (std::size_t i = 0; i < k; ++i) out.part.add_edge(ring_verts[i], ring_verts[(i + 1) % k]);
    for (std::size_t i = 0; i < k; ++i) {
        VertexId m = out.part.add_vertex();
        out.marked.push_back(m);
        out.part.add_edge(m, ring_verts[i]);
    }
    return out;
}

// part that plants a fresh interior vertex of the wanted degree
PartSpec make_hub_part(std::size_t k, int hub_degree) {
    PartSpec out;
    VertexId hub = out.part.add_vertex();
    out.interior_order.push_back(hub);
    std::vector<VertexId> rim;
    for (int i = 0; i < hub_degree; ++i) {
        VertexId r = out.part.add_vertex();
        out.interior_order.push_back(r);
        rim.push_back(r);
        out.part.add_edge(hub, r);
    }
    for (int i = 0; i < hub_degree; ++i) out.part.add_edge(rim[i], rim[(i + 1) % hub_degree]);
    for (std::size_t i = 0; i < k; ++i) {
        VertexId m = out.part.add_vertex();
        out.marked.push_back(m);
        out.part.add_edge(m, rim[(i * rim.size()) / k]);
    }
    return out;
}

std::vector<VertexId> distinct_neighbors(const Multigraph& g, VertexId u) {
    std::vector<VertexId> out;
    std::unordered_set<std::uint32_t> seen;
    for (EdgeId e : g.incident(u)) {
        VertexId w = g.opposite(e, u);
        if (seen.insert(w.index).second) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// expands u with the given part; updates the live vertex list
VertexId apply_expansion(Host& host, VertexId u, PartSpec& spec, Rng& rng) {
    auto neighbors = distinct_neighbors(host.d.represented(), u);
    std::shuffle(neighbors.begin(), neighbors.end(), rng);
    std::unordered_map<VertexId, VertexId, VertexIdHash> phi;
    for (std::size_t i = 0; i < spec.marked.size(); ++i) phi.emplace(spec.marked[i], neighbors[i]);
    auto res = insert_graph_spqr(host.d, u, spec.part, spec.marked, phi);
    VertexId first_interior{};
    for (VertexId w : spec.interior_order) {
        VertexId repr = res.repr_vertex_map.at(w);
        if (!first_interior.valid()) first_interior = repr;
        host.live.push_back(repr);
    }
    return first_interior;
}

VertexId pick_vertex(Host& host, Rng& rng, bool prefer_small) {
    const Multigraph& repr = host.d.represented();
    for (int attempt = 0; attempt < 64; ++attempt) {
        VertexId u = host.live[rng() % host.live.size()];
        if (!repr.is_vertex(u)) continue;
        auto nb = distinct_neighbors(repr, u);
        if (nb.size() < 2) continue;
        if (prefer_small && nb.size() > 3 && attempt < 48) continue;
        return u;
    }
    for (VertexId u : host.live)
        if (repr.is_vertex(u) && distinct_neighbors(repr, u).size() >= 2) return u;
    fail(Errc::BadInput, "bench: no expandable vertex");
}

Host grow_host(std::size_t target, Rng& rng) {
    Host host;
    Multigraph seed;
    VertexId a = seed.add_vertex(), b = seed.add_vertex(), c = seed.add_vertex();
    seed.add_edge(a, b);
    seed.add_edge(b, c);
    seed.add_edge(c, a);
    host.d = build_spqr(seed);
    host.live = {a, b, c};
    while (host.d.represented().vertex_count() < target) {
        VertexId u = pick_vertex(host, rng, true);
        auto nb = distinct_neighbors(host.d.represented(), u);
        bool ring = (rng() % 100) < 15 || nb.size() != 2;
        PartSpec spec = make_part(rng, nb.size(), ring);
        apply_expansion(host, u, spec, rng);
    }
    return host;
}

} // namespace

BenchReport bench_locality(const BenchOptions& opt) {
    BenchReport report;
    for (std::size_t size : opt.sizes) {
        Rng rng(opt.seed + size);
        Host host = grow_host(size, rng);
        BenchRow row;
        row.size = size;
        row.reached = host.d.represented().vertex_count();
        // keep vector growth out of the timed sections
        std::size_t slack = 400 * static_cast<std::size_t>(opt.trials) + 4096;
        host.d.reserve_slack(slack, 2 * slack);

        double touched_total = 0, micros_total = 0;
        for (int trial = 0; trial < opt.trials; ++trial) {
            // plant a vertex of the wanted degree, then time its expansion
            VertexId u0 = pick_vertex(host, rng, true);
            auto nb0 = distinct_neighbors(host.d.represented(), u0);
            PartSpec hub_spec = make_hub_part(nb0.size(), opt.degree);
            VertexId hub = apply_expansion(host, u0, hub_spec, rng);

            auto nb = distinct_neighbors(host.d.represented(), hub);
            PartSpec spec = make_part(rng, nb.size(), true);
            host.d.reset_work_counter();
            auto t0 = Clock::now();
            apply_expansion(host, hub, spec, rng);
            auto t1 = Clock::now();
            touched_total += static_cast<double>(host.d.work_counter());
            micros_total += std::chrono::duration<double, std::micro>(t1 - t0).count();
        }
        row.mean_touched = touched_total / opt.trials;
        row.mean_micros = micros_total / opt.trials;

        double baseline_total = 0;
        for (int trial = 0; trial < opt.baseline_trials; ++trial) {
            Multigraph copy = host.d.represented_copy();
            auto t0 = Clock::now();
            SkeletonDecomposition fresh = build_spqr(copy);
            auto t1 = Clock::now();
            baseline_total += std::chrono::duration<double, std::micro>(t1 - t0).count();
        }
        row.baseline_micros = baseline_total / opt.baseline_trials;
        report.rows.push_back(row);
    }
    return report;
}

std::string BenchReport::render(bool tsv) const {
    std::ostringstream os;
    if (tsv) {
        os << "size\treached\tmean_touched\tmean_micros\tbaseline_micros\n";
        for (const auto& r : rows)
            os << r.size << "\t" << r.reached << "\t" << r.mean_touched << "\t" << r.mean_micros << "\t"
               << r.baseline_micros << "\n";
        return os.str();
    }
    os << "size      reached   mean_touched  mean_micros  baseline_micros\n";
    for (const auto& r : rows) {
        char buf[160];
        snprintf(buf, sizeof(buf), "%-9zu %-9zu %-13.1f %-12.2f %-15.2f\n", r.size, r.reached,
                 r.mean_touched, r.mean_micros, r.baseline_micros);
        os << buf;
    }
    return os.str();
}

} // namespace spqr
