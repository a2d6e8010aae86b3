#include "spqr/multigraph.hpp"

#include <atomic>

namespace spqr {

namespace {
std::uint32_t next_tag() {
    static std::atomic<std::uint32_t> counter{1};
    return counter.fetch_add(1);
}
} // namespace

Multigraph::Multigraph() : tag_(next_tag()) {}

void Multigraph::check_vertex(VertexId v) const {
    if (!is_vertex(v)) fail(Errc::InvalidHandle, "vertex handle does not resolve in this graph");
}

void Multigraph::check_edge(EdgeId e) const {
    if (!is_edge(e)) fail(Errc::InvalidHandle, "edge handle does not resolve in this graph");
}

VertexId Multigraph::add_vertex() {
    VertexId id{tag_, static_cast<std::uint32_t>(vertices_.size())};
    vertices_.push_back(VertexRec{{}, true});
    ++live_vertices_;
    return id;
}

EdgeId Multigraph::add_edge(VertexId u, VertexId v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) fail(Errc::SelfLoop, "self-loops are not allowed");
    EdgeId id{tag_, static_cast<std::uint32_t>(edges_.size())};
    EdgeRec rec;
    rec.u = u;
    rec.v = v;
    rec.pos_u = static_cast<std::uint32_t>(vertices_[u.index].incident.size());
    rec.pos_v = static_cast<std::uint32_t>(vertices_[v.index].incident.size());
    rec.alive = true;
    vertices_[u.index].incident.push_back(id);
    vertices_[v.index].incident.push_back(id);
    edges_.push_back(rec);
    ++live_edges_;
    return id;
}

void Multigraph::detach(EdgeId e, VertexId at) {
    EdgeRec& rec = edges_[e.index];
    std::uint32_t pos = (rec.u == at) ? rec.pos_u : rec.pos_v;
    auto& list = vertices_[at.index].incident;
    list[pos] = list.back();
    list.pop_back();
    if (pos < list.size()) {
        EdgeRec& mrec = edges_[list[pos].index];
        if (mrec.u == at) mrec.pos_u = pos;
        if (mrec.v == at) mrec.pos_v = pos;
    }
}

void Multigraph::delete_edge(EdgeId e) {
    check_edge(e);
    EdgeRec& rec = edges_[e.index];
    detach(e, rec.u);
    detach(e, rec.v);
    rec.alive = false;
    --live_edges_;
}

void Multigraph::delete_vertex(VertexId v) {
    check_vertex(v);
    auto& list = vertices_[v.index].incident;
    while (!list.empty()) delete_edge(list.back());
    vertices_[v.index].alive = false;
    --live_vertices_;
}

void Multigraph::relink_endpoint(EdgeId e, VertexId from, VertexId to) {
    check_edge(e);
    check_vertex(from);
    check_vertex(to);
    EdgeRec& rec = edges_[e.index];
    if (rec.u != from && rec.v != from) fail(Errc::InvalidHandle, "relink: edge not incident to `from`");
    VertexId other = (rec.u == from) ? rec.v : rec.u;
    if (other == to) fail(Errc::SelfLoop, "relink would create a self-loop");
    detach(e, from);
    if (rec.u == from) {
        rec.u = to;
        rec.pos_u = static_cast<std::uint32_t>(vertices_[to.index].incident.size());
    } else {
        rec.v = to;
        rec.pos_v = static_cast<std::uint32_t>(vertices_[to.index].incident.size());
    }
    vertices_[to.index].incident.push_back(e);
}

std::size_t Multigraph::degree(VertexId v) const {
    check_vertex(v);
    return vertices_[v.index].incident.size();
}

std::span<const EdgeId> Multigraph::incident(VertexId v) const {
    check_vertex(v);
    return vertices_[v.index].incident;
}

std::pair<VertexId, VertexId> Multigraph::endpoints(EdgeId e) const {
    check_edge(e);
    return {edges_[e.index].u, edges_[e.index].v};
}

VertexId Multigraph::opposite(EdgeId e, VertexId v) const {
    check_edge(e);
    const EdgeRec& rec = edges_[e.index];
    if (rec.u == v) return rec.v;
    if (rec.v == v) return rec.u;
    fail(Errc::InvalidHandle, "opposite: vertex is not an endpoint");
}

std::vector<VertexId> Multigraph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(live_vertices_);
    for (std::uint32_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].alive) out.push_back(VertexId{tag_, i});
    return out;
}

std::vector<EdgeId> Multigraph::edges() const {
    std::vector<EdgeId> out;
    out.reserve(live_edges_);
    for (std::uint32_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].alive) out.push_back(EdgeId{tag_, i});
    return out;
}

} // namespace spqr
