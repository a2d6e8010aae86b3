#include "spqr/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace spqr {

VertexId LabeledGraph::vertex(long label) const {
    auto it = vertex_by_label.find(label);
    if (it == vertex_by_label.end()) fail(Errc::UnknownVertex, "unknown vertex label " + std::to_string(label));
    return it->second;
}

EdgeId LabeledGraph::edge(long label) const {
    auto it = edge_by_label.find(label);
    if (it == edge_by_label.end()) fail(Errc::BadInput, "unknown edge label " + std::to_string(label));
    return it->second;
}

long LabeledGraph::label_of(VertexId v) const {
    for (const auto& [label, id] : vertex_order)
        if (id == v) return label;
    fail(Errc::InvalidHandle, "vertex has no label");
}

long LabeledGraph::label_of(EdgeId e) const {
    for (const auto& [label, id] : edge_order)
        if (id == e) return label;
    fail(Errc::InvalidHandle, "edge has no label");
}

void LabeledGraph::add_vertex(long label) {
    if (label < 0) fail(Errc::BadInput, "vertex labels must be non-negative");
    if (vertex_by_label.count(label)) fail(Errc::BadInput, "duplicate vertex label " + std::to_string(label));
    VertexId id = graph.add_vertex();
    vertex_order.emplace_back(label, id);
    vertex_by_label.emplace(label, id);
}

void LabeledGraph::add_edge(long label, long u, long v) {
    if (label < 0) fail(Errc::BadInput, "edge labels must be non-negative");
    if (edge_by_label.count(label)) fail(Errc::BadInput, "duplicate edge label " + std::to_string(label));
    EdgeId id = graph.add_edge(vertex(u), vertex(v));
    edge_order.emplace_back(label, id);
    edge_by_label.emplace(label, id);
}

LabeledGraph read_graph_text(std::istream& in) {
    LabeledGraph out;
    std::string word;
    if (!(in >> word) || word != "graph") fail(Errc::BadInput, "expected `graph <n> <m>` header");
    long n = 0, m = 0;
    if (!(in >> n >> m) || n < 0 || m < 0) fail(Errc::BadInput, "bad graph header counts");
    for (long i = 0; i < n; ++i) {
        long label;
        if (!(in >> word >> label) || word != "v") fail(Errc::BadInput, "expected `v <id>` line");
        out.add_vertex(label);
    }
    for (long i = 0; i < m; ++i) {
        long label, u, v;
        if (!(in >> word >> label >> u >> v) || word != "e") fail(Errc::BadInput, "expected `e <id> <u> <v>` line");
        if (u == v) fail(Errc::SelfLoop, "self-loop in graph file");
        out.add_edge(label, u, v);
    }
    return out;
}

LabeledGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::BadInput, "cannot open graph file: " + path);
    return read_graph_text(in);
}

void write_graph_text(std::ostream& out, const LabeledGraph& g) {
    out << "graph " << g.vertex_order.size() << " " << g.edge_order.size() << "\n";
    for (const auto& [label, id] : g.vertex_order) out << "v " << label << "\n";
    for (const auto& [label, id] : g.edge_order) {
        auto [u, v] = g.graph.endpoints(id);
        out << "e " << label << " " << g.label_of(u) << " " << g.label_of(v) << "\n";
    }
}

} // namespace spqr
