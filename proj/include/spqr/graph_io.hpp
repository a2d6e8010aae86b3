#ifndef SPQR_GRAPH_IO_HPP
#define SPQR_GRAPH_IO_HPP

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "spqr/multigraph.hpp"

namespace spqr {

/// A multigraph together with the caller-chosen non-negative integer labels
/// used by the text format and the CLI. Label order is preserved so that
/// serialization round-trips bit-exactly.
struct LabeledGraph {
    Multigraph graph;
    std::vector<std::pair<long, VertexId>> vertex_order;
    std::vector<std::pair<long, EdgeId>> edge_order;
    std::unordered_map<long, VertexId> vertex_by_label;
    std::unordered_map<long, EdgeId> edge_by_label;

    VertexId vertex(long label) const;
    EdgeId edge(long label) const;
    long label_of(VertexId v) const;
    long label_of(EdgeId e) const;

    void add_vertex(long label);
    void add_edge(long label, long u, long v);
};

/// Text format: `graph <n> <m>`, then n lines `v <id>`, then m lines
/// `e <id> <u-id> <v-id>`. Throws Error(BadInput) on malformed input.
LabeledGraph read_graph_text(std::istream& in);
LabeledGraph read_graph_file(const std::string& path);
void write_graph_text(std::ostream& out, const LabeledGraph& g);

} // namespace spqr

#endif
