#include <sstream>

#include "doctest.h"
#include "spqr/graph_io.hpp"
#include "spqr/multigraph.hpp"

using namespace spqr;

TEST_CASE("vertex handles are fresh and never reused") {
    Multigraph g;
    CHECK(g.vertex_count() == 0);
    VertexId a = g.add_vertex();
    CHECK(g.vertex_count() == 1);
    VertexId b = g.add_vertex();
    CHECK(a != b);
    g.delete_vertex(a);
    VertexId c = g.add_vertex();
    CHECK(c != a);
    CHECK(!g.is_vertex(a));
    CHECK(g.is_vertex(c));
}

TEST_CASE("parallel edges are distinct, self-loops rejected") {
    Multigraph g;
    VertexId u = g.add_vertex(), v = g.add_vertex();
    EdgeId e1 = g.add_edge(u, v);
    EdgeId e2 = g.add_edge(u, v);
    CHECK(e1 != e2);
    CHECK(g.edge_count() == 2);
    CHECK(g.degree(u) == 2);
    CHECK_THROWS_AS(g.add_edge(u, u), Error);
}

TEST_CASE("triangle degrees satisfy the handshake") {
    Multigraph g;
    VertexId a = g.add_vertex(), b = g.add_vertex(), c = g.add_vertex();
    g.add_edge(a, b);
    g.add_edge(b, c);
    g.add_edge(c, a);
    CHECK(g.degree(a) == 2);
    CHECK(g.degree(b) == 2);
    CHECK(g.degree(c) == 2);
    std::size_t total = g.degree(a) + g.degree(b) + g.degree(c);
    CHECK(total == 2 * g.edge_count());
}

TEST_CASE("handles of distinct graphs are rejected") {
    Multigraph g1, g2;
    VertexId a = g1.add_vertex();
    g2.add_vertex();
    CHECK_THROWS_AS(g2.degree(a), Error);
    CHECK_THROWS_AS(g2.add_edge(a, a), Error);
}

TEST_CASE("relink moves one endpoint and keeps the edge id") {
    Multigraph g;
    VertexId a = g.add_vertex(), b = g.add_vertex(), c = g.add_vertex();
    g.add_edge(b, c); // make degrees asymmetric
    EdgeId e = g.add_edge(a, b);
    g.relink_endpoint(e, b, c);
    auto [x, y] = g.endpoints(e);
    CHECK(((x == a && y == c) || (x == c && y == a)));
    CHECK(g.degree(b) == 1);
    CHECK(g.degree(c) == 2);
}

TEST_CASE("delete_vertex removes incident edges") {
    Multigraph g;
    VertexId a = g.add_vertex(), b = g.add_vertex(), c = g.add_vertex();
    g.add_edge(a, b);
    g.add_edge(a, c);
    EdgeId keep = g.add_edge(b, c);
    g.delete_vertex(a);
    CHECK(g.edge_count() == 1);
    CHECK(g.is_edge(keep));
}

TEST_CASE("graph text format round-trips bit-exactly") {
    const std::string text = "graph 4 5\nv 0\nv 1\nv 7\nv 3\ne 0 0 1\ne 1 1 7\ne 2 7 3\ne 3 3 0\ne 4 0 7\n";
    std::istringstream in(text);
    LabeledGraph g = read_graph_text(in);
    CHECK(g.graph.vertex_count() == 4);
    CHECK(g.graph.edge_count() == 5);
    std::ostringstream out;
    write_graph_text(out, g);
    CHECK(out.str() == text);
}

TEST_CASE("malformed graph files are rejected") {
    std::istringstream bad1("graph 1 1\nv 0\ne 0 0 0\n");
    CHECK_THROWS_AS(read_graph_text(bad1), Error);
    std::istringstream bad2("nope\n");
    CHECK_THROWS_AS(read_graph_text(bad2), Error);
    std::istringstream bad3("graph 2 1\nv 0\nv 0\ne 0 0 0\n");
    CHECK_THROWS_AS(read_graph_text(bad3), Error);
}
