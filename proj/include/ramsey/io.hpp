/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/graph.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace ramsey
{
    // Colour of each edge of the graph, indexed like Graph::edges().
    struct EdgeColouring
    {
        int colours = 1;
        std::vector<Edge> edges;
        std::vector<int> colour;
    };

    // Edge-list text: "n m", then m lines "u v", then optionally "order: p0 ... p(n-1)".
    auto write_edge_list(std::ostream & out, const Graph & g) -> void;
    auto write_edge_list(std::ostream & out, const OrderedGraph & og) -> void;
    auto read_edge_list(std::istream & in) -> OrderedGraph;
    auto to_edge_list(const Graph & g) -> std::string;
    auto to_edge_list(const OrderedGraph & og) -> std::string;
    auto parse_edge_list(const std::string & text) -> OrderedGraph;
    auto load_graph(const std::string & path) -> OrderedGraph;
    auto save_graph(const std::string & path, const Graph & g) -> void;
    auto save_graph(const std::string & path, const OrderedGraph & og) -> void;

    // Colouring text: "m r", then m lines "u v c".
    auto to_colouring_text(const EdgeColouring & c) -> std::string;
    auto parse_colouring(const std::string & text) -> EdgeColouring;
    auto load_colouring(const std::string & path) -> EdgeColouring;
    auto save_colouring(const std::string & path, const EdgeColouring & c) -> void;

    // Colour classes as graphs on the host's vertex set.
    auto colour_classes(const Graph & host, const EdgeColouring & c) -> std::vector<Graph>;

    auto parse_vertex_list(const std::string & text) -> VertexSet;

    auto read_file(const std::string & path) -> std::string;
    auto write_file(const std::string & path, const std::string & contents) -> void;

    // Lowercase hex SHA-256.
    auto content_hash(const std::string & bytes) -> std::string;
}
