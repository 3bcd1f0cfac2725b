/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ramsey
{
    using Vertex = int;
    using Edge = std::pair<Vertex, Vertex>;
    using VertexSet = std::vector<Vertex>;

    class Graph
    {
        private:
            std::vector<std::vector<Vertex>> _adj;
            long long _edge_count = 0;

        public:
            Graph() = default;
            explicit Graph(int n);

            // Duplicate edges are merged; self-loops and out-of-range endpoints throw.
            static auto from_edges(int n, const std::vector<Edge> & edges) -> Graph;

            auto size() const -> int { return static_cast<int>(_adj.size()); }
            auto edge_count() const -> long long { return _edge_count; }
            auto neighbours(Vertex v) const -> const std::vector<Vertex> & { return _adj[v]; }
            auto degree(Vertex v) const -> int { return static_cast<int>(_adj[v].size()); }
            auto adjacent(Vertex u, Vertex v) const -> bool;
            auto edges() const -> std::vector<Edge>;
            auto max_degree() const -> int;

            auto operator== (const Graph &) const -> bool = default;
    };

    class Distance
    {
        private:
            int _hops = -1;

            explicit constexpr Distance(int hops) : _hops(hops) { }

        public:
            constexpr Distance() = default;

            static constexpr auto finite(int hops) -> Distance { return Distance{ hops }; }
            static constexpr auto infinite() -> Distance { return Distance{}; }

            constexpr auto is_finite() const -> bool { return _hops >= 0; }
            auto value() const -> int;

            constexpr auto operator== (const Distance &) const -> bool = default;
            auto operator<=> (const Distance & other) const -> std::strong_ordering;
    };

    class OrderedGraph
    {
        private:
            Graph _graph;
            std::vector<Vertex> _order;
            std::vector<int> _rank;

        public:
            OrderedGraph() = default;
            OrderedGraph(Graph graph, std::vector<Vertex> order);

            static auto natural(Graph graph) -> OrderedGraph;

            auto graph() const -> const Graph & { return _graph; }
            auto order() const -> const std::vector<Vertex> & { return _order; }
            auto rank(Vertex v) const -> int { return _rank[v]; }
            auto size() const -> int { return _graph.size(); }

            auto left_neighbours(Vertex v) const -> VertexSet;
            auto left_degree(Vertex v) const -> int;
            auto max_left_degree() const -> int;
            auto is_degenerate(int d) const -> bool;
    };

    struct InducedSubgraph
    {
        Graph graph;
        std::vector<Vertex> to_parent;
        std::vector<Vertex> from_parent;    // -1 for vertices outside the subset
    };

    struct RelabelledOrder
    {
        OrderedGraph graph;                 // order is 0, 1, ..., n-1
        std::vector<Vertex> to_original;
        std::vector<Vertex> from_original;
    };

    auto degeneracy_order(const Graph & g) -> std::pair<OrderedGraph, int>;

    auto left_distance(const OrderedGraph & og, Vertex y, Vertex x) -> Distance;

    // Left distances from y to every vertex; infinite for vertices not reachable by descending paths.
    auto left_distances_from(const OrderedGraph & og, Vertex y) -> std::vector<Distance>;

    auto graph_distance(const Graph & g, Vertex x, Vertex y) -> Distance;
    auto distances_from(const Graph & g, Vertex x) -> std::vector<Distance>;
    auto power_graph(const Graph & g, int ell) -> Graph;

    auto induced(const Graph & g, const VertexSet & s) -> InducedSubgraph;
    auto induced_ordered(const OrderedGraph & og, const VertexSet & s) -> std::pair<OrderedGraph, InducedSubgraph>;
    auto relabel_by_order(const OrderedGraph & og) -> RelabelledOrder;

    // e(X): edges with both ends in X.
    auto edges_within(const Graph & g, const VertexSet & x) -> long long;

    // e(X, Y): ordered pairs (x, y) in X times Y with xy an edge; equals the edge count for disjoint X, Y.
    auto edges_between(const Graph & g, const VertexSet & x, const VertexSet & y) -> long long;

    // N(S; X): members of X adjacent to every member of S.
    auto joint_neighbourhood(const Graph & g, const VertexSet & s, const VertexSet & x) -> VertexSet;
    auto joint_neighbourhood(const Graph & g, const VertexSet & s) -> VertexSet;

    auto connected_components(const Graph & g) -> std::vector<VertexSet>;
    auto is_connected(const Graph & g) -> bool;

    auto complete_graph(int n) -> Graph;
    auto path_graph(int n) -> Graph;
    auto cycle_graph(int n) -> Graph;
    auto complete_bipartite(int a, int b) -> Graph;
    auto disjoint_union(const std::vector<Graph> & parts) -> Graph;
}
