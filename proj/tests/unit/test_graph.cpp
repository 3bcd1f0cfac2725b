/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/errors.hpp>
#include <ramsey/graph.hpp>
#include <ramsey/io.hpp>
#include <ramsey/partial_map.hpp>

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace ramsey;

TEST_SUITE("graph")
{
    TEST_CASE("edges are deduplicated and symmetric")
    {
        auto g = Graph::from_edges(4, { { 0, 1 }, { 1, 0 }, { 2, 3 } });
        CHECK(g.edge_count() == 2);
        CHECK(g.adjacent(1, 0));
        CHECK(! g.adjacent(0, 2));
        CHECK(g.max_degree() == 1);
    }

    TEST_CASE("loops and out of range vertices are rejected")
    {
        CHECK_THROWS_AS(Graph::from_edges(3, { { 1, 1 } }), Error);
        CHECK_THROWS_AS(Graph::from_edges(3, { { 0, 3 } }), Error);
    }

    TEST_CASE("degeneracy of small families")
    {
        CHECK(degeneracy_order(complete_graph(4)).second == 3);
        CHECK(degeneracy_order(path_graph(5)).second == 1);
        CHECK(degeneracy_order(cycle_graph(5)).second == 2);
        auto [og, d] = degeneracy_order(complete_bipartite(3, 4));
        CHECK(d == 3);
        CHECK(og.is_degenerate(3));
        CHECK(og.max_left_degree() == 3);
    }

    TEST_CASE("left distance follows descending paths")
    {
        auto og = OrderedGraph::natural(path_graph(5));
        CHECK(left_distance(og, 4, 2) == Distance::finite(2));
        CHECK(left_distance(og, 3, 3) == Distance::finite(0));
        CHECK(left_distance(og, 4, 0) == Distance::finite(4));
        CHECK_THROWS_AS(left_distance(og, 2, 4), Error);

        // star whose centre comes last
        auto star = Graph::from_edges(4, { { 3, 0 }, { 3, 1 }, { 3, 2 } });
        CHECK(left_distance(OrderedGraph::natural(star), 3, 1) == Distance::finite(1));
    }

    TEST_CASE("power graph of a path")
    {
        auto p2 = power_graph(path_graph(4), 2);
        auto expected = Graph::from_edges(4, { { 0, 1 }, { 0, 2 }, { 1, 2 }, { 1, 3 }, { 2, 3 } });
        CHECK(p2 == expected);
        CHECK(power_graph(cycle_graph(6), 1) == cycle_graph(6));
    }

    TEST_CASE("distances in a disconnected graph")
    {
        auto g = Graph::from_edges(3, { { 0, 1 } });
        CHECK(graph_distance(g, 0, 1) == Distance::finite(1));
        CHECK(! graph_distance(g, 0, 2).is_finite());
        CHECK(Distance::finite(7) < Distance::infinite());
    }

    TEST_CASE("induced subgraphs carry label maps")
    {
        auto sub = induced(complete_graph(4), { 1, 3 });
        CHECK(sub.graph.size() == 2);
        CHECK(sub.graph.edge_count() == 1);
        CHECK(sub.to_parent == std::vector<Vertex>{ 1, 3 });
        CHECK(sub.from_parent[3] == 1);
        CHECK(sub.from_parent[0] == -1);
    }

    TEST_CASE("edge counts and joint neighbourhoods")
    {
        auto k33 = complete_bipartite(3, 3);
        CHECK(edges_between(k33, { 0, 1, 2 }, { 3, 4, 5 }) == 9);
        CHECK(edges_within(k33, { 0, 1, 2 }) == 0);

        auto c5 = cycle_graph(5);
        CHECK(joint_neighbourhood(c5, { 0, 2 }) == VertexSet{ 1 });
        CHECK(joint_neighbourhood(c5, { 0 }, { 2, 3, 4 }) == VertexSet{ 4 });
    }

    TEST_CASE("relabelling by order composes back")
    {
        auto og = OrderedGraph(cycle_graph(5), { 4, 2, 0, 1, 3 });
        auto re = relabel_by_order(og);
        for (Vertex v = 0 ; v < 5 ; ++v) {
            CHECK(re.to_original[re.from_original[v]] == v);
            CHECK(re.graph.rank(v) == v);
        }
        for (auto [a, b] : re.graph.graph().edges())
            CHECK(og.graph().adjacent(re.to_original[a], re.to_original[b]));
    }

    TEST_CASE("components and disjoint unions")
    {
        auto g = disjoint_union({ complete_graph(4), path_graph(3) });
        CHECK(g.size() == 7);
        CHECK(connected_components(g).size() == 2);
        CHECK(! is_connected(g));
        CHECK(is_connected(cycle_graph(4)));
    }

    TEST_CASE("edge list text round trips with its order")
    {
        auto og = OrderedGraph(cycle_graph(4), { 2, 0, 3, 1 });
        auto back = parse_edge_list(to_edge_list(og));
        CHECK(back.graph() == og.graph());
        CHECK(back.order() == og.order());
        CHECK_THROWS_AS(parse_edge_list("3 1\n0 5\n"), Error);
    }

    TEST_CASE("partial maps track injectivity and homomorphisms")
    {
        PartialMap m(3);
        m.assign(0, 5);
        m.assign(1, 6);
        CHECK(m.is_injective());
        CHECK(m.mapped_count() == 2);
        m.assign(2, 5);
        CHECK(! m.is_injective());
        m.unassign(2);
        auto host = Graph::from_edges(7, { { 5, 6 } });
        CHECK(m.is_homomorphism(path_graph(3), host));
        m.assign(2, 0);
        CHECK(! m.is_homomorphism(path_graph(3), host));
    }

    TEST_CASE("content hashes are stable sha-256")
    {
        CHECK(content_hash("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
