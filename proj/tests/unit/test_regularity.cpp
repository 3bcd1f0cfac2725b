/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/ensemble.hpp>
#include <ramsey/errors.hpp>
#include <ramsey/experiments.hpp>
#include <ramsey/io.hpp>
#include <ramsey/regularity.hpp>

#include <doctest.h>

#include <numeric>

using namespace ramsey;

namespace
{
    auto range(int from, int to) -> VertexSet
    {
        VertexSet v(to - from);
        std::iota(v.begin(), v.end(), from);
        return v;
    }

    // u_i ~ v_j iff i <= j
    auto half_graph(int k) -> Graph
    {
        std::vector<Edge> edges;
        for (int i = 0 ; i < k ; ++i)
            for (int j = i ; j < k ; ++j)
                edges.emplace_back(i, k + j);
        return Graph::from_edges(2 * k, edges);
    }

    // the fine partition may equal the coarse one, so keep every good fine part
    auto practical() -> SelectOptions
    {
        SelectOptions o;
        o.trim_fraction = 1;
        o.keep_half = false;
        return o;
    }
}

TEST_SUITE("regularity")
{
    TEST_CASE("equitable partitions and refinements")
    {
        auto p = Partition::equitable(10, 3);
        CHECK(p.size() == 3);
        CHECK(p.is_equitable());
        CHECK(p.covered() == 10);
        auto fine = Partition::equitable(12, 6), coarse = Partition::equitable(12, 3);
        CHECK(is_refinement(coarse, fine));
        CHECK(equitable_refinement_factor(coarse, fine) == 2);
        CHECK(! is_refinement(fine, coarse));
        CHECK(! Partition({ { 0, 1, 2 }, { 3 } }).is_equitable());
    }

    TEST_CASE("p-density")
    {
        auto k = complete_bipartite(4, 5);
        CHECK(p_density(k, range(0, 4), range(4, 9), Rational(1)) == 1);
        CHECK(p_density(k, range(0, 4), range(4, 9), Rational(1, 2)) == 2);
        CHECK(p_density(Graph(9), range(0, 4), range(4, 9), Rational(1)) == 0);
    }

    TEST_CASE("complete and empty pairs are regular")
    {
        AssessOptions o;
        o.mode = CheckMode::exhaustive;
        auto full = assess_pair(complete_bipartite(6, 6), range(0, 6), range(6, 12), Rational(1, 4), Rational(1), o);
        CHECK(full.regular);
        CHECK(full.density == 1);
        auto empty = assess_pair(Graph(12), range(0, 6), range(6, 12), Rational(1, 4), Rational(1), o);
        CHECK(empty.regular);
        CHECK(empty.density == 0);
    }

    TEST_CASE("the half graph is irregular with a genuine witness")
    {
        auto g = half_graph(12);
        AssessOptions o;
        o.mode = CheckMode::exhaustive;
        Rational eps(1, 4);
        auto result = assess_pair(g, range(0, 12), range(12, 24), eps, Rational(1), o);
        REQUIRE(! result.regular);
        REQUIRE(result.witness);
        auto & [u, v] = *result.witness;
        CHECK(Rational(static_cast<long long>(u.size())) >= eps * 12);
        CHECK(Rational(static_cast<long long>(v.size())) >= eps * 12);
        auto diff = p_density(g, u, v, Rational(1)) - result.density;
        CHECK((diff > eps || diff < -eps));
    }

    TEST_CASE("exhaustive assessment refuses large sides")
    {
        AssessOptions o;
        o.mode = CheckMode::exhaustive;
        o.exhaustive_limit = 8;
        CHECK_THROWS_AS(assess_pair(Graph(20), range(0, 10), range(10, 20), Rational(1, 4), Rational(1), o), Error);
    }

    TEST_CASE("energy")
    {
        CHECK(energy(Partition::equitable(20, 4), { Graph(20) }, Rational(1, 2)) == 0);
        // one colour, complete graph, p = 1: the sum of |U||V| over ordered distinct pairs over n^2
        auto e = energy(Partition::equitable(12, 3), { complete_graph(12) }, Rational(1));
        CHECK(e == Rational(6 * 16, 144));
        CHECK(e < 1);
    }

    TEST_CASE("defect identity")
    {
        Rational c(3, 7), d(2, 5);
        auto sym = defect_cauchy_schwarz({ Rational(1, 2), Rational(1, 2) }, d, { c, -c });
        CHECK(sym.lhs == d * d + c * c);
        CHECK(sym.lhs == sym.rhs);
        auto zero = defect_cauchy_schwarz({ Rational(1, 3), Rational(2, 3) }, d, { 0, 0 });
        CHECK(zero.lhs == d * d);
        CHECK_THROWS_AS(defect_cauchy_schwarz({ Rational(1, 2), Rational(1, 3) }, d, { 0, 0 }), Error);
        CHECK_THROWS_AS(defect_cauchy_schwarz({ Rational(1, 2), Rational(1, 2) }, d, { 1, 0 }), Error);
    }

    TEST_CASE("a complete single colour is regular at once")
    {
        auto result = srl_refine({ complete_graph(40) }, Rational(1, 4), Partition::equitable(40, 2), Rational(1));
        CHECK(result.converged);
        CHECK(result.fine.size() == 2);
    }

    TEST_CASE("strengthened regularity on uniform colours stops after one pass")
    {
        auto decomp = strengthened_srl({ complete_graph(60) }, Rational(1, 2), [] (int) { return Rational(1, 4); }, 3, Rational(1));
        CHECK(decomp.rl4_holds);
        CHECK(decomp.iterations == 1);
        CHECK(decomp.energy_trace.size() == 1);
    }

    TEST_CASE("random two-colouring terminates")
    {
        auto host = sample_gnp({ 600, 0.15, 4 });
        auto graphs = colour_classes(host, colour_edges(host, ColouringStrategy::random, 2, 4));
        auto decomp = strengthened_srl(graphs, Rational(2, 3), [] (int) { return Rational(1, 3); }, 3, Rational(15, 100));
        CHECK(decomp.rl4_holds);
        CHECK(decomp.fine.is_equitable());
        CHECK(is_refinement(decomp.coarse, decomp.fine));
    }

    TEST_CASE("selection with one colour takes any coarse parts")
    {
        auto host = complete_graph(60);
        std::vector<Graph> graphs{ host };
        auto decomp = strengthened_srl(graphs, Rational(1, 2), [] (int) { return Rational(1, 4); }, 4, Rational(1));
        auto sel = select_colour_and_parts(decomp, graphs, 1, 3, {}, Rational(1, 4), Rational(1), practical());
        CHECK(sel.colour == 0);
        CHECK(sel.parts.size() == 3);
    }

    TEST_CASE("selection prefers the colour that is dense everywhere")
    {
        // colour 1 holds all but a sparse sprinkle of edges
        auto host = complete_graph(80);
        EdgeColouring c;
        c.colours = 2;
        c.edges = host.edges();
        for (std::size_t i = 0 ; i < c.edges.size() ; ++i)
            c.colour.push_back(i % 10 == 0 ? 0 : 1);
        auto graphs = colour_classes(host, c);
        auto decomp = strengthened_srl(graphs, Rational(1, 2), [] (int) { return Rational(1, 4); }, 4, Rational(1));
        auto sel = select_colour_and_parts(decomp, graphs, 2, 3, {}, Rational(1, 4), Rational(1), practical());
        CHECK(sel.colour == 1);
    }

    TEST_CASE("partite counts of simple patterns")
    {
        auto k = complete_bipartite(4, 5);
        CHECK(count_partite_embeddings(k, Graph(1), { range(0, 4) }) == 4);
        CHECK(count_partite_embeddings(k, complete_graph(2), { range(0, 4), range(4, 9) }) == 20);
        CHECK(predicted_partite_count(k, complete_graph(2), { range(0, 4), range(4, 9) }, Rational(1)) == doctest::Approx(20.0));
    }

    TEST_CASE("poor and noncompletion counts on complete hosts")
    {
        auto host = complete_graph(12);
        std::vector<VertexSet> parts{ range(0, 4), range(4, 8), range(8, 12) };
        CHECK(count_poor_embeddings(host, complete_graph(3), parts, Rational(1), Rational(1)) == 0);
        CHECK(count_noncompletion_embeddings(host, complete_graph(3), { 2 }, parts) == 0);

        // no edges into the last part: every partial embedding fails to complete
        std::vector<Edge> edges;
        for (int a = 0 ; a < 8 ; ++a)
            for (int b = a + 1 ; b < 8 ; ++b)
                edges.emplace_back(a, b);
        auto cut = Graph::from_edges(12, edges);
        CHECK(count_noncompletion_embeddings(cut, complete_graph(3), { 2 }, parts) == 16);
    }
}
