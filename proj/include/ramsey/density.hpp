/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/graph.hpp>
#include <ramsey/rational.hpp>

#include <vector>

namespace ramsey
{
    inline constexpr int default_m2_limit = 16;
    inline constexpr int default_spencer_limit = 18;

    struct RootedPattern
    {
        Graph h;
        VertexSet roots;
    };

    struct DensityReport
    {
        Rational value;
        VertexSet witness;
    };

    struct SpencerVerdict
    {
        bool holds = true;
        Rational value;
        VertexSet witness;          // maximiser of the rooted density when the check fails
    };

    struct FindRootsResult
    {
        VertexSet roots;            // T', sorted
        std::vector<int> trajectory_sizes;
        std::vector<VertexSet> witnesses;
    };

    enum class SegmentKind { path, cycle };

    struct Duplication
    {
        Graph graph;
        SegmentKind kind = SegmentKind::path;
        std::vector<Vertex> copy_of;    // copy_of[i] is the segment vertex duplicated as h.size() + i
    };

    auto d2(const Graph & h) -> Rational;

    // Maximum of d2 over induced subgraphs, by exhaustive subset search.
    auto m2(const Graph & h, int limit = default_m2_limit) -> DensityReport;

    // (e(X) + e(X, R)) / |X| for a nonempty X disjoint from R.
    auto rooted_density(const Graph & h, const VertexSet & roots, const VertexSet & x) -> Rational;

    auto spencer_density(const RootedPattern & rp, int limit = default_spencer_limit) -> DensityReport;
    auto is_D_mu_spencer(const RootedPattern & rp, int D, const Rational & mu, int limit = default_spencer_limit) -> SpencerVerdict;

    // Whether some nonempty X outside the roots has e(X) + e(X, R) > bound |X|; polynomial via a closure cut.
    auto rooted_density_exceeds(const Graph & h, const VertexSet & roots, const Rational & bound) -> bool;

    auto findroots(const OrderedGraph & og, const VertexSet & initial, const VertexSet & t, int D, const Rational & mu) -> FindRootsResult;

    // Throws unless q (listed in path or cycle order) induces a path or a cycle.
    auto classify_segment(const Graph & h, const VertexSet & q) -> SegmentKind;

    auto duplicate_along(const Graph & h, const VertexSet & q) -> Duplication;
}
