/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/graph.hpp>

#include <cstdint>
#include <vector>

namespace ramsey
{
    // 2 Delta^ell
    auto hsz_class_count(int max_degree, int ell) -> long long;

    // Equitable partition of V(f) into h classes whose members are pairwise more than ell apart.
    // Greedy colouring of the ell-th power followed by chain moves; restarts use shuffled orders.
    auto hajnal_szemeredi_partition(const Graph & f, int ell, int h, std::uint64_t seed = 1, int restarts = 32) -> std::vector<VertexSet>;

    // h = 2 Delta^ell, with Delta >= 2 bounding the maximum degree of f
    auto hajnal_szemeredi_partition_for_degree(const Graph & f, int max_degree, int ell) -> std::vector<VertexSet>;

    // Checks coverage, equitability and pairwise distances by breadth-first search from every vertex.
    auto verify_distance_partition(const Graph & f, const std::vector<VertexSet> & classes, int ell) -> bool;
}
