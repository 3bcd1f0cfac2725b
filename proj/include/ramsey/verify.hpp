/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/graph.hpp>
#include <ramsey/io.hpp>

#include <string>
#include <utility>
#include <vector>

namespace ramsey
{
    struct Verdict
    {
        bool ok = true;
        std::string message;
    };

    // Checks injectivity, edge preservation and monochromaticity straight from the colouring's edge
    // list, without the embedder's host structures.
    auto verify_embedding(int host_size, const EdgeColouring & colouring, const Graph & target,
            const std::vector<std::pair<Vertex, Vertex>> & embedding, int colour) -> Verdict;

    struct FileVerdict
    {
        int checked = 0, passed = 0;
        bool aggregate_ok = true;
        std::vector<std::string> problems;

        auto ok() const -> bool { return problems.empty(); }
    };

    // Regenerates every successful trial of a results file from its seeds and verifies the embedding.
    auto verify_result_file(const std::string & path) -> FileVerdict;
}
