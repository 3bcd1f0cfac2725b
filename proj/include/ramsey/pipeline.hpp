/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/embedder.hpp>
#include <ramsey/graph.hpp>
#include <ramsey/injectivize.hpp>
#include <ramsey/io.hpp>
#include <ramsey/lookahead.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ramsey
{
    enum class EmbedMode { degenerate, maxdegree };

    auto to_string(EmbedMode mode) -> std::string;
    auto parse_embed_mode(const std::string & text) -> EmbedMode;

    struct EmbedOptions
    {
        ConstantsPack cp;
        EmbedMode mode = EmbedMode::degenerate;
        ChoicePolicy policy = ChoicePolicy::random;
        std::uint64_t seed = 1;
    };

    struct ComponentReport
    {
        VertexSet vertices;
        std::string branch;                     // "degenerate", "segment" or "k4"
        VertexSet segment;                      // for the segment branch
        bool success = false;
        std::vector<long long> occupancy;
        std::vector<double> schedule;
    };

    struct EmbedReport
    {
        bool success = false;
        std::vector<std::pair<Vertex, Vertex>> embedding;      // (pattern vertex, host vertex)
        int colour = -1;
        std::string failure_stage, failure_message;
        Trajectory trajectory;
        std::vector<ComponentReport> components;
        std::vector<std::pair<std::string, double>> timings;   // seconds per stage
        std::vector<long long> part_sizes;
        Rational K;
        std::vector<Rational> energy_trace;
    };

    // 2/mu rounded to the nearest even integer, at least 4.
    auto segment_length(const Rational & mu) -> int;

    // A shortest cycle in cycle order; empty for a forest.
    auto shortest_cycle(const Graph & g) -> VertexSet;

    // Lowest-index K4 in g avoiding the flagged vertices.
    auto find_k4(const Graph & g, const std::vector<char> & forbidden) -> std::optional<VertexSet>;

    // Regularity decomposition, part selection, distance partition, lookahead growth and injective
    // choice; in maxdegree mode each component is handled in turn, avoiding earlier images.
    auto embed_monochromatic(const Graph & f, const Graph & gamma, const EdgeColouring & colouring, const EmbedOptions & options) -> EmbedReport;

    auto report_to_json(const EmbedReport & report) -> nlohmann::json;
}
