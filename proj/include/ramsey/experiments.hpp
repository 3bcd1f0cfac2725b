/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/ensemble.hpp>
#include <ramsey/graph.hpp>
#include <ramsey/io.hpp>
#include <ramsey/lookahead.hpp>
#include <ramsey/pipeline.hpp>

#include <json.hpp>

#include <cstdint>
#include <string>

namespace ramsey
{
    inline constexpr int schema_version = 1;

    enum class TargetKind
    {
        degenerate,         // n vertices, degeneracy at most D, maximum degree at most Delta
        planted             // K4, a connected Delta-regular component and a path
    };

    auto to_string(TargetKind kind) -> std::string;
    auto parse_target_kind(const std::string & text) -> TargetKind;

    struct TargetSpec
    {
        TargetKind kind = TargetKind::degenerate;
        int D = 2, Delta = 4, n = 50;
        int regular_size = 20, path_length = 4;        // planted only
    };

    // Sequential insertion: each new vertex picks between 1 and D earlier neighbours with spare degree.
    auto generate_target(int D, int Delta, int n, std::uint64_t seed) -> OrderedGraph;

    // Connected Delta-regular graph on n vertices by pairing with restarts.
    auto random_regular(int Delta, int n, std::uint64_t seed) -> Graph;

    auto generate_target(const TargetSpec & spec, std::uint64_t seed) -> OrderedGraph;

    enum class ColouringStrategy { random, majority_split, clique_hider };

    auto to_string(ColouringStrategy s) -> std::string;
    auto parse_colouring_strategy(const std::string & text) -> ColouringStrategy;

    auto colour_edges(const Graph & g, ColouringStrategy strategy, int r, std::uint64_t seed) -> EdgeColouring;

    auto count_monochromatic_k4(const Graph & g, const EdgeColouring & c) -> long long;

    struct ExperimentConfig
    {
        int schema = schema_version;
        EnsembleSpec host{ 4000, 0.15, 0 };
        TargetSpec target;
        ColouringStrategy strategy = ColouringStrategy::random;
        int r = 2;
        ConstantsPack cp;
        EmbedMode mode = EmbedMode::degenerate;
        ChoicePolicy policy = ChoicePolicy::random;
        int trials = 20;
        std::uint64_t master_seed = 1;
        bool audit = false;
        std::string output = "results.jsonl";
    };

    auto config_to_json(const ExperimentConfig & c) -> nlohmann::json;
    auto config_from_json(const nlohmann::json & j) -> ExperimentConfig;

    struct TrialInstance
    {
        std::uint64_t seed = 0;
        Graph host;
        OrderedGraph target;
        EdgeColouring colouring;
    };

    // Everything a trial uses is regenerated from (config, index).
    auto trial_seed(const ExperimentConfig & c, int index) -> std::uint64_t;
    auto make_instance(const ExperimentConfig & c, int index) -> TrialInstance;
}
