/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/experiments.hpp>

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ramsey
{
    struct TrialRecord
    {
        int index = 0;
        std::uint64_t seed = 0;
        bool success = false;
        int colour = -1;
        std::string failure_stage, failure_message;
        std::vector<std::pair<Vertex, Vertex>> embedding;
        std::string embedding_hash, host_hash, target_hash, colouring_hash;
        std::vector<std::pair<std::string, double>> timings;   // kept out of the results file
    };

    struct Aggregate
    {
        int trials = 0, successes = 0;
        double rate = 0.0, ci_low = 0.0, ci_high = 1.0;
        std::map<std::string, int> failures_by_stage;
    };

    struct CampaignResult
    {
        ExperimentConfig config;
        std::vector<TrialRecord> records;
        Aggregate aggregate;
    };

    // Exact two-sided binomial interval.
    auto clopper_pearson(int successes, int trials, double alpha = 0.05) -> std::pair<double, double>;

    auto aggregate(const std::vector<TrialRecord> & records) -> Aggregate;
    auto aggregate_to_json(const Aggregate & a) -> nlohmann::json;

    auto record_to_json(const TrialRecord & r) -> nlohmann::json;
    auto record_from_json(const nlohmann::json & j) -> TrialRecord;

    auto run_trial(const ExperimentConfig & config, int index) -> TrialRecord;

    // RAMSEY_THREADS if set, else the hardware concurrency.
    auto campaign_threads() -> int;

    // Appends one JSON line per trial to config.output in index order after a header line; an existing
    // file with the same header is resumed from its first missing trial. Writes <output>.summary.json
    // and per-trial stage timings to <output>.timings.jsonl.
    auto run_campaign(const ExperimentConfig & config, int threads = 0) -> CampaignResult;

    auto load_campaign(const std::string & path) -> CampaignResult;

    enum class SweepParameter { p, n, r, mu };

    auto parse_sweep_parameter(const std::string & text) -> SweepParameter;
    auto to_string(SweepParameter s) -> std::string;

    struct SweepCell
    {
        std::string value;
        std::string output;
        Aggregate aggregate;
    };

    auto run_sweep(const ExperimentConfig & base, SweepParameter parameter, const std::vector<std::string> & grid, int threads = 0)
        -> std::vector<SweepCell>;

    auto sweep_to_csv(SweepParameter parameter, const std::vector<SweepCell> & cells) -> std::string;
    auto sweep_to_json(SweepParameter parameter, const std::vector<SweepCell> & cells) -> nlohmann::json;
}
