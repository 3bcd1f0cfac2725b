/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/campaign.hpp>
#include <ramsey/errors.hpp>
#include <ramsey/pipeline.hpp>

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

using namespace ramsey;

auto ramsey::clopper_pearson(int successes, int trials, double alpha) -> std::pair<double, double>
{
    if (trials <= 0)
        return { 0.0, 1.0 };
    double lo = successes == 0 ? 0.0 : boost::math::ibeta_inv(double(successes), double(trials - successes + 1), alpha / 2);
    double hi = successes == trials ? 1.0 : boost::math::ibeta_inv(double(successes + 1), double(trials - successes), 1 - alpha / 2);
    return { lo, hi };
}

auto ramsey::aggregate(const std::vector<TrialRecord> & records) -> Aggregate
{
    Aggregate a;
    a.trials = static_cast<int>(records.size());
    for (auto & r : records) {
        if (r.success)
            ++a.successes;
        else
            ++a.failures_by_stage[r.failure_stage];
    }
    a.rate = a.trials ? double(a.successes) / a.trials : 0.0;
    std::tie(a.ci_low, a.ci_high) = clopper_pearson(a.successes, a.trials);
    return a;
}

auto ramsey::aggregate_to_json(const Aggregate & a) -> nlohmann::json
{
    return nlohmann::json{ { "trials", a.trials }, { "successes", a.successes }, { "rate", a.rate },
        { "ci95", { a.ci_low, a.ci_high } }, { "failures_by_stage", a.failures_by_stage } };
}

auto ramsey::record_to_json(const TrialRecord & r) -> nlohmann::json
{
    return nlohmann::json{
        { "kind", "trial" },
        { "index", r.index },
        { "seed", r.seed },
        { "success", r.success },
        { "colour", r.colour },
        { "failure_stage", r.failure_stage },
        { "failure_message", r.failure_message },
        { "embedding", r.embedding },
        { "embedding_hash", r.embedding_hash },
        { "host_hash", r.host_hash },
        { "target_hash", r.target_hash },
        { "colouring_hash", r.colouring_hash }
    };
}

auto ramsey::record_from_json(const nlohmann::json & j) -> TrialRecord
{
    TrialRecord r;
    r.index = j.at("index").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.success = j.at("success").get<bool>();
    r.colour = j.at("colour").get<int>();
    r.failure_stage = j.at("failure_stage").get<std::string>();
    r.failure_message = j.at("failure_message").get<std::string>();
    r.embedding = j.at("embedding").get<std::vector<std::pair<Vertex, Vertex>>>();
    r.embedding_hash = j.at("embedding_hash").get<std::string>();
    r.host_hash = j.at("host_hash").get<std::string>();
    r.target_hash = j.at("target_hash").get<std::string>();
    r.colouring_hash = j.at("colouring_hash").get<std::string>();
    return r;
}

auto ramsey::run_trial(const ExperimentConfig & config, int index) -> TrialRecord
{
    TrialRecord record;
    record.index = index;
    record.seed = trial_seed(config, index);
    try {
        auto instance = make_instance(config, index);
        record.host_hash = content_hash(to_edge_list(instance.host));
        record.target_hash = content_hash(to_edge_list(instance.target));
        record.colouring_hash = content_hash(to_colouring_text(instance.colouring));

        EmbedOptions options;
        options.cp = config.cp;
        options.cp.audit = options.cp.audit || config.audit;
        options.mode = config.mode;
        options.policy = config.policy;
        options.seed = derive_seed(record.seed, 4);
        auto report = embed_monochromatic(instance.target.graph(), instance.host, instance.colouring, options);
        record.success = report.success;
        record.colour = report.colour;
        record.failure_stage = report.failure_stage;
        record.failure_message = report.failure_message;
        record.timings = report.timings;
        if (report.success) {
            record.embedding = report.embedding;
            record.embedding_hash = content_hash(nlohmann::json(report.embedding).dump());
        }
    }
    catch (const std::exception & e) {
        record.success = false;
        record.failure_stage = "exception";
        record.failure_message = e.what();
    }
    return record;
}

auto ramsey::campaign_threads() -> int
{
    if (auto env = std::getenv("RAMSEY_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1)
            return t;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace
{
    auto header_line(const ExperimentConfig & config) -> std::string
    {
        return nlohmann::json{ { "kind", "header" }, { "schema_version", schema_version }, { "config", config_to_json(config) } }.dump();
    }

    // Trials already on disk, in order; trims a torn final line.
    auto resume_records(const ExperimentConfig & config) -> std::vector<TrialRecord>
    {
        std::vector<TrialRecord> records;
        if (! std::filesystem::exists(config.output))
            return records;
        auto text = read_file(config.output);
        std::size_t pos = 0, good_end = 0;
        bool header_seen = false;
        while (true) {
            auto nl = text.find('\n', pos);
            if (nl == std::string::npos)
                break;
            auto line = text.substr(pos, nl - pos);
            if (! header_seen) {
                if (line != header_line(config))
                    throw Error(ErrorKind::io, config.output + " belongs to a different configuration");
                header_seen = true;
            }
            else {
                try {
                    auto r = record_from_json(nlohmann::json::parse(line));
                    if (r.index != static_cast<int>(records.size()) || r.index >= config.trials)
                        break;
                    records.push_back(r);
                }
                catch (const std::exception &) {
                    break;
                }
            }
            pos = nl + 1;
            good_end = pos;
        }
        if (good_end != text.size())
            std::filesystem::resize_file(config.output, good_end);
        return records;
    }
}

auto ramsey::run_campaign(const ExperimentConfig & config, int threads) -> CampaignResult
{
    if (threads <= 0)
        threads = campaign_threads();

    CampaignResult result;
    result.config = config;
    result.records = resume_records(config);
    int start = static_cast<int>(result.records.size());

    std::ofstream out(config.output, std::ios::app | std::ios::binary);
    if (! out)
        throw Error(ErrorKind::io, "cannot write " + config.output);
    if (std::filesystem::file_size(config.output) == 0)
        out << header_line(config) << '\n' << std::flush;
    std::ofstream timing_out(config.output + ".timings.jsonl", std::ios::app);

    int remaining = config.trials - start;
    std::vector<std::optional<TrialRecord>> slots(std::max(remaining, 0));
    std::atomic<int> next{ 0 };
    std::mutex lock;
    std::condition_variable done;

    auto worker = [&] {
        for (int i = next++ ; i < remaining ; i = next++) {
            auto record = run_trial(config, start + i);
            std::lock_guard guard(lock);
            slots[i] = std::move(record);
            done.notify_all();
        }
    };

    std::vector<std::thread> pool;
    for (int t = 0 ; t < std::min(threads, remaining) ; ++t)
        pool.emplace_back(worker);

    // single writer, in index order
    for (int i = 0 ; i < remaining ; ++i) {
        std::unique_lock guard(lock);
        done.wait(guard, [&] { return slots[i].has_value(); });
        TrialRecord record = std::move(*slots[i]);
        slots[i].reset();
        guard.unlock();

        out << record_to_json(record).dump() << '\n' << std::flush;
        nlohmann::json timings = nlohmann::json::object();
        for (auto & [stage, seconds] : record.timings)
            timings[stage] = timings.value(stage, 0.0) + seconds;
        timing_out << nlohmann::json{ { "index", record.index }, { "timings", timings } }.dump() << '\n' << std::flush;
        result.records.push_back(std::move(record));
    }
    for (auto & t : pool)
        t.join();

    result.aggregate = aggregate(result.records);
    write_file(config.output + ".summary.json", nlohmann::json{ { "schema_version", schema_version },
            { "aggregate", aggregate_to_json(result.aggregate) } }.dump(2) + "\n");
    return result;
}

auto ramsey::load_campaign(const std::string & path) -> CampaignResult
{
    CampaignResult result;
    std::istringstream in(read_file(path));
    std::string line;
    if (! std::getline(in, line))
        throw Error(ErrorKind::io, path + " is empty");
    try {
        auto header = nlohmann::json::parse(line);
        if (header.at("kind") != "header")
            throw Error(ErrorKind::io, path + " has no header line");
        result.config = config_from_json(header.at("config"));
        while (std::getline(in, line))
            if (! line.empty())
                result.records.push_back(record_from_json(nlohmann::json::parse(line)));
    }
    catch (const nlohmann::json::exception & e) {
        throw Error(ErrorKind::io, path + ": " + e.what());
    }
    result.aggregate = aggregate(result.records);
    return result;
}

auto ramsey::parse_sweep_parameter(const std::string & text) -> SweepParameter
{
    if (text == "p") return SweepParameter::p;
    if (text == "n") return SweepParameter::n;
    if (text == "r") return SweepParameter::r;
    if (text == "mu") return SweepParameter::mu;
    throw Error(ErrorKind::invalid_input, "unknown sweep parameter '" + text + "'");
}

auto ramsey::to_string(SweepParameter s) -> std::string
{
    switch (s) {
        case SweepParameter::p: return "p";
        case SweepParameter::n: return "n";
        case SweepParameter::r: return "r";
        case SweepParameter::mu: return "mu";
    }
    return "?";
}

auto ramsey::run_sweep(const ExperimentConfig & base, SweepParameter parameter, const std::vector<std::string> & grid, int threads)
    -> std::vector<SweepCell>
{
    if (grid.empty())
        throw Error(ErrorKind::invalid_input, "sweep grid is empty");
    std::vector<SweepCell> cells;
    for (std::size_t i = 0 ; i < grid.size() ; ++i) {
        ExperimentConfig c = base;
        const auto & value = grid[i];
        try {
            switch (parameter) {
                case SweepParameter::p: c.host.p = std::stod(value); break;
                case SweepParameter::n: c.target.n = std::stoi(value); break;
                case SweepParameter::r: c.r = c.cp.r = std::stoi(value); break;
                case SweepParameter::mu: c.cp.mu = parse_rational(value); break;
            }
        }
        catch (const std::logic_error &) {
            throw Error(ErrorKind::invalid_input, "bad grid value '" + value + "'");
        }
        auto stem = std::filesystem::path(base.output);
        c.output = (stem.parent_path() / (stem.stem().string() + "." + to_string(parameter) + "_" + std::to_string(i) + ".jsonl")).string();
        auto result = run_campaign(c, threads);
        cells.push_back(SweepCell{ value, c.output, result.aggregate });
    }
    return cells;
}

auto ramsey::sweep_to_csv(SweepParameter parameter, const std::vector<SweepCell> & cells) -> std::string
{
    std::vector<std::string> stages;
    for (auto & c : cells)
        for (auto & [stage, count] : c.aggregate.failures_by_stage)
            if (std::find(stages.begin(), stages.end(), stage) == stages.end())
                stages.push_back(stage);
    std::sort(stages.begin(), stages.end());

    std::ostringstream out;
    out << to_string(parameter) << ",trials,successes,rate,ci_low,ci_high";
    for (auto & s : stages)
        out << ",fail_" << s;
    out << "\n";
    for (auto & c : cells) {
        auto & a = c.aggregate;
        out << c.value << "," << a.trials << "," << a.successes << "," << a.rate << "," << a.ci_low << "," << a.ci_high;
        for (auto & s : stages) {
            auto it = a.failures_by_stage.find(s);
            out << "," << (it == a.failures_by_stage.end() ? 0 : it->second);
        }
        out << "\n";
    }
    return out.str();
}

auto ramsey::sweep_to_json(SweepParameter parameter, const std::vector<SweepCell> & cells) -> nlohmann::json
{
    nlohmann::json rows = nlohmann::json::array();
    for (auto & c : cells)
        rows.push_back({ { "value", c.value }, { "output", c.output }, { "aggregate", aggregate_to_json(c.aggregate) } });
    return nlohmann::json{ { "schema_version", schema_version }, { "parameter", to_string(parameter) }, { "cells", rows } };
}
