/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/campaign.hpp>
#include <ramsey/errors.hpp>
#include <ramsey/verify.hpp>

#include <cmath>
#include <filesystem>
#include <unordered_set>

using namespace ramsey;

auto ramsey::verify_embedding(int host_size, const EdgeColouring & colouring, const Graph & target,
        const std::vector<std::pair<Vertex, Vertex>> & embedding, int colour) -> Verdict
{
    auto fail = [] (std::string message) { return Verdict{ false, std::move(message) }; };

    int n = target.size();
    if (static_cast<int>(embedding.size()) != n)
        return fail("embedding covers " + std::to_string(embedding.size()) + " of " + std::to_string(n) + " vertices");
    if (colour < 0 || colour >= colouring.colours)
        return fail("colour " + std::to_string(colour) + " out of range");

    std::vector<long long> image(n, -1);
    std::unordered_set<long long> used;
    for (auto [x, v] : embedding) {
        if (x < 0 || x >= n || image[x] != -1)
            return fail("pattern vertex " + std::to_string(x) + " missing or repeated");
        if (v < 0 || v >= host_size)
            return fail("host vertex " + std::to_string(v) + " out of range");
        if (! used.insert(v).second)
            return fail("host vertex " + std::to_string(v) + " used twice");
        image[x] = v;
    }

    std::unordered_set<long long> coloured;
    for (std::size_t i = 0 ; i < colouring.edges.size() ; ++i)
        if (colouring.colour[i] == colour) {
            long long a = colouring.edges[i].first, b = colouring.edges[i].second;
            coloured.insert(std::min(a, b) * host_size + std::max(a, b));
        }

    for (auto [x, y] : target.edges()) {
        long long a = image[x], b = image[y];
        if (! coloured.count(std::min(a, b) * host_size + std::max(a, b)))
            return fail("edge " + std::to_string(x) + "-" + std::to_string(y) + " is not a colour " + std::to_string(colour) + " edge");
    }
    return Verdict{};
}

auto ramsey::verify_result_file(const std::string & path) -> FileVerdict
{
    FileVerdict verdict;
    auto campaign = load_campaign(path);
    const auto & config = campaign.config;

    for (auto & r : campaign.records) {
        auto where = "trial " + std::to_string(r.index) + ": ";
        if (r.seed != trial_seed(config, r.index)) {
            verdict.problems.push_back(where + "seed does not derive from the master seed");
            continue;
        }
        if (! r.success)
            continue;
        ++verdict.checked;
        auto instance = make_instance(config, r.index);
        if (content_hash(to_edge_list(instance.host)) != r.host_hash
                || content_hash(to_edge_list(instance.target)) != r.target_hash
                || content_hash(to_colouring_text(instance.colouring)) != r.colouring_hash) {
            verdict.problems.push_back(where + "regenerated instance does not match the recorded hashes");
            continue;
        }
        if (content_hash(nlohmann::json(r.embedding).dump()) != r.embedding_hash) {
            verdict.problems.push_back(where + "embedding hash mismatch");
            continue;
        }
        auto v = verify_embedding(instance.host.size(), instance.colouring, instance.target.graph(), r.embedding, r.colour);
        if (! v.ok)
            verdict.problems.push_back(where + v.message);
        else
            ++verdict.passed;
    }

    auto summary_path = path + ".summary.json";
    if (std::filesystem::exists(summary_path)) {
        auto stored = nlohmann::json::parse(read_file(summary_path)).at("aggregate");
        if (stored != aggregate_to_json(campaign.aggregate)) {
            verdict.aggregate_ok = false;
            verdict.problems.push_back("summary does not match the records");
        }
    }
    if (static_cast<int>(campaign.records.size()) != config.trials)
        verdict.problems.push_back("file holds " + std::to_string(campaign.records.size()) + " of " + std::to_string(config.trials) + " trials");
    return verdict;
}
