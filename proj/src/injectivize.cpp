/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/errors.hpp>
#include <ramsey/injectivize.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace ramsey;

auto ramsey::level_partition(long long N, Rng & rng) -> std::vector<VertexSet>
{
    if (N < 1)
        throw Error(ErrorKind::invalid_input, "host must be nonempty");
    int ell = std::max(2, static_cast<int>(std::ceil(std::log(double(N)))));
    VertexSet all(N);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);

    std::vector<VertexSet> levels;
    long long first = N / 2;
    levels.emplace_back(all.begin(), all.begin() + first);
    long long chunk = (N + (2LL * ell - 2) - 1) / (2LL * ell - 2);
    for (long long start = first ; start < N ; start += chunk)
        levels.emplace_back(all.begin() + start, all.begin() + std::min(N, start + chunk));
    for (auto & level : levels)
        std::sort(level.begin(), level.end());
    return levels;
}

auto ramsey::k_schedule(const std::vector<VertexSet> & levels, const CnParams & params, double k1) -> std::vector<double>
{
    std::vector<double> k{ k1 };
    double factor = 16.0 * to_double(params.d) * params.Delta * params.D / (to_double(params.rho) * std::pow(params.p, params.D));
    for (std::size_t j = 1 ; j < levels.size() ; ++j)
        k.push_back(factor / double(levels[j - 1].size()) * k.back());
    return k;
}

auto ramsey::cn_injectivize(long long N, const OrderedGraph & f, const WOracle & oracle, const CnParams & params,
        const std::function<void (Vertex, Vertex)> & on_commit, const std::vector<char> & skip) -> CnResult
{
    CnResult result;
    int n = f.size();
    auto rng = make_rng(params.seed, 0x636e);
    auto levels = level_partition(N, rng);
    std::vector<int> level_of(N, 0);
    for (std::size_t j = 0 ; j < levels.size() ; ++j) {
        result.level_sizes.push_back(static_cast<long long>(levels[j].size()));
        for (auto v : levels[j])
            level_of[v] = static_cast<int>(j);
    }
    double k1 = params.k1 >= 0 ? params.k1 : std::max(double(n), 1e-6 * std::pow(to_double(params.rho), 2) * double(N));
    result.schedule = k_schedule(levels, params, k1);
    result.occupancy.assign(levels.size(), 0);
    result.images.assign(n, -1);
    std::vector<char> used(N, 0);

    for (Vertex x = 0 ; x < n ; ++x) {
        if (! skip.empty() && skip[x])
            continue;
        auto step = oracle(result.images, x);
        if (! step.accept) {
            auto w = static_cast<long long>(step.superset.size());
            result.w_sizes.push_back(w);
            if (double(w) < to_double(params.rho) * std::pow(params.p, f.left_degree(x)) * double(N))
                ++result.p2_violations;
        }
        else
            result.w_sizes.push_back(static_cast<long long>(step.superset.size()));

        // candidates grouped by level, in choice order within each level
        std::vector<VertexSet> by_level(levels.size());
        for (auto v : step.superset) {
            if (v < 0 || v >= N)
                throw Error(ErrorKind::invalid_input, "oracle returned a vertex outside the host");
            if (! used[v])
                by_level[level_of[v]].push_back(v);
        }
        Vertex chosen = -1;
        for (std::size_t j = 0 ; j < levels.size() && chosen == -1 ; ++j) {
            auto & cands = by_level[j];
            if (params.policy == ChoicePolicy::lowest_index)
                std::sort(cands.begin(), cands.end());
            else
                std::shuffle(cands.begin(), cands.end(), rng);
            if (params.policy == ChoicePolicy::lookahead && step.score)
                order_by_score(cands, step.score);
            for (auto v : cands)
                if (! step.accept || step.accept(v)) {
                    chosen = v;
                    break;
                }
        }
        if (chosen == -1) {
            result.failed_step = x;
            result.reason = "construction fails at step " + std::to_string(x) + ": W minus the image is empty";
            return result;
        }

        int j = level_of[chosen];
        result.images[x] = chosen;
        used[chosen] = 1;
        result.level_of_step.push_back(j);
        if (double(++result.occupancy[j]) > result.schedule[j]) {
            result.failed_step = x;
            result.reason = "level " + std::to_string(j + 1) + " occupancy " + std::to_string(result.occupancy[j])
                + " exceeds its schedule";
            return result;
        }
        if (on_commit)
            on_commit(x, chosen);
    }
    result.success = true;
    return result;
}
