/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/embedder.hpp>
#include <ramsey/graph.hpp>
#include <ramsey/rational.hpp>
#include <ramsey/rng.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ramsey
{
    // W = { v in superset : accept(v) }; a missing predicate accepts everything.
    struct StepOracle
    {
        VertexSet superset;
        std::function<bool (Vertex)> accept;
        std::function<long long (Vertex)> score;       // used by the lookahead policy
    };

    using WOracle = std::function<StepOracle (const std::vector<Vertex> & images, Vertex x)>;

    struct CnParams
    {
        Rational rho = Rational(1, 100);
        Rational d = Rational(1, 4);
        int D = 2, Delta = 4;
        long long L = 0;                // locality bound, logged only
        double p = 0.1;
        double k1 = -1;                 // negative uses max(n, 1e-6 rho^2 N)
        ChoicePolicy policy = ChoicePolicy::random;
        std::uint64_t seed = 1;
    };

    struct CnResult
    {
        bool success = false;
        std::vector<Vertex> images;
        Vertex failed_step = -1;
        std::string reason;
        std::vector<long long> level_sizes;
        std::vector<long long> occupancy;
        std::vector<double> schedule;           // k_j
        std::vector<int> level_of_step;
        std::vector<long long> w_sizes;         // |W| when the oracle is exact, else |superset|
        long long p2_violations = 0;
    };

    // |V_1| = floor(N/2); the remaining vertices in parts of ceil(N / (2 l - 2)), l = max(2, ceil(ln N)).
    auto level_partition(long long N, Rng & rng) -> std::vector<VertexSet>;

    auto k_schedule(const std::vector<VertexSet> & levels, const CnParams & params, double k1) -> std::vector<double>;

    // Greedy injective choice: x goes into the lowest level meeting W minus the image so far.
    // on_commit, when given, sees each choice before the next oracle call.
    auto cn_injectivize(long long N, const OrderedGraph & f, const WOracle & oracle, const CnParams & params,
            const std::function<void (Vertex, Vertex)> & on_commit = {}, const std::vector<char> & skip = {}) -> CnResult;
}
