/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/density.hpp>
#include <ramsey/graph.hpp>
#include <ramsey/partial_map.hpp>
#include <ramsey/rational.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace ramsey
{
    struct EnsembleSpec
    {
        int N = 0;
        double p = 0.0;
        std::uint64_t seed = 0;
    };

    enum class CheckMode { exhaustive, sampled };

    auto to_string(CheckMode mode) -> std::string;

    struct Violation
    {
        VertexSet witness;
        double observed = 0.0;
        double lower = 0.0, upper = 0.0;
    };

    struct PropertyVerdict
    {
        bool holds = true;
        std::vector<Violation> violations;
        long long tested = 0;
        CheckMode mode = CheckMode::exhaustive;
    };

    struct CheckOptions
    {
        long long exhaustive_budget = 200000;   // largest C(N, k) checked exhaustively
        int samples = 500;
        std::uint64_t seed = 1;
        bool check_lower = false;               // upper regularity: also test the matching lower bound
        int family_size = 0;                    // star property: 0 draws the family size at random
        std::size_t max_recorded = 10000;
    };

    auto sample_gnp(const EnsembleSpec & spec) -> Graph;

    auto chernoff_tail(double mean, double delta) -> double;
    auto hypergeom_tail(long long set_size, long long draw, long long n, double delta) -> double;

    auto check_neighbourhood_property(const Graph & g, int D, double eps, double p, const CheckOptions & options = {}) -> PropertyVerdict;
    auto check_star_property(const Graph & g, int D, double eps, double p, const CheckOptions & options = {}) -> PropertyVerdict;
    auto check_upper_regular(const Graph & g, double eta, double p, const CheckOptions & options = {}) -> PropertyVerdict;

    // |union over B in family of N(B)|
    auto star_union_size(const Graph & g, const std::vector<VertexSet> & family) -> long long;

    inline constexpr int default_extension_limit = 12;

    // Injections of h extending pi (defined exactly on the roots) with every edge not inside the roots mapped to an edge.
    auto count_extensions(const Graph & host, const RootedPattern & rp, const PartialMap & pi, int limit = default_extension_limit) -> long long;

    auto expected_extensions(const RootedPattern & rp, double N, double p) -> double;

    struct ConcentrationReport
    {
        int trials = 0;
        int in_window = 0;
        double fraction = 0.0;
        double min_ratio = 0.0, max_ratio = 0.0;
        double expectation = 0.0;
        std::vector<double> ratios;
    };

    // Samples one host from spec and `trials` uniformly random root maps.
    auto concentration_experiment(const RootedPattern & rp, const EnsembleSpec & spec, double eps, int trials,
            int D, const Rational & mu) -> ConcentrationReport;
}
