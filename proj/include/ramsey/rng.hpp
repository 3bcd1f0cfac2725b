/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ramsey
{
    using Rng = std::mt19937_64;

    auto splitmix64(std::uint64_t x) -> std::uint64_t;

    // Sub-seed for stream `index` of master `seed`; parallel and serial runs share these.
    auto derive_seed(std::uint64_t seed, std::uint64_t index) -> std::uint64_t;
    auto make_rng(std::uint64_t seed, std::uint64_t index = 0) -> Rng;

    auto uniform_int(Rng & rng, long long lo, long long hi) -> long long;
    auto uniform_real(Rng & rng) -> double;

    // k distinct values from [0, n), in random order.
    auto sample_distinct(Rng & rng, int n, int k) -> std::vector<int>;
}
