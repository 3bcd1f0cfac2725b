/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/errors.hpp>
#include <ramsey/rng.hpp>

#include <numeric>
#include <unordered_set>

using namespace ramsey;

auto ramsey::splitmix64(std::uint64_t x) -> std::uint64_t
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

auto ramsey::derive_seed(std::uint64_t seed, std::uint64_t index) -> std::uint64_t
{
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

auto ramsey::make_rng(std::uint64_t seed, std::uint64_t index) -> Rng
{
    std::seed_seq seq{ static_cast<std::uint32_t>(derive_seed(seed, index)),
        static_cast<std::uint32_t>(derive_seed(seed, index) >> 32) };
    return Rng{ seq };
}

auto ramsey::uniform_int(Rng & rng, long long lo, long long hi) -> long long
{
    if (hi < lo)
        throw Error(ErrorKind::invalid_input, "empty integer range");
    return std::uniform_int_distribution<long long>{ lo, hi }(rng);
}

auto ramsey::uniform_real(Rng & rng) -> double
{
    return std::uniform_real_distribution<double>{ 0.0, 1.0 }(rng);
}

auto ramsey::sample_distinct(Rng & rng, int n, int k) -> std::vector<int>
{
    if (k < 0 || k > n)
        throw Error(ErrorKind::invalid_input, "cannot sample that many distinct values");
    std::vector<int> result;
    result.reserve(k);
    if (2 * k > n) {
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        for (int i = 0 ; i < k ; ++i) {
            auto j = uniform_int(rng, i, n - 1);
            std::swap(all[i], all[j]);
            result.push_back(all[i]);
        }
    }
    else {
        std::unordered_set<int> seen;
        while (static_cast<int>(result.size()) < k) {
            auto v = static_cast<int>(uniform_int(rng, 0, n - 1));
            if (seen.insert(v).second)
                result.push_back(v);
        }
    }
    return result;
}
