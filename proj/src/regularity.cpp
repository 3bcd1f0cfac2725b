/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/errors.hpp>
#include <ramsey/regularity.hpp>
#include <ramsey/rng.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

using namespace ramsey;

using Int128 = __int128;

Partition::Partition(std::vector<VertexSet> blocks) :
    _blocks(std::move(blocks))
{
    std::vector<Vertex> all;
    for (auto & b : _blocks) {
        std::sort(b.begin(), b.end());
        all.insert(all.end(), b.begin(), b.end());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw Error(ErrorKind::invalid_input, "partition blocks overlap");
    if (! all.empty() && all.front() < 0)
        throw Error(ErrorKind::invalid_input, "negative vertex in partition");
}

auto Partition::equitable(const VertexSet & ground, int k) -> Partition
{
    if (k < 1)
        throw Error(ErrorKind::invalid_input, "partition needs at least one block");
    std::vector<VertexSet> blocks(k);
    auto n = static_cast<long long>(ground.size());
    long long start = 0;
    for (int i = 0 ; i < k ; ++i) {
        long long size = n / k + (i < n % k ? 1 : 0);
        blocks[i].assign(ground.begin() + start, ground.begin() + start + size);
        start += size;
    }
    return Partition{ std::move(blocks) };
}

auto Partition::equitable(int n, int k) -> Partition
{
    VertexSet ground(n);
    std::iota(ground.begin(), ground.end(), 0);
    return equitable(ground, k);
}

auto Partition::covered() const -> long long
{
    long long result = 0;
    for (auto & b : _blocks)
        result += static_cast<long long>(b.size());
    return result;
}

auto Partition::is_equitable() const -> bool
{
    if (_blocks.empty())
        return true;
    auto [lo, hi] = std::minmax_element(_blocks.begin(), _blocks.end(),
            [] (const VertexSet & a, const VertexSet & b) { return a.size() < b.size(); });
    return hi->size() - lo->size() <= 1;
}

auto Partition::block_index(int n) const -> std::vector<int>
{
    std::vector<int> result(n, -1);
    for (int i = 0 ; i < size() ; ++i)
        for (auto v : _blocks[i])
            if (v < n)
                result[v] = i;
    return result;
}

auto ramsey::is_refinement(const Partition & coarse, const Partition & fine) -> bool
{
    if (coarse.covered() != fine.covered())
        return false;
    int n = 0;
    for (auto & b : coarse.blocks())
        for (auto v : b)
            n = std::max(n, v + 1);
    auto owner = coarse.block_index(n);
    for (auto & b : fine.blocks()) {
        if (b.empty())
            continue;
        if (b.front() >= n || owner[b.front()] == -1)
            return false;
        for (auto v : b)
            if (v >= n || owner[v] != owner[b.front()])
                return false;
    }
    return true;
}

auto ramsey::equitable_refinement_factor(const Partition & coarse, const Partition & fine) -> std::optional<int>
{
    if (! is_refinement(coarse, fine) || ! fine.is_equitable() || coarse.size() == 0)
        return std::nullopt;
    int n = 0;
    for (auto & b : coarse.blocks())
        for (auto v : b)
            n = std::max(n, v + 1);
    auto owner = coarse.block_index(n);
    std::vector<int> count(coarse.size(), 0);
    for (auto & b : fine.blocks())
        if (! b.empty())
            ++count[owner[b.front()]];
    for (auto c : count)
        if (c != count.front())
            return std::nullopt;
    return count.front();
}

namespace
{
    auto check_pair(const Graph & g, const VertexSet & u, const VertexSet & v) -> void
    {
        if (u.empty() || v.empty())
            throw Error(ErrorKind::invalid_input, "pair sides must be nonempty");
        std::vector<char> seen(g.size(), 0);
        for (auto x : u) {
            if (x < 0 || x >= g.size())
                throw Error(ErrorKind::invalid_input, "vertex out of range");
            seen[x] = 1;
        }
        for (auto x : v) {
            if (x < 0 || x >= g.size())
                throw Error(ErrorKind::invalid_input, "vertex out of range");
            if (seen[x])
                throw Error(ErrorKind::invalid_input, "pair sides overlap");
        }
    }

    auto ceil_times(const Rational & eps, long long size) -> long long
    {
        Rational x = eps * size;
        BigInt q = numerator(x) / denominator(x);
        if (Rational(q) < x)
            ++q;
        return std::max<long long>(1, q.convert_to<long long>());
    }

    auto to_i128(const BigInt & x) -> Int128
    {
        return static_cast<Int128>(x.convert_to<long long>());
    }

    // |e' |U||V| - E a b| <= eps p a b |U||V|, with eps p = num/den
    struct DeviationTest
    {
        Int128 uv, total, num, den;

        auto ok(long long e, long long a, long long b) const -> bool
        {
            Int128 lhs = static_cast<Int128>(e) * uv - total * a * b;
            if (lhs < 0)
                lhs = -lhs;
            return lhs * den <= num * a * b * uv;
        }
    };
}

auto ramsey::p_density(const Graph & g, const VertexSet & u, const VertexSet & v, const Rational & p) -> Rational
{
    if (p <= 0)
        throw Error(ErrorKind::invalid_input, "p-density needs p > 0");
    check_pair(g, u, v);
    auto e = edges_between(g, u, v);
    return Rational(e) / (p * static_cast<long long>(u.size()) * static_cast<long long>(v.size()));
}

auto ramsey::assess_pair(const Graph & g, const VertexSet & u_in, const VertexSet & v_in, const Rational & eps, const Rational & p,
        const AssessOptions & options) -> PairAssessment
{
    PairAssessment result;
    result.density = p_density(g, u_in, v_in, p);
    result.epsilon = eps;
    result.mode = options.mode;

    // s is the smaller side; subsets of s are enumerated or sampled
    bool swapped = u_in.size() > v_in.size();
    const VertexSet & s = swapped ? v_in : u_in;
    const VertexSet & t = swapped ? u_in : v_in;
    long long ns = static_cast<long long>(s.size()), nt = static_cast<long long>(t.size());
    long long total = edges_between(g, s, t);
    long long a_min = ceil_times(eps, ns), b_min = ceil_times(eps, nt);

    Rational ep = eps * p;
    DeviationTest test{ static_cast<Int128>(ns) * nt, total, to_i128(numerator(ep)), to_i128(denominator(ep)) };

    std::vector<int> t_pos(g.size(), -1);
    for (long long i = 0 ; i < nt ; ++i)
        t_pos[t[i]] = static_cast<int>(i);

    std::vector<long long> degree(nt);
    std::vector<long long> histogram;

    // checks every V' size for the current U' through the sorted degree sequence
    auto scan = [&] (long long a, auto && make_witness) -> bool {
        long long max_deg = 0;
        for (auto d : degree)
            max_deg = std::max(max_deg, d);
        histogram.assign(max_deg + 1, 0);
        for (auto d : degree)
            ++histogram[d];
        // descending for the maximum, ascending for the minimum
        long long hi_sum = 0, lo_sum = 0;
        long long hi_deg = max_deg, hi_left = histogram[hi_deg];
        long long lo_deg = 0, lo_left = histogram[0];
        for (long long b = 1 ; b <= nt ; ++b) {
            while (hi_left == 0)
                hi_left = histogram[--hi_deg];
            --hi_left;
            hi_sum += hi_deg;
            while (lo_left == 0)
                lo_left = histogram[++lo_deg];
            --lo_left;
            lo_sum += lo_deg;
            if (b < b_min)
                continue;
            ++result.tested;
            if (! test.ok(hi_sum, a, b)) {
                make_witness(b, true);
                return false;
            }
            if (! test.ok(lo_sum, a, b)) {
                make_witness(b, false);
                return false;
            }
        }
        return true;
    };

    auto witness_for = [&] (const VertexSet & u_prime, long long b, bool top) {
        std::vector<int> idx(nt);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&] (int x, int y) {
                return top ? degree[x] > degree[y] : degree[x] < degree[y]; });
        VertexSet v_prime;
        for (long long i = 0 ; i < b ; ++i)
            v_prime.push_back(t[idx[i]]);
        std::sort(v_prime.begin(), v_prime.end());
        VertexSet u_sorted = u_prime;
        std::sort(u_sorted.begin(), u_sorted.end());
        result.regular = false;
        if (swapped)
            result.witness = std::make_pair(v_prime, u_sorted);
        else
            result.witness = std::make_pair(u_sorted, v_prime);
    };

    if (options.mode == CheckMode::exhaustive) {
        if (ns > options.exhaustive_limit || ns > 26)
            throw Error(ErrorKind::instance_too_large, "exhaustive pair assessment needs a side of at most "
                    + std::to_string(std::min(options.exhaustive_limit, 26)) + " vertices");
        std::vector<std::uint32_t> mask_of(nt, 0);
        for (long long i = 0 ; i < ns ; ++i)
            for (auto w : g.neighbours(s[i]))
                if (t_pos[w] != -1)
                    mask_of[t_pos[w]] |= std::uint32_t{ 1 } << i;

        std::uint32_t full = (ns == 32) ? ~0u : ((std::uint32_t{ 1 } << ns) - 1);
        for (std::uint64_t m = 1 ; m <= full ; ++m) {
            auto mask = static_cast<std::uint32_t>(m);
            long long a = std::popcount(mask);
            if (a < a_min)
                continue;
            for (long long j = 0 ; j < nt ; ++j)
                degree[j] = std::popcount(mask_of[j] & mask);
            bool ok = scan(a, [&] (long long b, bool top) {
                    VertexSet u_prime;
                    for (long long i = 0 ; i < ns ; ++i)
                        if (mask & (std::uint32_t{ 1 } << i))
                            u_prime.push_back(s[i]);
                    witness_for(u_prime, b, top); });
            if (! ok)
                return result;
        }
        return result;
    }

    auto rng = make_rng(options.seed, static_cast<std::uint64_t>(total) * 1000003ULL + static_cast<std::uint64_t>(ns * nt));
    for (int sample = 0 ; sample < options.samples ; ++sample) {
        long long a = (sample % 2 == 0) ? a_min : uniform_int(rng, a_min, ns);
        auto picks = sample_distinct(rng, static_cast<int>(ns), static_cast<int>(a));
        VertexSet u_prime;
        for (auto i : picks)
            u_prime.push_back(s[i]);
        std::fill(degree.begin(), degree.end(), 0);
        for (auto x : u_prime)
            for (auto w : g.neighbours(x))
                if (t_pos[w] != -1)
                    ++degree[t_pos[w]];
        if (! scan(a, [&] (long long b, bool top) { witness_for(u_prime, b, top); }))
            return result;

        // alternate: the top-degree V' pulls U' towards the high-degree vertices
        for (int round = 0 ; round < options.refine_rounds ; ++round) {
            long long b = std::max(b_min, a * nt / ns);
            std::vector<int> idx(nt);
            std::iota(idx.begin(), idx.end(), 0);
            std::stable_sort(idx.begin(), idx.end(), [&] (int x, int y) { return degree[x] > degree[y]; });
            std::vector<char> in_v(nt, 0);
            for (long long i = 0 ; i < b ; ++i)
                in_v[idx[i]] = 1;
            std::vector<long long> back(ns, 0);
            for (long long i = 0 ; i < ns ; ++i)
                for (auto w : g.neighbours(s[i]))
                    if (t_pos[w] != -1 && in_v[t_pos[w]])
                        ++back[i];
            std::vector<int> sidx(ns);
            std::iota(sidx.begin(), sidx.end(), 0);
            std::stable_sort(sidx.begin(), sidx.end(), [&] (int x, int y) { return back[x] > back[y]; });
            u_prime.clear();
            for (long long i = 0 ; i < a ; ++i)
                u_prime.push_back(s[sidx[i]]);
            std::fill(degree.begin(), degree.end(), 0);
            for (auto x : u_prime)
                for (auto w : g.neighbours(x))
                    if (t_pos[w] != -1)
                        ++degree[t_pos[w]];
            if (! scan(a, [&] (long long b, bool top) { witness_for(u_prime, b, top); }))
                return result;
        }
    }
    return result;
}

namespace
{
    // edge counts between blocks, per colour
    auto block_counts(const Partition & partition, const Graph & g) -> std::vector<std::vector<long long>>
    {
        int k = partition.size();
        auto owner = partition.block_index(g.size());
        std::vector<std::vector<long long>> counts(k, std::vector<long long>(k, 0));
        for (int u = 0 ; u < g.size() ; ++u) {
            if (owner[u] == -1)
                continue;
            for (auto v : g.neighbours(u))
                if (owner[v] != -1 && owner[v] != owner[u])
                    ++counts[owner[u]][owner[v]];
        }
        return counts;
    }
}

auto ramsey::energy(const Partition & partition, const std::vector<Graph> & graphs, const Rational & p) -> Rational
{
    if (p <= 0)
        throw Error(ErrorKind::invalid_input, "energy needs p > 0");
    long long n = partition.covered();
    if (n == 0)
        return Rational(0);
    int k = partition.size();
    std::map<std::pair<long long, long long>, BigInt> grouped;
    for (auto & g : graphs) {
        auto counts = block_counts(partition, g);
        for (int i = 0 ; i < k ; ++i)
            for (int j = 0 ; j < k ; ++j)
                if (i != j && counts[i][j] != 0) {
                    auto key = std::make_pair(static_cast<long long>(partition.block(i).size()), static_cast<long long>(partition.block(j).size()));
                    grouped[key] += BigInt(counts[i][j]) * counts[i][j];
                }
    }
    Rational sum = 0;
    for (auto & [sizes, squares] : grouped)
        sum += Rational(squares) / (BigInt(sizes.first) * sizes.second);
    return sum / (p * p * n * n);
}

auto ramsey::defect_cauchy_schwarz(const std::vector<Rational> & lambda, const Rational & d, const std::vector<Rational> & rho) -> DefectSides
{
    if (lambda.size() != rho.size() || lambda.empty())
        throw Error(ErrorKind::invalid_input, "weights and deviations must have equal nonzero length");
    Rational weight_sum = 0, mean = 0;
    for (std::size_t i = 0 ; i < lambda.size() ; ++i) {
        if (lambda[i] < 0)
            throw Error(ErrorKind::invalid_input, "negative weight");
        weight_sum += lambda[i];
        mean += lambda[i] * rho[i];
    }
    if (weight_sum != 1)
        throw Error(ErrorKind::invalid_input, "weights must sum to one");
    if (mean != 0)
        throw Error(ErrorKind::invalid_input, "weighted deviations must sum to zero");

    DefectSides sides{ 0, d * d };
    for (std::size_t i = 0 ; i < lambda.size() ; ++i) {
        sides.lhs += lambda[i] * (d + rho[i]) * (d + rho[i]);
        sides.rhs += lambda[i] * rho[i] * rho[i];
    }
    return sides;
}

namespace
{
    struct RoundAssessment
    {
        std::vector<double> irregular_fraction;
        std::vector<PairRecord> records;
        // for each block, the first irregular pair touching it: (colour, the other side's witness set)
        std::vector<std::optional<std::pair<int, VertexSet>>> split_hint;
    };

    auto assess_round(const std::vector<Graph> & graphs, const Partition & fine, const Rational & eps, const Rational & p,
            const AssessOptions & options) -> RoundAssessment
    {
        int k = fine.size();
        int r = static_cast<int>(graphs.size());
        RoundAssessment round;
        round.irregular_fraction.assign(r, 0.0);
        round.split_hint.assign(k, std::nullopt);
        long long pairs = static_cast<long long>(k) * (k - 1) / 2;
        for (int c = 0 ; c < r ; ++c) {
            long long irregular = 0;
            for (int i = 0 ; i < k ; ++i)
                for (int j = i + 1 ; j < k ; ++j) {
                    AssessOptions local = options;
                    local.seed = derive_seed(options.seed, static_cast<std::uint64_t>((c * k + i) * k + j));
                    auto a = assess_pair(graphs[c], fine.block(i), fine.block(j), eps, p, local);
                    round.records.push_back(PairRecord{ i, j, c, a.density, a.regular });
                    if (! a.regular) {
                        ++irregular;
                        if (! round.split_hint[i])
                            round.split_hint[i] = std::make_pair(c, a.witness->second);
                        if (! round.split_hint[j])
                            round.split_hint[j] = std::make_pair(c, a.witness->first);
                    }
                }
            round.irregular_fraction[c] = pairs ? static_cast<double>(irregular) / static_cast<double>(pairs) : 0.0;
        }
        return round;
    }

    auto halve(const std::vector<Graph> & graphs, const Partition & fine, const RoundAssessment & round) -> Partition
    {
        int n = graphs.front().size();
        std::vector<VertexSet> next;
        std::vector<char> in_target(n, 0);
        for (int i = 0 ; i < fine.size() ; ++i) {
            VertexSet block = fine.block(i);
            if (round.split_hint[i]) {
                auto & [colour, target] = *round.split_hint[i];
                for (auto v : target)
                    in_target[v] = 1;
                std::vector<std::pair<int, Vertex>> scored;
                for (auto v : block) {
                    int score = 0;
                    for (auto w : graphs[colour].neighbours(v))
                        score += in_target[w];
                    scored.emplace_back(-score, v);
                }
                for (auto v : target)
                    in_target[v] = 0;
                std::sort(scored.begin(), scored.end());
                for (std::size_t j = 0 ; j < block.size() ; ++j)
                    block[j] = scored[j].second;
            }
            auto half = (block.size() + 1) / 2;
            next.emplace_back(block.begin(), block.begin() + half);
            next.emplace_back(block.begin() + half, block.end());
        }
        return Partition{ std::move(next) };
    }

    auto trace_string(const std::vector<Rational> & trace) -> std::string
    {
        std::ostringstream out;
        out << "energy trace [";
        for (std::size_t i = 0 ; i < trace.size() ; ++i)
            out << (i ? ", " : "") << to_double(trace[i]);
        out << "]";
        return out.str();
    }

    // moves the fewest vertices, lowest index first, until block sizes differ by at most one
    auto equalize(const Partition & partition) -> Partition
    {
        auto blocks = partition.blocks();
        int k = static_cast<int>(blocks.size());
        long long n = partition.covered();
        std::vector<int> by_size(k);
        std::iota(by_size.begin(), by_size.end(), 0);
        std::stable_sort(by_size.begin(), by_size.end(), [&] (int a, int b) { return blocks[a].size() > blocks[b].size(); });
        std::vector<long long> target(k);
        for (int rank = 0 ; rank < k ; ++rank)
            target[by_size[rank]] = n / k + (rank < n % k ? 1 : 0);

        VertexSet surplus;
        for (int i = 0 ; i < k ; ++i)
            while (static_cast<long long>(blocks[i].size()) > target[i]) {
                surplus.push_back(blocks[i].front());
                blocks[i].erase(blocks[i].begin());
            }
        std::size_t next = 0;
        for (int i = 0 ; i < k ; ++i)
            while (static_cast<long long>(blocks[i].size()) < target[i])
                blocks[i].push_back(surplus[next++]);
        return Partition{ std::move(blocks) };
    }
}

auto ramsey::srl_refine(const std::vector<Graph> & graphs, const Rational & eps, const Partition & base, const Rational & p,
        const SrlOptions & options) -> SrlResult
{
    if (graphs.empty())
        throw Error(ErrorKind::invalid_input, "no colour classes");
    for (auto & g : graphs)
        if (g.size() != graphs.front().size())
            throw Error(ErrorKind::invalid_input, "colour classes on different vertex sets");

    SrlResult result;
    result.fine = base;
    for (int round = 0 ; ; ++round) {
        auto assessment = assess_round(graphs, result.fine, eps, p, options.assess);
        result.irregular_fraction = assessment.irregular_fraction;
        result.energy_trace.push_back(energy(result.fine, graphs, p));
        bool ok = std::all_of(assessment.irregular_fraction.begin(), assessment.irregular_fraction.end(),
                [&] (double f) { return f <= to_double(eps); });
        if (ok) {
            result.converged = true;
            return result;
        }
        if (round >= options.max_rounds || result.fine.size() * 2 > options.max_parts)
            return result;
        result.fine = halve(graphs, result.fine, assessment);
        result.factor *= 2;
    }
}

auto ramsey::srl_partition(const std::vector<Graph> & graphs, const Rational & eps, int t0, const Rational & p,
        const SrlOptions & options) -> Partition
{
    if (graphs.empty())
        throw Error(ErrorKind::invalid_input, "no colour classes");
    auto result = srl_refine(graphs, eps, Partition::equitable(graphs.front().size(), t0), p, options);
    if (! result.converged)
        throw Error(ErrorKind::budget_exceeded, "regular partition not reached within "
                + std::to_string(options.max_parts) + " parts; " + trace_string(result.energy_trace));
    return result.fine;
}

auto ramsey::strengthened_srl(const std::vector<Graph> & graphs, const Rational & eps, const std::function<Rational (int)> & f,
        int k0, const Rational & p, const SsrlOptions & options) -> RegularityDecomposition
{
    if (graphs.empty())
        throw Error(ErrorKind::invalid_input, "no colour classes");
    int n = graphs.front().size();
    int r = static_cast<int>(graphs.size());

    RegularityDecomposition decomp;
    decomp.epsilon = eps;
    Partition coarse = Partition::equitable(n, k0);
    decomp.energy_trace.push_back(energy(coarse, graphs, p));

    long long budget = options.max_iterations;
    if (budget <= 0) {
        Rational t = Rational(16 * r) / (eps * eps * eps);
        budget = (numerator(t) / denominator(t)).convert_to<long long>() + 1;
    }

    Rational gain_floor = eps * eps * eps / 16;
    for (long long it = 1 ; it <= budget ; ++it) {
        decomp.iterations = static_cast<int>(it);
        Rational fine_eps = std::min(Rational(eps / 2), f(coarse.size()));
        auto refined = srl_refine(graphs, fine_eps, coarse, p, options.srl);
        if (! refined.converged)
            throw Error(ErrorKind::budget_exceeded, "fine partition not regular within budget at iteration "
                    + std::to_string(it) + "; " + trace_string(decomp.energy_trace));

        // fine pairs in distinct coarse blocks whose density drifts from the coarse pair's
        const auto & fine = refined.fine;
        auto coarse_of = coarse.block_index(n);
        std::vector<std::vector<std::vector<long long>>> coarse_counts;
        for (auto & g : graphs)
            coarse_counts.push_back(block_counts(coarse, g));
        decomp.pairs.clear();
        long long drifted = 0;
        std::vector<std::vector<char>> pair_drift(fine.size(), std::vector<char>(fine.size(), 0));

        // recompute the final-round records for the accepted fine partition
        auto round = assess_round(graphs, fine, fine_eps, p, options.srl.assess);
        for (auto & rec : round.records) {
            int ci = coarse_of[fine.block(rec.i).front()], cj = coarse_of[fine.block(rec.j).front()];
            if (ci == cj)
                continue;
            decomp.pairs.push_back(rec);
            Rational coarse_density = Rational(coarse_counts[rec.colour][ci][cj])
                / (p * static_cast<long long>(coarse.block(ci).size()) * static_cast<long long>(coarse.block(cj).size()));
            Rational diff = rec.density - coarse_density;
            if (diff < 0)
                diff = -diff;
            if (diff > eps)
                pair_drift[rec.i][rec.j] = 1;
        }
        for (int i = 0 ; i < fine.size() ; ++i)
            for (int j = i + 1 ; j < fine.size() ; ++j)
                drifted += 2 * pair_drift[i][j];

        decomp.rl4_violations = drifted;
        if (Rational(drifted) <= eps * fine.size() * fine.size()) {
            decomp.coarse = coarse;
            decomp.fine = fine;
            decomp.rl4_holds = true;
            return decomp;
        }

        auto next = equalize(fine);
        auto next_energy = energy(next, graphs, p);
        auto gain = next_energy - decomp.energy_trace.back();
        decomp.energy_trace.push_back(next_energy);
        decomp.gains.push_back(gain);
        if (options.assert_gain && gain < gain_floor)
            throw Error(ErrorKind::invariant_violated, "energy gain " + std::to_string(to_double(gain))
                    + " below eps^3/16; " + trace_string(decomp.energy_trace));
        coarse = next;
    }
    throw Error(ErrorKind::budget_exceeded, "strengthened regularity loop exceeded its iteration budget; " + trace_string(decomp.energy_trace));
}

namespace
{
    auto maximum_independent_set(int k, const std::vector<std::uint64_t> & adj) -> std::uint64_t
    {
        std::uint64_t best = 0;
        int best_size = 0;
        auto go = [&] (auto & self, std::uint64_t chosen, int size, std::uint64_t candidates) -> void {
            if (size + std::popcount(candidates) <= best_size)
                return;
            if (candidates == 0) {
                best = chosen;
                best_size = size;
                return;
            }
            int v = std::countr_zero(candidates);
            std::uint64_t bit = std::uint64_t{ 1 } << v;
            self(self, chosen | bit, size + 1, candidates & ~bit & ~adj[v]);
            self(self, chosen, size, candidates & ~bit);
        };
        std::uint64_t all = (k == 64) ? ~std::uint64_t{ 0 } : ((std::uint64_t{ 1 } << k) - 1);
        go(go, 0, 0, all);
        return best;
    }

    // lexicographically first h-clique among the vertices of `allowed`
    auto find_clique(const std::vector<std::uint64_t> & adj, std::uint64_t allowed, int h) -> std::optional<std::vector<int>>
    {
        std::vector<int> chosen;
        auto go = [&] (auto & self, std::uint64_t candidates) -> bool {
            if (static_cast<int>(chosen.size()) == h)
                return true;
            while (candidates) {
                if (static_cast<int>(chosen.size()) + std::popcount(candidates) < h)
                    return false;
                int v = std::countr_zero(candidates);
                candidates &= candidates - 1;
                chosen.push_back(v);
                if (self(self, candidates & adj[v]))
                    return true;
                chosen.pop_back();
            }
            return false;
        };
        if (go(go, allowed))
            return chosen;
        return std::nullopt;
    }

    auto abs_diff(const Rational & a, const Rational & b) -> Rational
    {
        return a > b ? a - b : b - a;
    }
}

auto ramsey::select_colour_and_parts(const RegularityDecomposition & decomp, const std::vector<Graph> & graphs, int r, int h1,
        const VertexSet & z, const Rational & d, const Rational & p, const SelectOptions & options) -> Selection
{
    if (graphs.empty() || static_cast<int>(graphs.size()) != r)
        throw Error(ErrorKind::invalid_input, "expected one graph per colour");
    if (h1 < 1)
        throw Error(ErrorKind::invalid_input, "clique size must be positive");
    const auto & coarse = decomp.coarse;
    const auto & fine = decomp.fine;
    int kc = coarse.size(), kf = fine.size();
    if (kc > 64)
        throw Error(ErrorKind::instance_too_large, "part selection handles at most 64 coarse parts");
    int n = graphs.front().size();
    Rational eps = decomp.epsilon;
    Rational tolerance = options.tie_tolerance < 0 ? eps : options.tie_tolerance;
    Rational floor = options.fine_density_floor < 0 ? Rational(5, 8 * r) : options.fine_density_floor;

    auto coarse_of_vertex = coarse.block_index(n);
    std::vector<int> coarse_of(kf);
    for (int i = 0 ; i < kf ; ++i)
        coarse_of[i] = coarse_of_vertex[fine.block(i).front()];

    std::vector<std::vector<std::vector<long long>>> counts;
    for (auto & g : graphs)
        counts.push_back(block_counts(coarse, g));
    auto coarse_density = [&] (int c, int x, int y) {
        return Rational(counts[c][x][y]) / (p * static_cast<long long>(coarse.block(x).size()) * static_cast<long long>(coarse.block(y).size()));
    };

    // per fine pair, per colour
    std::map<std::pair<int, int>, std::vector<const PairRecord *>> records;
    for (auto & rec : decomp.pairs) {
        auto & slot = records[{ std::min(rec.i, rec.j), std::max(rec.i, rec.j) }];
        slot.resize(r, nullptr);
        slot[rec.colour] = &rec;
    }

    Selection result;

    // coarse pairs with too many defective fine subpairs
    std::vector<std::vector<long long>> defective(kc, std::vector<long long>(kc, 0));
    for (auto & [key, recs] : records) {
        int x = coarse_of[key.first], y = coarse_of[key.second];
        if (x == y)
            continue;
        bool bad = false;
        for (int c = 0 ; c < r && ! bad ; ++c)
            if (recs[c] && (! recs[c]->regular || abs_diff(recs[c]->density, coarse_density(c, x, y)) > eps))
                bad = true;
        if (bad) {
            ++defective[x][y];
            ++defective[y][x];
        }
    }
    double pair_limit = std::sqrt(to_double(eps)) * double(kf) * double(kf) / (double(kc) * double(kc));
    std::vector<std::uint64_t> bad_adj(kc, 0);
    for (int x = 0 ; x < kc ; ++x)
        for (int y = x + 1 ; y < kc ; ++y)
            if (double(defective[x][y]) > pair_limit) {
                result.bad_coarse_pairs.emplace_back(x, y);
                bad_adj[x] |= std::uint64_t{ 1 } << y;
                bad_adj[y] |= std::uint64_t{ 1 } << x;
            }

    std::uint64_t independent = maximum_independent_set(kc, bad_adj);

    // colour classes of the reduced graph
    std::vector<std::vector<std::uint64_t>> colour_adj(r, std::vector<std::uint64_t>(kc, 0));
    for (int x = 0 ; x < kc ; ++x)
        for (int y = x + 1 ; y < kc ; ++y) {
            if (! ((independent >> x) & 1) || ! ((independent >> y) & 1))
                continue;
            std::vector<Rational> dens(r);
            for (int c = 0 ; c < r ; ++c)
                dens[c] = coarse_density(c, x, y);
            Rational best = *std::max_element(dens.begin(), dens.end());
            for (int c = 0 ; c < r ; ++c)
                if (dens[c] >= best - tolerance && dens[c] >= d) {
                    colour_adj[c][x] |= std::uint64_t{ 1 } << y;
                    colour_adj[c][y] |= std::uint64_t{ 1 } << x;
                }
        }

    std::optional<std::vector<int>> clique;
    for (int c = 0 ; c < r && ! clique ; ++c) {
        if (options.colour >= 0 && c != options.colour)
            continue;
        clique = find_clique(colour_adj[c], independent, h1);
        if (clique)
            result.colour = c;
    }
    if (! clique)
        throw Error(ErrorKind::no_monochromatic_clique, "reduced graph has no monochromatic clique on "
                + std::to_string(h1) + " parts among " + std::to_string(std::popcount(independent)) + " candidates");
    result.coarse_parts = *clique;

    std::vector<char> chosen(kc, 0);
    for (auto x : result.coarse_parts)
        chosen[x] = 1;
    std::vector<char> in_z(n, 0);
    for (auto v : z) {
        if (v < 0 || v >= n)
            throw Error(ErrorKind::invalid_input, "excluded vertex out of range");
        in_z[v] = 1;
    }

    // fine parts with too many bad partners or too much of Z
    int chi = result.colour;
    std::vector<long long> bad_partners(kf, 0);
    for (auto & [key, recs] : records) {
        int x = coarse_of[key.first], y = coarse_of[key.second];
        if (x == y || ! chosen[x] || ! chosen[y] || ! recs[chi])
            continue;
        if (! recs[chi]->regular || recs[chi]->density <= floor) {
            ++bad_partners[key.first];
            ++bad_partners[key.second];
        }
    }
    double partner_limit = std::pow(to_double(eps), 0.25) * double(kf) / double(kc);
    std::vector<std::vector<int>> good(kc);
    for (int i = 0 ; i < kf ; ++i) {
        if (! chosen[coarse_of[i]])
            continue;
        long long in_zone = 0;
        for (auto v : fine.block(i))
            in_zone += in_z[v];
        bool bad = double(bad_partners[i]) > partner_limit
            || 20 * in_zone >= static_cast<long long>(fine.block(i).size());
        if (bad)
            result.bad_fine_parts.push_back(i);
        else
            good[coarse_of[i]].push_back(i);
    }

    std::size_t fewest = SIZE_MAX;
    for (auto x : result.coarse_parts)
        fewest = std::min(fewest, good[x].size());
    std::size_t q = options.keep_half ? fewest / 2 : fewest;
    if (q == 0)
        throw Error(ErrorKind::no_monochromatic_clique, "no good fine parts remain in some chosen part");

    std::vector<std::vector<VertexSet>> trimmed;
    std::size_t smallest = SIZE_MAX, smallest_outside = SIZE_MAX;
    for (auto x : result.coarse_parts) {
        trimmed.emplace_back();
        for (std::size_t j = 0 ; j < q ; ++j) {
            const auto & block = fine.block(good[x][j]);
            VertexSet outside;
            for (auto v : block)
                if (! in_z[v])
                    outside.push_back(v);
            smallest = std::min(smallest, block.size());
            smallest_outside = std::min(smallest_outside, outside.size());
            trimmed.back().push_back(std::move(outside));
        }
    }
    Rational scaled = options.trim_fraction * static_cast<long long>(smallest);
    auto t = std::min<std::size_t>((numerator(scaled) / denominator(scaled)).convert_to<std::size_t>(), smallest_outside);
    if (t == 0)
        throw Error(ErrorKind::no_monochromatic_clique, "trimmed parts are empty");

    for (auto & blocks : trimmed) {
        VertexSet part;
        for (auto & b : blocks) {
            b.resize(t);
            part.insert(part.end(), b.begin(), b.end());
        }
        std::sort(part.begin(), part.end());
        result.parts.push_back(std::move(part));
        result.fine.push_back(std::move(blocks));
    }
    result.K = Rational(n, static_cast<long long>(result.parts.front().size()));
    return result;
}

namespace
{
    class PartiteSearch
    {
        private:
            const Graph & _g;
            const Graph & _pattern;
            const std::vector<VertexSet> & _parts;
            std::vector<std::vector<char>> _member;
            std::vector<char> _used;

        public:
            std::vector<Vertex> image;

            PartiteSearch(const Graph & g, const Graph & pattern, const std::vector<VertexSet> & parts, int limit) :
                _g(g), _pattern(pattern), _parts(parts), _used(g.size(), 0), image(pattern.size(), -1)
            {
                if (pattern.size() > limit)
                    throw Error(ErrorKind::instance_too_large, "partite counting limited to "
                            + std::to_string(limit) + " pattern vertices");
                if (static_cast<int>(parts.size()) != pattern.size())
                    throw Error(ErrorKind::invalid_input, "need one part per pattern vertex");
                for (auto & part : parts) {
                    _member.emplace_back(g.size(), 0);
                    for (auto v : part) {
                        if (v < 0 || v >= g.size())
                            throw Error(ErrorKind::invalid_input, "part vertex out of range");
                        _member.back()[v] = 1;
                    }
                }
            }

            // images for x consistent with the mapped pattern neighbours of x
            auto candidates(Vertex x) const -> VertexSet
            {
                VertexSet mapped;
                for (auto w : _pattern.neighbours(x))
                    if (image[w] != -1)
                        mapped.push_back(image[w]);
                VertexSet result;
                auto consider = [&] (Vertex v) {
                    if (! _member[x][v] || _used[v])
                        return;
                    for (auto m : mapped)
                        if (! _g.adjacent(m, v))
                            return;
                    result.push_back(v);
                };
                if (mapped.empty())
                    for (auto v : _parts[x])
                        consider(v);
                else {
                    auto pivot = *std::min_element(mapped.begin(), mapped.end(),
                            [&] (Vertex a, Vertex b) { return _g.degree(a) < _g.degree(b); });
                    for (auto v : _g.neighbours(pivot))
                        consider(v);
                }
                return result;
            }

            // maps order[pos..] in turn, calling visit at the end; stops when visit returns true
            template <typename Visit_>
            auto search(const std::vector<Vertex> & order, std::size_t pos, Visit_ && visit) -> bool
            {
                if (pos == order.size())
                    return visit();
                Vertex x = order[pos];
                for (auto v : candidates(x)) {
                    image[x] = v;
                    _used[v] = 1;
                    bool stop = search(order, pos + 1, visit);
                    _used[v] = 0;
                    image[x] = -1;
                    if (stop)
                        return true;
                }
                return false;
            }
    };
}

auto ramsey::count_partite_embeddings(const Graph & g, const Graph & pattern, const std::vector<VertexSet> & parts, int limit) -> long long
{
    PartiteSearch search(g, pattern, parts, limit);
    if (pattern.size() == 0)
        return 1;
    std::vector<Vertex> prefix(pattern.size() - 1);
    std::iota(prefix.begin(), prefix.end(), 0);
    long long total = 0;
    search.search(prefix, 0, [&] {
            total += static_cast<long long>(search.candidates(pattern.size() - 1).size());
            return false; });
    return total;
}

auto ramsey::predicted_partite_count(const Graph & g, const Graph & pattern, const std::vector<VertexSet> & parts, const Rational & p) -> double
{
    if (static_cast<int>(parts.size()) != pattern.size())
        throw Error(ErrorKind::invalid_input, "need one part per pattern vertex");
    std::vector<long long> sizes;
    for (auto & part : parts)
        sizes.push_back(static_cast<long long>(part.size()));
    std::vector<double> densities;
    for (auto [x, y] : pattern.edges())
        densities.push_back(to_double(p_density(g, parts[x], parts[y], p)));
    return predicted_partite_count(sizes, pattern, densities, to_double(p));
}

auto ramsey::predicted_partite_count(const std::vector<long long> & part_sizes, const Graph & pattern,
        const std::vector<double> & edge_densities, double p) -> double
{
    if (static_cast<int>(part_sizes.size()) != pattern.size() || edge_densities.size() != pattern.edges().size())
        throw Error(ErrorKind::invalid_input, "sizes or densities do not match the pattern");
    double result = 1.0;
    for (auto s : part_sizes)
        result *= double(s);
    for (auto dens : edge_densities)
        result *= dens * p;
    return result;
}

auto ramsey::count_poor_embeddings(const Graph & g, const Graph & pattern, const std::vector<VertexSet> & parts,
        const Rational & d, const Rational & p, int limit) -> long long
{
    if (pattern.size() == 0)
        throw Error(ErrorKind::invalid_input, "pattern must be nonempty");
    PartiteSearch search(g, pattern, parts, limit);
    Vertex y = pattern.size() - 1;
    Rational dp = d * p, scale = 1;
    for (int i = 0 ; i < pattern.degree(y) ; ++i)
        scale *= dp;
    Rational threshold = Rational(3, 4) * scale * static_cast<long long>(parts[y].size());

    std::vector<Vertex> prefix(y);
    std::iota(prefix.begin(), prefix.end(), 0);
    long long poor = 0;
    search.search(prefix, 0, [&] {
            // common neighbourhood inside V_y, ignoring injectivity
            long long common = 0;
            for (auto v : parts[y]) {
                bool ok = true;
                for (auto w : pattern.neighbours(y))
                    if (! g.adjacent(search.image[w], v)) {
                        ok = false;
                        break;
                    }
                common += ok;
            }
            if (Rational(common) < threshold)
                ++poor;
            return false; });
    return poor;
}

auto ramsey::count_noncompletion_embeddings(const Graph & g, const Graph & pattern, const VertexSet & q,
        const std::vector<VertexSet> & parts, int limit) -> long long
{
    PartiteSearch search(g, pattern, parts, limit);
    std::vector<char> in_q(pattern.size(), 0);
    for (auto x : q) {
        if (x < 0 || x >= pattern.size())
            throw Error(ErrorKind::invalid_input, "segment vertex out of range");
        in_q[x] = 1;
    }
    std::vector<Vertex> outside, inside;
    for (int x = 0 ; x < pattern.size() ; ++x)
        (in_q[x] ? inside : outside).push_back(x);

    long long stuck = 0;
    search.search(outside, 0, [&] {
            bool completes = search.search(inside, 0, [] { return true; });
            if (! completes)
                ++stuck;
            return false; });
    return stuck;
}
