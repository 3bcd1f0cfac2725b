/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/ensemble.hpp>
#include <ramsey/errors.hpp>
#include <ramsey/rng.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

using namespace ramsey;

auto ramsey::to_string(CheckMode mode) -> std::string
{
    return mode == CheckMode::exhaustive ? "exhaustive" : "sampled";
}

auto ramsey::sample_gnp(const EnsembleSpec & spec) -> Graph
{
    if (spec.N < 1)
        throw Error(ErrorKind::invalid_input, "G(N,p) needs N >= 1");
    if (! (spec.p >= 0.0 && spec.p <= 1.0))
        throw Error(ErrorKind::invalid_input, "G(N,p) needs 0 <= p <= 1");

    std::vector<Edge> edges;
    long long N = spec.N;
    if (spec.p == 0.0)
        return Graph(spec.N);
    if (spec.p == 1.0)
        return complete_graph(spec.N);

    auto rng = make_rng(spec.seed, 0);
    edges.reserve(static_cast<std::size_t>(spec.p * N * (N - 1) / 2 * 1.05) + 16);
    double log_q = std::log1p(-spec.p);
    // geometric skipping over the pairs (v, w) with w < v
    long long v = 1, w = -1;
    while (v < N) {
        double r = uniform_real(rng);
        w += 1 + static_cast<long long>(std::floor(std::log1p(-r) / log_q));
        while (w >= v && v < N) {
            w -= v;
            ++v;
        }
        if (v < N)
            edges.emplace_back(static_cast<int>(w), static_cast<int>(v));
    }
    return Graph::from_edges(spec.N, edges);
}

auto ramsey::chernoff_tail(double mean, double delta) -> double
{
    if (! (delta > 0.0 && delta < 1.5))
        throw Error(ErrorKind::invalid_input, "Chernoff bound needs 0 < delta < 3/2");
    return std::exp(-delta * delta * mean / 3.0);
}

auto ramsey::hypergeom_tail(long long set_size, long long draw, long long n, double delta) -> double
{
    if (! (delta > 0.0 && delta < 1.5))
        throw Error(ErrorKind::invalid_input, "hypergeometric bound needs 0 < delta < 3/2");
    if (n <= 0 || set_size < 0 || draw < 0 || set_size > n || draw > n)
        throw Error(ErrorKind::invalid_input, "hypergeometric bound needs 0 <= |S|, l <= n");
    return 2.0 * std::exp(-delta * delta * static_cast<double>(set_size) * static_cast<double>(draw) / (3.0 * static_cast<double>(n)));
}

namespace
{
    auto binomial(long long n, int k) -> long double
    {
        long double result = 1;
        for (int i = 0 ; i < k ; ++i)
            result = result * (n - i) / (i + 1);
        return result;
    }

    auto common_size(const Graph & g, const VertexSet & s) -> long long
    {
        return static_cast<long long>(joint_neighbourhood(g, s).size());
    }

    auto record(PropertyVerdict & verdict, const CheckOptions & options, Violation v) -> void
    {
        verdict.holds = false;
        if (verdict.violations.size() < options.max_recorded)
            verdict.violations.push_back(std::move(v));
    }

    // visits every k-subset of [0, n) in lexicographic order
    auto for_each_subset(int n, int k, const std::function<void (const VertexSet &)> & visit) -> void
    {
        VertexSet s(k);
        for (int i = 0 ; i < k ; ++i)
            s[i] = i;
        if (k > n)
            return;
        while (true) {
            visit(s);
            int i = k - 1;
            while (i >= 0 && s[i] == n - k + i)
                --i;
            if (i < 0)
                return;
            ++s[i];
            for (int j = i + 1 ; j < k ; ++j)
                s[j] = s[j - 1] + 1;
        }
    }
}

auto ramsey::check_neighbourhood_property(const Graph & g, int D, double eps, double p, const CheckOptions & options) -> PropertyVerdict
{
    if (D < 1)
        throw Error(ErrorKind::invalid_input, "neighbourhood property needs D >= 1");
    PropertyVerdict verdict;
    int N = g.size();
    auto rng = make_rng(options.seed, 0);

    for (int k = 1 ; k <= D && k <= N ; ++k) {
        double target = std::pow(p, k) * N;
        double lower = (1.0 - eps) * target, upper = (1.0 + eps) * target;
        auto check = [&] (const VertexSet & s) {
            ++verdict.tested;
            auto observed = static_cast<double>(common_size(g, s));
            if (observed < lower || observed > upper)
                record(verdict, options, Violation{ s, observed, lower, upper });
        };

        if (binomial(N, k) <= static_cast<long double>(options.exhaustive_budget))
            for_each_subset(N, k, check);
        else {
            verdict.mode = CheckMode::sampled;
            for (int i = 0 ; i < options.samples ; ++i) {
                auto s = sample_distinct(rng, N, k);
                std::sort(s.begin(), s.end());
                check(s);
            }
        }
    }
    return verdict;
}

auto ramsey::star_union_size(const Graph & g, const std::vector<VertexSet> & family) -> long long
{
    std::vector<char> hit(g.size(), 0);
    long long result = 0;
    for (auto & b : family)
        for (auto v : joint_neighbourhood(g, b))
            if (! hit[v]) {
                hit[v] = 1;
                ++result;
            }
    return result;
}

auto ramsey::check_star_property(const Graph & g, int D, double eps, double p, const CheckOptions & options) -> PropertyVerdict
{
    if (D < 1)
        throw Error(ErrorKind::invalid_input, "star property needs D >= 1");
    PropertyVerdict verdict;
    verdict.mode = CheckMode::sampled;
    int N = g.size();
    auto rng = make_rng(options.seed, 1);

    for (int i = 0 ; i < options.samples ; ++i) {
        int k = static_cast<int>(uniform_int(rng, 1, D));
        long long cap = static_cast<long long>(std::floor(eps * std::pow(p, -k)));
        cap = std::min<long long>(cap, N / k);
        if (cap < 1)
            continue;
        long long m = options.family_size > 0 ? std::min<long long>(options.family_size, cap) : uniform_int(rng, 1, cap);

        auto vertices = sample_distinct(rng, N, static_cast<int>(m * k));
        std::vector<VertexSet> family;
        for (long long j = 0 ; j < m ; ++j) {
            VertexSet b(vertices.begin() + j * k, vertices.begin() + (j + 1) * k);
            std::sort(b.begin(), b.end());
            family.push_back(std::move(b));
        }

        ++verdict.tested;
        double target = std::pow(p, k) * N * static_cast<double>(m);
        double lower = (1.0 - eps) * target, upper = (1.0 + eps) * target;
        auto observed = static_cast<double>(star_union_size(g, family));
        if (observed < lower || observed > upper) {
            VertexSet flat;
            for (auto & b : family)
                flat.insert(flat.end(), b.begin(), b.end());
            record(verdict, options, Violation{ flat, observed, lower, upper });
        }
    }
    return verdict;
}

auto ramsey::check_upper_regular(const Graph & g, double eta, double p, const CheckOptions & options) -> PropertyVerdict
{
    PropertyVerdict verdict;
    verdict.mode = CheckMode::sampled;
    int n = g.size();
    auto rng = make_rng(options.seed, 2);
    int smallest = std::max(1, static_cast<int>(std::ceil(eta * n)));
    if (2 * smallest > n)
        return verdict;

    std::vector<char> in_y(n, 0);
    for (int i = 0 ; i < options.samples ; ++i) {
        int a = static_cast<int>(uniform_int(rng, smallest, n - smallest));
        int b = static_cast<int>(uniform_int(rng, smallest, n - a));
        // half of the samples sit exactly at the threshold size
        if (i % 2 == 0) {
            a = smallest;
            b = smallest;
        }
        auto chosen = sample_distinct(rng, n, a + b);
        VertexSet x(chosen.begin(), chosen.begin() + a), y(chosen.begin() + a, chosen.end());
        for (auto v : y)
            in_y[v] = 1;
        long long e = 0;
        for (auto v : x)
            for (auto w : g.neighbours(v))
                e += in_y[w];
        for (auto v : y)
            in_y[v] = 0;

        ++verdict.tested;
        double product = p * static_cast<double>(a) * static_cast<double>(b);
        double upper = (1.0 + eta) * product;
        double lower = options.check_lower ? (1.0 - eta) * product : 0.0;
        auto observed = static_cast<double>(e);
        if (observed > upper || observed < lower) {
            std::sort(x.begin(), x.end());
            std::sort(y.begin(), y.end());
            VertexSet witness = x;
            witness.push_back(-1);  // separator between X and Y
            witness.insert(witness.end(), y.begin(), y.end());
            record(verdict, options, Violation{ witness, observed, lower, upper });
        }
    }
    return verdict;
}

auto ramsey::count_extensions(const Graph & host, const RootedPattern & rp, const PartialMap & pi, int limit) -> long long
{
    const auto & h = rp.h;
    int n = h.size();
    if (pi.pattern_size() != n)
        throw Error(ErrorKind::invalid_input, "root map has the wrong pattern size");
    std::vector<char> is_root(n, 0);
    for (auto r : rp.roots) {
        if (r < 0 || r >= n)
            throw Error(ErrorKind::invalid_input, "root out of range");
        is_root[r] = 1;
    }
    for (int x = 0 ; x < n ; ++x) {
        if (is_root[x] != pi.is_mapped(x))
            throw Error(ErrorKind::invalid_input, "root map must be defined exactly on the roots");
        if (pi.is_mapped(x) && pi[x] >= host.size())
            throw Error(ErrorKind::invalid_input, "root image out of range");
    }
    if (! pi.is_injective())
        throw Error(ErrorKind::invalid_input, "root map is not injective");

    VertexSet free_vertices;
    for (int x = 0 ; x < n ; ++x)
        if (! is_root[x])
            free_vertices.push_back(x);
    if (static_cast<int>(free_vertices.size()) > limit)
        throw Error(ErrorKind::instance_too_large, "pattern has more than " + std::to_string(limit) + " non-root vertices");

    // most-constrained-first order
    VertexSet order;
    std::vector<char> placed = is_root;
    while (order.size() < free_vertices.size()) {
        int best = -1, best_links = -1;
        for (auto x : free_vertices) {
            if (placed[x])
                continue;
            int links = 0;
            for (auto w : h.neighbours(x))
                links += placed[w];
            if (links > best_links) {
                best = x;
                best_links = links;
            }
        }
        placed[best] = 1;
        order.push_back(best);
    }

    std::vector<Vertex> image = pi.images();
    std::vector<char> used(host.size(), 0);
    for (auto v : image)
        if (v != -1)
            used[v] = 1;

    auto candidates = [&] (Vertex x) {
        VertexSet result;
        bool first = true;
        for (auto w : h.neighbours(x)) {
            if (image[w] == -1)
                continue;
            const auto & nb = host.neighbours(image[w]);
            if (first) {
                result = nb;
                first = false;
            }
            else {
                VertexSet next;
                std::set_intersection(result.begin(), result.end(), nb.begin(), nb.end(), std::back_inserter(next));
                result = std::move(next);
            }
        }
        if (first) {
            result.resize(host.size());
            for (int v = 0 ; v < host.size() ; ++v)
                result[v] = v;
        }
        return result;
    };

    std::function<long long (std::size_t)> recurse = [&] (std::size_t depth) -> long long {
        if (depth == order.size())
            return 1;
        auto x = order[depth];
        auto cands = candidates(x);
        long long total = 0;
        if (depth + 1 == order.size()) {
            for (auto v : cands)
                total += ! used[v];
            return total;
        }
        for (auto v : cands) {
            if (used[v])
                continue;
            used[v] = 1;
            image[x] = v;
            total += recurse(depth + 1);
            image[x] = -1;
            used[v] = 0;
        }
        return total;
    };
    return recurse(0);
}

auto ramsey::expected_extensions(const RootedPattern & rp, double N, double p) -> double
{
    std::vector<char> is_root(rp.h.size(), 0);
    for (auto r : rp.roots)
        is_root[r] = 1;
    long long free_count = 0, counted_edges = 0;
    for (int x = 0 ; x < rp.h.size() ; ++x)
        free_count += ! is_root[x];
    for (auto [u, v] : rp.h.edges())
        counted_edges += ! (is_root[u] && is_root[v]);
    return std::pow(N, static_cast<double>(free_count)) * std::pow(p, static_cast<double>(counted_edges));
}

auto ramsey::concentration_experiment(const RootedPattern & rp, const EnsembleSpec & spec, double eps, int trials,
        int D, const Rational & mu) -> ConcentrationReport
{
    if (static_cast<int>(rp.roots.size()) < rp.h.size() && ! is_D_mu_spencer(rp, D, mu).holds)
        throw Error(ErrorKind::invalid_input, "pattern is not (D, mu)-Spencer for the configured parameters");
    if (static_cast<int>(rp.roots.size()) > spec.N)
        throw Error(ErrorKind::invalid_input, "more roots than host vertices");

    auto host = sample_gnp(spec);
    ConcentrationReport report;
    report.expectation = expected_extensions(rp, spec.N, spec.p);
    report.min_ratio = std::numeric_limits<double>::infinity();
    report.max_ratio = -std::numeric_limits<double>::infinity();
    for (int t = 0 ; t < trials ; ++t) {
        auto rng = make_rng(derive_seed(spec.seed, 17), static_cast<std::uint64_t>(t));
        auto images = sample_distinct(rng, spec.N, static_cast<int>(rp.roots.size()));
        PartialMap pi(rp.h.size());
        for (std::size_t i = 0 ; i < rp.roots.size() ; ++i)
            pi.assign(rp.roots[i], images[i]);
        auto count = count_extensions(host, rp, pi);
        double ratio = report.expectation > 0 ? static_cast<double>(count) / report.expectation : 0.0;
        report.ratios.push_back(ratio);
        report.min_ratio = std::min(report.min_ratio, ratio);
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (ratio >= 1.0 - eps && ratio <= 1.0 + eps)
            ++report.in_window;
        ++report.trials;
    }
    report.fraction = report.trials ? static_cast<double>(report.in_window) / report.trials : 0.0;
    return report;
}
