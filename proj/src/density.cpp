/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/density.hpp>
#include <ramsey/errors.hpp>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>

using namespace ramsey;

namespace
{
    auto check_limit(int n, int limit, const char * what) -> void
    {
        if (limit > 26)
            throw Error(ErrorKind::invalid_input, "brute-force limit above 26 is not supported");
        if (n > limit)
            throw Error(ErrorKind::instance_too_large, std::string(what) + " on " + std::to_string(n)
                    + " vertices exceeds the brute-force limit " + std::to_string(limit));
    }

    auto masks_of(const Graph & h, const std::vector<int> & bit_of) -> std::vector<std::uint32_t>
    {
        std::vector<std::uint32_t> result(h.size(), 0);
        for (int v = 0 ; v < h.size() ; ++v)
            for (auto w : h.neighbours(v))
                if (bit_of[w] >= 0)
                    result[v] |= (std::uint32_t{ 1 } << bit_of[w]);
        return result;
    }

    auto sorted_unique(VertexSet s) -> VertexSet
    {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }
}

auto ramsey::d2(const Graph & h) -> Rational
{
    auto v = h.size();
    auto e = h.edge_count();
    if (v >= 3 && e >= 1)
        return make_rational(e - 1, v - 2);
    return make_rational(1, 2);
}

auto ramsey::m2(const Graph & h, int limit) -> DensityReport
{
    int n = h.size();
    check_limit(n, limit, "m2");

    std::vector<int> bit_of(n);
    for (int v = 0 ; v < n ; ++v)
        bit_of[v] = v;
    auto adj = masks_of(h, bit_of);

    std::uint32_t full = (n == 32) ? ~std::uint32_t{ 0 } : ((std::uint32_t{ 1 } << n) - 1);
    std::vector<int> edges_in(std::size_t{ full } + 1, 0);

    // best so far as a fraction num/den, starting from the edgeless convention
    long long best_num = 1, best_den = 2;
    std::uint32_t best_mask = (n > 0) ? 1 : 0;
    for (std::uint32_t mask = 1 ; mask <= full && mask != 0 ; ++mask) {
        int low = std::countr_zero(mask);
        std::uint32_t rest = mask & (mask - 1);
        edges_in[mask] = edges_in[rest] + std::popcount(adj[low] & rest);
        int vs = std::popcount(mask);
        int es = edges_in[mask];
        if (vs >= 3 && es >= 1) {
            long long num = es - 1, den = vs - 2;
            if (num * best_den > best_num * den) {
                best_num = num;
                best_den = den;
                best_mask = mask;
            }
        }
    }

    DensityReport result{ make_rational(best_num, best_den), {} };
    for (int v = 0 ; v < n ; ++v)
        if (best_mask & (std::uint32_t{ 1 } << v))
            result.witness.push_back(v);
    return result;
}

auto ramsey::rooted_density(const Graph & h, const VertexSet & roots, const VertexSet & x) -> Rational
{
    if (x.empty())
        throw Error(ErrorKind::invalid_input, "rooted density needs a nonempty set");
    auto xs = sorted_unique(x);
    for (auto v : xs)
        if (std::binary_search(roots.begin(), roots.end(), v) || std::find(roots.begin(), roots.end(), v) != roots.end())
            throw Error(ErrorKind::invalid_input, "rooted density set meets the roots");
    auto value = edges_within(h, xs) + edges_between(h, xs, sorted_unique(roots));
    return make_rational(value, static_cast<long long>(xs.size()));
}

auto ramsey::spencer_density(const RootedPattern & rp, int limit) -> DensityReport
{
    const auto & h = rp.h;
    int n = h.size();
    check_limit(n, limit, "spencer density");

    std::vector<char> is_root(n, 0);
    for (auto r : rp.roots) {
        if (r < 0 || r >= n)
            throw Error(ErrorKind::invalid_input, "root out of range");
        is_root[r] = 1;
    }

    std::vector<int> bit_of(n, -1);
    VertexSet free_vertices;
    for (int v = 0 ; v < n ; ++v)
        if (! is_root[v]) {
            bit_of[v] = static_cast<int>(free_vertices.size());
            free_vertices.push_back(v);
        }
    int k = static_cast<int>(free_vertices.size());
    if (k == 0)
        throw Error(ErrorKind::invalid_input, "every vertex is a root");

    auto adj = masks_of(h, bit_of);
    std::vector<int> root_degree(k, 0);
    for (int i = 0 ; i < k ; ++i)
        for (auto w : h.neighbours(free_vertices[i]))
            root_degree[i] += is_root[w];

    std::uint32_t full = (std::uint32_t{ 1 } << k) - 1;
    std::vector<int> objective(std::size_t{ full } + 1, 0);
    long long best_num = -1, best_den = 1;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 1 ; mask <= full ; ++mask) {
        int low = std::countr_zero(mask);
        std::uint32_t rest = mask & (mask - 1);
        objective[mask] = objective[rest] + std::popcount(adj[free_vertices[low]] & rest) + root_degree[low];
        long long num = objective[mask], den = std::popcount(mask);
        if (best_num < 0 || num * best_den > best_num * den) {
            best_num = num;
            best_den = den;
            best_mask = mask;
        }
    }

    DensityReport result{ make_rational(best_num, best_den), {} };
    for (int i = 0 ; i < k ; ++i)
        if (best_mask & (std::uint32_t{ 1 } << i))
            result.witness.push_back(free_vertices[i]);
    return result;
}

auto ramsey::is_D_mu_spencer(const RootedPattern & rp, int D, const Rational & mu, int limit) -> SpencerVerdict
{
    auto report = spencer_density(rp, limit);
    SpencerVerdict verdict;
    verdict.value = report.value;
    verdict.holds = (report.value <= Rational(D) + mu);
    if (! verdict.holds)
        verdict.witness = report.witness;
    return verdict;
}

auto ramsey::rooted_density_exceeds(const Graph & h, const VertexSet & roots, const Rational & bound) -> bool
{
    using namespace boost;
    using Traits = adjacency_list_traits<vecS, vecS, directedS>;
    using FlowGraph = adjacency_list<vecS, vecS, directedS, no_property,
          property<edge_capacity_t, long long,
          property<edge_residual_capacity_t, long long,
          property<edge_reverse_t, Traits::edge_descriptor>>>>;

    int n = h.size();
    std::vector<char> is_root(n, 0);
    for (auto r : roots)
        is_root[r] = 1;

    // scale by the bound's denominator so that every capacity is integral
    long long a = numerator(bound).convert_to<long long>();
    long long b = denominator(bound).convert_to<long long>();

    std::vector<Edge> inner;
    for (auto [u, v] : h.edges())
        if (! is_root[u] && ! is_root[v])
            inner.emplace_back(u, v);

    int source = n + static_cast<int>(inner.size()), sink = source + 1;
    FlowGraph flow(sink + 1);
    auto capacity = get(edge_capacity, flow);
    auto reverse = get(edge_reverse, flow);
    auto add = [&] (int from, int to, long long cap) {
        auto e = add_edge(from, to, flow).first;
        auto r = add_edge(to, from, flow).first;
        capacity[e] = cap;
        capacity[r] = 0;
        reverse[e] = r;
        reverse[r] = e;
    };

    long long infinite = b * static_cast<long long>(inner.size() + 1) + b * n * n + a * n + 1;
    long long positive = 0;
    for (std::size_t i = 0 ; i < inner.size() ; ++i) {
        int node = n + static_cast<int>(i);
        add(source, node, b);
        positive += b;
        add(node, inner[i].first, infinite);
        add(node, inner[i].second, infinite);
    }
    for (int v = 0 ; v < n ; ++v) {
        if (is_root[v])
            continue;
        long long root_degree = 0;
        for (auto w : h.neighbours(v))
            root_degree += is_root[w];
        long long weight = b * root_degree - a;
        if (weight > 0) {
            add(source, v, weight);
            positive += weight;
        }
        else if (weight < 0)
            add(v, sink, -weight);
    }

    if (positive == 0)
        return false;
    long long cut = push_relabel_max_flow(flow, source, sink);
    return positive - cut > 0;
}

namespace
{
    // Lexicographically least violating set of the smallest size, among connected sets inside `candidates`.
    auto minimal_witness(const Graph & h, const std::vector<char> & in_roots, const Rational & bound) -> VertexSet
    {
        int n = h.size();
        long long a = numerator(bound).convert_to<long long>();
        long long b = denominator(bound).convert_to<long long>();

        std::vector<int> root_degree(n, 0);
        for (int v = 0 ; v < n ; ++v)
            for (auto w : h.neighbours(v))
                root_degree[v] += in_roots[w];

        // a vertex of a smallest witness has more than `bound` neighbours among witness and roots
        std::vector<char> candidate(n, 0);
        for (int v = 0 ; v < n ; ++v)
            candidate[v] = ! in_roots[v];
        for (bool changed = true ; changed ; ) {
            changed = false;
            for (int v = 0 ; v < n ; ++v) {
                if (! candidate[v])
                    continue;
                long long deg = 0;
                for (auto w : h.neighbours(v))
                    deg += candidate[w] || in_roots[w];
                if (b * deg <= a) {
                    candidate[v] = 0;
                    changed = true;
                }
            }
        }

        VertexSet cands;
        for (int v = 0 ; v < n ; ++v)
            if (candidate[v])
                cands.push_back(v);

        std::vector<char> in_sub(n, 0);
        VertexSet sub, best;
        long long objective = 0;

        auto violates = [&] () { return b * objective > a * static_cast<long long>(sub.size()); };

        for (int k = 1 ; k <= static_cast<int>(cands.size()) ; ++k) {
            best.clear();

            std::function<void (VertexSet, Vertex)> extend = [&] (VertexSet ext, Vertex anchor) {
                if (static_cast<int>(sub.size()) == k) {
                    if (violates()) {
                        VertexSet sorted = sub;
                        std::sort(sorted.begin(), sorted.end());
                        if (best.empty() || sorted < best)
                            best = sorted;
                    }
                    return;
                }
                while (! ext.empty()) {
                    auto w = ext.back();
                    ext.pop_back();
                    VertexSet next = ext;
                    for (auto u : h.neighbours(w)) {
                        if (! candidate[u] || u <= anchor || in_sub[u] || u == w)
                            continue;
                        bool exclusive = true;
                        for (auto s : h.neighbours(u))
                            if (in_sub[s]) {
                                exclusive = false;
                                break;
                            }
                        if (exclusive && std::find(next.begin(), next.end(), u) == next.end())
                            next.push_back(u);
                    }
                    long long gain = root_degree[w];
                    for (auto s : h.neighbours(w))
                        gain += in_sub[s];
                    sub.push_back(w);
                    in_sub[w] = 1;
                    objective += gain;
                    extend(next, anchor);
                    objective -= gain;
                    in_sub[w] = 0;
                    sub.pop_back();
                }
            };

            for (auto v : cands) {
                VertexSet ext;
                for (auto u : h.neighbours(v))
                    if (candidate[u] && u > v)
                        ext.push_back(u);
                sub = { v };
                in_sub[v] = 1;
                objective = root_degree[v];
                extend(ext, v);
                in_sub[v] = 0;
                sub.clear();
            }
            if (! best.empty())
                return best;
        }
        return {};
    }
}

auto ramsey::findroots(const OrderedGraph & og, const VertexSet & initial, const VertexSet & t, int D, const Rational & mu) -> FindRootsResult
{
    const auto & h = og.graph();
    int n = h.size();
    if (D < 0 || mu <= 0)
        throw Error(ErrorKind::invalid_input, "findroots needs D >= 0 and mu > 0");
    if (! og.is_degenerate(D))
        throw Error(ErrorKind::order_not_degenerate, "order has a vertex with more than " + std::to_string(D) + " left neighbours");

    std::vector<char> in_initial(n, 0);
    for (auto v : initial) {
        if (v < 0 || v >= n)
            throw Error(ErrorKind::invalid_input, "initial segment vertex out of range");
        in_initial[v] = 1;
    }
    auto initial_sorted = sorted_unique(initial);
    for (int i = 0 ; i < static_cast<int>(initial_sorted.size()) ; ++i)
        if (! in_initial[og.order()[i]])
            throw Error(ErrorKind::not_a_prefix, "initial set is not a prefix of the order");

    FindRootsResult result;
    std::vector<char> in_t(n, 0);
    for (auto v : t) {
        if (v < 0 || v >= n)
            throw Error(ErrorKind::invalid_input, "root vertex out of range");
        in_t[v] = 1;
    }

    Rational bound = Rational(D) + mu;
    auto current_size = [&] () { return static_cast<int>(std::count(in_t.begin(), in_t.end(), 1)); };
    result.trajectory_sizes.push_back(current_size());

    while (true) {
        std::vector<char> in_roots(n, 0);
        VertexSet roots;
        for (int v = 0 ; v < n ; ++v)
            if (in_initial[v] || in_t[v]) {
                in_roots[v] = 1;
                roots.push_back(v);
            }
        if (! rooted_density_exceeds(h, roots, bound))
            break;
        auto witness = minimal_witness(h, in_roots, bound);
        if (witness.empty())
            throw Error(ErrorKind::invariant_violated, "closure cut found a violation but no witness was enumerated");
        for (auto v : witness)
            in_t[v] = 1;
        result.witnesses.push_back(witness);
        result.trajectory_sizes.push_back(current_size());
    }

    for (int v = 0 ; v < n ; ++v)
        if (in_t[v])
            result.roots.push_back(v);
    return result;
}

auto ramsey::classify_segment(const Graph & h, const VertexSet & q) -> SegmentKind
{
    int len = static_cast<int>(q.size());
    if (len == 0)
        throw Error(ErrorKind::not_path_or_cycle, "empty segment");
    std::vector<int> position(h.size(), -1);
    for (int i = 0 ; i < len ; ++i) {
        if (q[i] < 0 || q[i] >= h.size())
            throw Error(ErrorKind::invalid_input, "segment vertex out of range");
        if (position[q[i]] != -1)
            throw Error(ErrorKind::not_path_or_cycle, "segment repeats a vertex");
        position[q[i]] = i;
    }
    for (int i = 0 ; i + 1 < len ; ++i)
        if (! h.adjacent(q[i], q[i + 1]))
            throw Error(ErrorKind::not_path_or_cycle, "consecutive segment vertices are not adjacent");

    bool closed = len >= 3 && h.adjacent(q.front(), q.back());
    for (int i = 0 ; i < len ; ++i)
        for (auto w : h.neighbours(q[i])) {
            int j = position[w];
            if (j == -1 || std::abs(i - j) == 1)
                continue;
            if (closed && std::abs(i - j) == len - 1)
                continue;
            throw Error(ErrorKind::not_induced, "segment has a chord");
        }
    return closed ? SegmentKind::cycle : SegmentKind::path;
}

auto ramsey::duplicate_along(const Graph & h, const VertexSet & q) -> Duplication
{
    Duplication result;
    result.kind = classify_segment(h, q);
    int n = h.size();
    std::vector<int> copy_index(n, -1);
    for (int i = 0 ; i < static_cast<int>(q.size()) ; ++i)
        copy_index[q[i]] = n + i;

    auto edges = h.edges();
    for (auto [u, v] : h.edges()) {
        bool u_in = copy_index[u] != -1, v_in = copy_index[v] != -1;
        if (u_in && v_in)
            edges.emplace_back(copy_index[u], copy_index[v]);
        else if (u_in)
            edges.emplace_back(copy_index[u], v);
        else if (v_in)
            edges.emplace_back(u, copy_index[v]);
    }
    result.graph = Graph::from_edges(n + static_cast<int>(q.size()), edges);
    result.copy_of = q;
    return result;
}
