/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/campaign.hpp>
#include <ramsey/density.hpp>
#include <ramsey/ensemble.hpp>
#include <ramsey/errors.hpp>
#include <ramsey/experiments.hpp>
#include <ramsey/hsz.hpp>
#include <ramsey/injectivize.hpp>
#include <ramsey/io.hpp>
#include <ramsey/partial_map.hpp>
#include <ramsey/pipeline.hpp>
#include <ramsey/regularity.hpp>
#include <ramsey/rng.hpp>
#include <ramsey/verify.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace ramsey;

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    auto parallel_for(int count, const std::function<void (int)> & body) -> void
    {
        std::atomic<int> next{ 0 };
        int threads = std::max(1, std::min(campaign_threads(), count));
        std::vector<std::thread> pool;
        for (int t = 0 ; t < threads ; ++t)
            pool.emplace_back([&] {
                for (int i = next++ ; i < count ; i = next++)
                    body(i);
            });
        for (auto & t : pool)
            t.join();
    }

    // ---------- independent small-graph oracles ----------

    using Mask = std::uint32_t;

    auto adjacency_masks(const Graph & g) -> std::vector<Mask>
    {
        std::vector<Mask> adj(g.size(), 0);
        for (auto [u, v] : g.edges()) {
            adj[u] |= Mask{ 1 } << v;
            adj[v] |= Mask{ 1 } << u;
        }
        return adj;
    }

    auto edges_in(const std::vector<Mask> & adj, Mask s) -> int
    {
        int twice = 0;
        for (Mask m = s ; m ; m &= m - 1)
            twice += std::popcount(adj[std::countr_zero(m)] & s);
        return twice / 2;
    }

    // maximum of (e - 1) / (v - 2) over vertex subsets, with the 1/2 conventions
    auto brute_m2(const Graph & g) -> Rational
    {
        auto adj = adjacency_masks(g);
        long long best_num = 1, best_den = 2;
        Mask full = (Mask{ 1 } << g.size()) - 1;
        for (Mask s = 1 ; s <= full && s != 0 ; ++s) {
            int v = std::popcount(s);
            if (v < 3)
                continue;
            int e = edges_in(adj, s);
            if (e == 0)
                continue;
            if (static_cast<long long>(e - 1) * best_den > best_num * (v - 2)) {
                best_num = e - 1;
                best_den = v - 2;
            }
        }
        return Rational(best_num, best_den);
    }

    auto degeneracy(const Graph & g) -> int
    {
        return degeneracy_order(g).second;
    }

    auto is_k4(const Graph & g) -> bool
    {
        return g.size() == 4 && g.edge_count() == 6;
    }

    // lemma parts on one graph; empty when all hold
    auto density_lemma_violations(const Graph & g, bool cross_check) -> std::string
    {
        if (g.size() == 0)
            return "";
        auto report = m2(g);
        auto value = report.value;
        std::ostringstream why;

        if (! report.witness.empty() && d2(induced(g, report.witness).graph) != value)
            why << "witness does not reproduce m2; ";
        if (cross_check && g.size() <= 16 && brute_m2(g) != value)
            why << "m2 " << to_string(value) << " differs from brute force " << to_string(brute_m2(g)) << "; ";

        int D = std::max(1, degeneracy(g));
        if (value > D)
            why << "(a) m2 " << to_string(value) << " > D " << D << "; ";
        if (value == D && D > 2)
            why << "(a) equality with D " << D << "; ";

        if (g.size() > 0 && is_connected(g) && g.max_degree() >= 3) {
            int Dc = g.max_degree() - 1;
            if (is_k4(g) && value != Rational(5, 2))
                why << "(b) K4 m2 " << to_string(value) << "; ";
            if (Dc == 2 && ! is_k4(g) && value > 2)
                why << "(c) m2 " << to_string(value) << " > 2; ";
            if (Dc >= 3 && value > Dc)
                why << "(d) m2 " << to_string(value) << " > " << Dc << "; ";
        }
        return why.str();
    }

    auto random_graph(Rng & rng, int n, double q) -> Graph
    {
        std::vector<Edge> edges;
        for (int a = 0 ; a < n ; ++a)
            for (int b = a + 1 ; b < n ; ++b)
                if (uniform_real(rng) < q)
                    edges.emplace_back(a, b);
        return Graph::from_edges(n, edges);
    }

    // random graph with maximum degree at most cap, by shuffled pair insertion
    auto random_capped_graph(Rng & rng, int n, int cap, double q) -> Graph
    {
        std::vector<Edge> pairs, edges;
        for (int a = 0 ; a < n ; ++a)
            for (int b = a + 1 ; b < n ; ++b)
                pairs.emplace_back(a, b);
        std::shuffle(pairs.begin(), pairs.end(), rng);
        std::vector<int> degree(n, 0);
        for (auto [a, b] : pairs)
            if (degree[a] < cap && degree[b] < cap && uniform_real(rng) < q) {
                edges.emplace_back(a, b);
                ++degree[a];
                ++degree[b];
            }
        return Graph::from_edges(n, edges);
    }

    // ---------- criteria ----------

    auto criterion_1() -> Outcome
    {
        std::ostringstream bad;
        if (m2(complete_graph(4)).value != Rational(5, 2))
            bad << "m2(K4) != 5/2; ";
        if (d2(complete_graph(2)) != Rational(1, 2))
            bad << "d2(K2) != 1/2; ";
        if (d2(Graph(5)) != Rational(1, 2) || d2(Graph(0)) != Rational(1, 2) || m2(Graph(6)).value != Rational(1, 2))
            bad << "edgeless convention; ";

        // every labelled graph on at most 7 vertices
        std::atomic<long long> checked{ 0 }, violations{ 0 };
        std::mutex lock;
        std::string first;
        for (int n = 1 ; n <= 7 ; ++n) {
            std::vector<Edge> pairs;
            for (int a = 0 ; a < n ; ++a)
                for (int b = a + 1 ; b < n ; ++b)
                    pairs.emplace_back(a, b);
            long long total = 1LL << pairs.size();
            int chunks = 64;
            parallel_for(chunks, [&] (int c) {
                for (long long m = c ; m < total ; m += chunks) {
                    std::vector<Edge> edges;
                    for (std::size_t i = 0 ; i < pairs.size() ; ++i)
                        if ((m >> i) & 1)
                            edges.push_back(pairs[i]);
                    auto why = density_lemma_violations(Graph::from_edges(n, edges), n <= 5);
                    ++checked;
                    if (! why.empty()) {
                        ++violations;
                        std::lock_guard guard(lock);
                        if (first.empty())
                            first = "n=" + std::to_string(n) + " mask=" + std::to_string(m) + ": " + why;
                    }
                }
            });
        }
        long long exhaustive = checked;

        // sampled graphs on at most 10 vertices, cross-checked against the brute-force oracle
        parallel_for(10000, [&] (int i) {
            auto rng = make_rng(0xc1, i);
            int n = static_cast<int>(uniform_int(rng, 2, 10));
            Graph g;
            switch (i % 3) {
                case 0: g = random_graph(rng, n, 0.1 + 0.8 * uniform_real(rng)); break;
                case 1: {
                    int D = static_cast<int>(uniform_int(rng, 1, 3));
                    g = generate_target(D, D + static_cast<int>(uniform_int(rng, 0, 3)), n, derive_seed(0xc1, i)).graph();
                    break;
                }
                default: {
                    int cap = static_cast<int>(uniform_int(rng, 3, 5));
                    g = random_capped_graph(rng, n, cap, 0.5 + 0.5 * uniform_real(rng));
                    break;
                }
            }
            auto why = density_lemma_violations(g, true);
            ++checked;
            if (! why.empty()) {
                ++violations;
                std::lock_guard guard(lock);
                if (first.empty())
                    first = "sample " + std::to_string(i) + ": " + why;
            }
        });

        std::ostringstream detail;
        detail << bad.str() << "exhaustive=" << exhaustive << " sampled=" << (checked - exhaustive) << " violations=" << violations;
        if (! first.empty())
            detail << " first: " << first;
        return { bad.str().empty() && violations == 0, detail.str() };
    }

    // a random induced path (closed into an induced cycle when want_cycle) with at least 3 vertices
    auto random_induced_segment(Rng & rng, const Graph & h, bool want_cycle, int max_len) -> std::optional<VertexSet>
    {
        for (int attempt = 0 ; attempt < 200 ; ++attempt) {
            VertexSet path{ static_cast<Vertex>(uniform_int(rng, 0, h.size() - 1)) };
            std::vector<char> in(h.size(), 0), blocked(h.size(), 0);
            in[path[0]] = 1;
            while (static_cast<int>(path.size()) < max_len) {
                // extensions keeping the path induced: adjacent to the end only (or also to the start, closing a cycle)
                VertexSet ext, closing;
                for (auto w : h.neighbours(path.back())) {
                    if (in[w])
                        continue;
                    int links = 0;
                    bool to_start = false;
                    for (std::size_t i = 0 ; i + 1 < path.size() ; ++i)
                        if (h.adjacent(w, path[i])) {
                            ++links;
                            to_start = to_start || i == 0;
                        }
                    if (links == 0)
                        ext.push_back(w);
                    else if (links == 1 && to_start && path.size() >= 2)
                        closing.push_back(w);
                }
                if (want_cycle && ! closing.empty()) {
                    path.push_back(closing[uniform_int(rng, 0, static_cast<long long>(closing.size()) - 1)]);
                    return path;
                }
                if (ext.empty())
                    break;
                auto w = ext[uniform_int(rng, 0, static_cast<long long>(ext.size()) - 1)];
                path.push_back(w);
                in[w] = 1;
                if (! want_cycle && path.size() >= 3 && uniform_int(rng, 0, 2) == 0)
                    return path;
            }
            if (! want_cycle && path.size() >= 3)
                return path;
        }
        return std::nullopt;
    }

    auto criterion_2() -> Outcome
    {
        std::atomic<int> checked{ 0 }, violations{ 0 }, cycles{ 0 }, paths{ 0 };
        std::mutex lock;
        std::string first;
        parallel_for(1000, [&] (int i) {
            auto rng = make_rng(0xc2, i);
            bool want_cycle = i % 2 == 0;
            while (true) {
                int n = static_cast<int>(uniform_int(rng, 4, 11));
                auto h = random_capped_graph(rng, n, static_cast<int>(uniform_int(rng, 3, 5)), 0.3 + 0.7 * uniform_real(rng));
                if (! is_connected(h) || h.max_degree() < 3)
                    continue;
                auto q = random_induced_segment(rng, h, want_cycle, 14 - n);
                if (! q || static_cast<int>(q->size()) < 3)
                    continue;
                auto dup = duplicate_along(h, *q);
                int D = h.max_degree() - 1;
                long long ell = static_cast<long long>(q->size());
                auto base = m2(h).value;
                auto plus = m2(dup.graph).value;
                Rational bound = want_cycle ? std::max(base, Rational(D)) : std::max(base, Rational(D * ell, ell - 2));
                bool kind_ok = dup.kind == (want_cycle ? SegmentKind::cycle : SegmentKind::path) && dup.graph.size() == n + ell;
                ++checked;
                ++(want_cycle ? cycles : paths);
                if (plus > bound || ! kind_ok) {
                    ++violations;
                    std::lock_guard guard(lock);
                    if (first.empty())
                        first = "sample " + std::to_string(i) + ": m2(H+)=" + to_string(plus) + " bound " + to_string(bound);
                }
                break;
            }
        });
        std::ostringstream detail;
        detail << "samples=" << checked << " (cycles " << cycles << ", paths " << paths << ") violations=" << violations;
        if (! first.empty())
            detail << " first: " << first;
        return { violations == 0 && checked == 1000, detail.str() };
    }

    // (D, mu)-Spencer by enumerating every nonempty X outside the roots
    auto brute_spencer(const Graph & h, const std::vector<char> & is_root, int D, const Rational & mu) -> bool
    {
        VertexSet free;
        for (int v = 0 ; v < h.size() ; ++v)
            if (! is_root[v])
                free.push_back(v);
        int k = static_cast<int>(free.size());
        std::vector<int> pos(h.size(), -1);
        for (int i = 0 ; i < k ; ++i)
            pos[free[i]] = i;
        std::vector<Mask> adj(k, 0);
        std::vector<int> to_roots(k, 0);
        for (int i = 0 ; i < k ; ++i)
            for (auto w : h.neighbours(free[i])) {
                if (is_root[w])
                    ++to_roots[i];
                else
                    adj[i] |= Mask{ 1 } << pos[w];
            }
        long long num = numerator(mu).convert_to<long long>(), den = denominator(mu).convert_to<long long>();
        std::vector<int> value(std::size_t{ 1 } << k, 0);
        for (Mask s = 1 ; s < (Mask{ 1 } << k) ; ++s) {
            int low = std::countr_zero(s);
            Mask rest = s & (s - 1);
            value[s] = value[rest] + to_roots[low] + std::popcount(adj[low] & rest);
            if (static_cast<long long>(value[s]) * den > (D * den + num) * std::popcount(s))
                return false;
        }
        return true;
    }

    auto criterion_3() -> Outcome
    {
        std::atomic<int> violations{ 0 }, brute{ 0 }, cut{ 0 };
        std::mutex lock;
        std::string first;
        const std::vector<Rational> mus{ Rational(1, 10), Rational(1, 5), Rational(1, 4), Rational(1, 2), Rational(1) };
        parallel_for(1000, [&] (int i) {
            auto rng = make_rng(0xc3, i);
            int D = static_cast<int>(uniform_int(rng, 1, 3));
            int n = static_cast<int>(uniform_int(rng, D + 2, 40));
            auto og = generate_target(D, D + static_cast<int>(uniform_int(rng, 1, 3)), n, derive_seed(0xc3, i));
            const auto & h = og.graph();
            int prefix = static_cast<int>(uniform_int(rng, 0, n - 1));
            VertexSet initial(og.order().begin(), og.order().begin() + prefix);
            int t_size = std::min(static_cast<int>(uniform_int(rng, 0, 3)), n - prefix);
            VertexSet t;
            for (auto j : sample_distinct(rng, n - prefix, t_size))
                t.push_back(og.order()[prefix + j]);
            auto mu = mus[uniform_int(rng, 0, static_cast<long long>(mus.size()) - 1)];

            std::ostringstream why;
            auto result = findroots(og, initial, t, D, mu);
            const auto & tp = result.roots;
            std::vector<char> in_tp(n, 0), is_root(n, 0);
            for (auto v : tp)
                in_tp[v] = 1;
            for (auto v : t)
                if (! in_tp[v])
                    why << "T not contained; ";
            Rational size_bound = Rational(D * D * t_size * t_size) / mu;
            if (Rational(static_cast<long long>(tp.size())) > size_bound)
                why << "|T'|=" << tp.size() << " > " << to_string(size_bound) << "; ";

            // every vertex of T' reaches T inside H[T']
            std::vector<char> reached(n, 0);
            VertexSet queue;
            for (auto v : t) {
                reached[v] = 1;
                queue.push_back(v);
            }
            for (std::size_t head = 0 ; head < queue.size() ; ++head)
                for (auto w : h.neighbours(queue[head]))
                    if (in_tp[w] && ! reached[w]) {
                        reached[w] = 1;
                        queue.push_back(w);
                    }
            for (auto v : tp)
                if (! reached[v])
                    why << "vertex " << v << " of T' not connected to T; ";

            for (auto v : initial)
                is_root[v] = 1;
            for (auto v : tp)
                is_root[v] = 1;
            int free_count = static_cast<int>(std::count(is_root.begin(), is_root.end(), 0));
            bool spencer;
            if (free_count <= 18) {
                spencer = brute_spencer(h, is_root, D, mu);
                ++brute;
            }
            else {
                VertexSet roots;
                for (int v = 0 ; v < n ; ++v)
                    if (is_root[v])
                        roots.push_back(v);
                spencer = ! rooted_density_exceeds(h, roots, Rational(D) + mu);
                ++cut;
            }
            if (! spencer)
                why << "(H, I u T') not Spencer; ";

            if (! why.str().empty()) {
                ++violations;
                std::lock_guard guard(lock);
                if (first.empty())
                    first = "instance " + std::to_string(i) + ": " + why.str();
            }
        });
        std::ostringstream detail;
        detail << "instances=1000 brute_force_spencer=" << brute << " cut_spencer=" << cut << " violations=" << violations;
        if (! first.empty())
            detail << " first: " << first;
        return { violations == 0, detail.str() };
    }

    auto criterion_4() -> Outcome
    {
        RootedPattern path{ path_graph(4), { 0 } };
        double N = 1000;
        // the control pattern is the rooted triangle, whose rooted density 3/2 sits above the control's p
        RootedPattern triangle{ complete_graph(3), { 0 } };
        auto run = [&] (const RootedPattern & rp, double p) {
            int in = 0, total = 0;
            for (std::uint64_t seed = 1 ; seed <= 5 ; ++seed) {
                auto report = concentration_experiment(rp, EnsembleSpec{ 1000, p, seed }, 0.25, 100, 2, Rational(1, 5));
                in += report.in_window;
                total += report.trials;
            }
            return std::make_pair(in, total);
        };
        auto [in, total] = run(path, std::pow(N, -0.5 + 0.2));
        auto [ctrl_in, ctrl_total] = run(triangle, std::pow(N, -0.5));
        double fraction = double(in) / total, control = double(ctrl_in) / ctrl_total;
        std::ostringstream detail;
        detail << "in-window " << in << "/" << total << " (" << fraction << "); control " << ctrl_in << "/" << ctrl_total << " (" << control << ")";
        return { total == 500 && fraction >= 0.95 && control < 0.8, detail.str() };
    }

    auto criterion_5() -> Outcome
    {
        std::ostringstream detail;
        bool ok = true;

        // exact identity, against a direct evaluation as well
        int identity_failures = 0;
        for (int i = 0 ; i < 1000 ; ++i) {
            auto rng = make_rng(0xc5, i);
            int k = static_cast<int>(uniform_int(rng, 1, 8));
            std::vector<long long> raw(k);
            long long sum = 0;
            for (auto & w : raw) {
                w = uniform_int(rng, 1, 50);
                sum += w;
            }
            std::vector<Rational> lambda, rho(k);
            for (auto w : raw)
                lambda.emplace_back(w, sum);
            Rational d(uniform_int(rng, -40, 40), uniform_int(rng, 1, 20));
            Rational weighted = 0;
            for (int j = 0 ; j + 1 < k ; ++j) {
                rho[j] = Rational(uniform_int(rng, -60, 60), uniform_int(rng, 1, 30));
                weighted += lambda[j] * rho[j];
            }
            rho[k - 1] = -weighted / lambda[k - 1];
            auto sides = defect_cauchy_schwarz(lambda, d, rho);
            Rational lhs = 0, rhs = d * d;
            for (int j = 0 ; j < k ; ++j) {
                lhs += lambda[j] * (d + rho[j]) * (d + rho[j]);
                rhs += lambda[j] * rho[j] * rho[j];
            }
            if (sides.lhs != sides.rhs || sides.lhs != lhs || lhs != rhs)
                ++identity_failures;
        }
        detail << "identity failures=" << identity_failures << "/1000; ";
        ok = ok && identity_failures == 0;

        // energy under random refinements
        std::atomic<int> decreases{ 0 };
        parallel_for(1000, [&] (int i) {
            auto rng = make_rng(0xc5e, i);
            int n = static_cast<int>(uniform_int(rng, 8, 60));
            int r = static_cast<int>(uniform_int(rng, 1, 3));
            auto host = random_graph(rng, n, 0.2 + 0.6 * uniform_real(rng));
            auto graphs = colour_classes(host, colour_edges(host, ColouringStrategy::random, r, derive_seed(0xc5e, i)));
            int k = static_cast<int>(uniform_int(rng, 1, 6));
            std::vector<VertexSet> blocks(k);
            for (int v = 0 ; v < n ; ++v)
                blocks[uniform_int(rng, 0, k - 1)].push_back(v);
            std::erase_if(blocks, [] (const VertexSet & b) { return b.empty(); });
            std::vector<VertexSet> finer;
            for (auto & b : blocks) {
                int pieces = static_cast<int>(uniform_int(rng, 1, 3));
                std::vector<VertexSet> split(pieces);
                for (auto v : b)
                    split[uniform_int(rng, 0, pieces - 1)].push_back(v);
                for (auto & s : split)
                    if (! s.empty())
                        finer.push_back(s);
            }
            Rational p(1, 2);
            if (energy(Partition(finer), graphs, p) < energy(Partition(blocks), graphs, p))
                ++decreases;
        });
        detail << "energy decreases=" << decreases << "/1000; ";
        ok = ok && decreases == 0;

        // strengthened regularity on planted instances: complete host, two hidden classes
        // coloured by whether a pair lies inside a class, invisible to the index partition
        Rational eps(2, 5), half = eps / 2, floor = eps * eps * eps / 16;
        struct Planted { int n, k0; std::uint64_t seed; };
        std::vector<Planted> instances;
        for (std::uint64_t seed = 1 ; seed <= 4 ; ++seed) {
            instances.push_back({ 128, 2, seed });
            instances.push_back({ 256, 4, seed });
        }
        std::atomic<int> srl_failures{ 0 };
        std::mutex lock;
        std::string srl_first;
        std::vector<std::string> traces(instances.size());
        parallel_for(static_cast<int>(instances.size()), [&] (int i) {
            auto [n, k0, seed] = instances[i];
            auto rng = make_rng(seed, 0x706c);
            auto perm = sample_distinct(rng, n, n);
            std::vector<int> cls(n);
            for (int j = 0 ; j < n ; ++j)
                cls[perm[j]] = 2 * j / n;
            std::vector<Edge> inside, across;
            for (int a = 0 ; a < n ; ++a)
                for (int b = a + 1 ; b < n ; ++b)
                    (cls[a] == cls[b] ? inside : across).emplace_back(a, b);
            std::vector<Graph> graphs{ Graph::from_edges(n, inside), Graph::from_edges(n, across) };
            SsrlOptions o;
            o.srl.assess.seed = seed;
            o.srl.assess.refine_rounds = 2;
            std::string why;
            try {
                auto decomp = strengthened_srl(graphs, eps, [half] (int) { return half; }, k0, Rational(1), o);
                std::ostringstream t;
                for (auto & e : decomp.energy_trace)
                    t << to_double(e) << " ";
                traces[i] = t.str();
                if (decomp.energy_trace.size() < 2)
                    why = "no refinement iteration";
                for (std::size_t j = 1 ; j < decomp.energy_trace.size() ; ++j)
                    if (decomp.energy_trace[j] - decomp.energy_trace[j - 1] < floor)
                        why = "gain below eps^3/16";
                if (! decomp.rl4_holds)
                    why = "did not terminate with the drift condition";
            }
            catch (const Error & e) {
                why = e.what();
            }
            if (! why.empty()) {
                ++srl_failures;
                std::lock_guard guard(lock);
                if (srl_first.empty())
                    srl_first = why;
            }
        });
        detail << "planted SRL failures=" << srl_failures << "/" << instances.size() << " (trace of first: " << traces[0] << ")";
        if (! srl_first.empty())
            detail << " first: " << srl_first;
        ok = ok && srl_failures == 0;
        return { ok, detail.str() };
    }

    auto criterion_6() -> Outcome
    {
        const int part = 26;
        Rational eps(2, 3), p(1, 5);
        auto triangle = complete_graph(3);
        std::atomic<int> good{ 0 }, regular{ 0 }, window{ 0 };
        std::vector<std::string> rows(20);
        parallel_for(20, [&] (int i) {
            std::uint64_t seed = i + 1;
            auto g = sample_gnp(EnsembleSpec{ 900, 0.2, seed });
            std::vector<VertexSet> parts(3);
            for (int v = 0 ; v < 3 * part ; ++v)
                parts[v / part].push_back(v);
            AssessOptions o;
            o.mode = CheckMode::exhaustive;
            o.exhaustive_limit = part;
            bool all_regular = true;
            for (auto [a, b] : std::vector<std::pair<int, int>>{ { 0, 1 }, { 0, 2 }, { 1, 2 } })
                all_regular = all_regular && assess_pair(g, parts[a], parts[b], eps, p, o).regular;
            long long count = count_partite_embeddings(g, triangle, parts);
            double predicted = predicted_partite_count(g, triangle, parts, p);
            bool in = std::abs(double(count) - predicted) <= 0.25 * predicted;
            regular += all_regular;
            window += in;
            good += all_regular && in;
            std::ostringstream row;
            row << count << "/" << std::lround(predicted);
            rows[i] = row.str();
        });
        std::ostringstream detail;
        detail << "seeds with regular pairs and count in window: " << good << "/20 (regular " << regular << ", in window " << window
            << "); count/predicted:";
        for (auto & r : rows)
            detail << " " << r;
        return { good >= 18, detail.str() };
    }

    // classes equitable, covering, and pairwise more than ell apart
    auto independent_partition_check(const Graph & f, const std::vector<VertexSet> & classes, int ell) -> std::string
    {
        int n = f.size();
        std::vector<int> owner(n, -1);
        std::size_t lo = n, hi = 0;
        for (int c = 0 ; c < static_cast<int>(classes.size()) ; ++c) {
            lo = std::min(lo, classes[c].size());
            hi = std::max(hi, classes[c].size());
            for (auto v : classes[c]) {
                if (v < 0 || v >= n || owner[v] != -1)
                    return "vertex repeated or out of range";
                owner[v] = c;
            }
        }
        if (std::count(owner.begin(), owner.end(), -1))
            return "vertex uncovered";
        if (! classes.empty() && hi - lo > 1)
            return "not equitable";
        for (int s = 0 ; s < n ; ++s) {
            std::vector<int> dist(n, -1);
            dist[s] = 0;
            VertexSet queue{ s };
            for (std::size_t head = 0 ; head < queue.size() ; ++head) {
                auto a = queue[head];
                if (dist[a] == ell)
                    continue;
                for (auto b : f.neighbours(a))
                    if (dist[b] == -1) {
                        dist[b] = dist[a] + 1;
                        queue.push_back(b);
                        if (owner[b] == owner[s])
                            return "vertices " + std::to_string(s) + " and " + std::to_string(b) + " share a class within distance " + std::to_string(ell);
                    }
            }
        }
        return "";
    }

    auto criterion_7() -> Outcome
    {
        std::atomic<int> passed{ 0 }, library_disagrees{ 0 };
        std::mutex lock;
        std::string first;
        parallel_for(200, [&] (int i) {
            auto rng = make_rng(0xc7, i);
            int n = static_cast<int>(uniform_int(rng, 1, 60));
            int cap = static_cast<int>(uniform_int(rng, 1, 3));
            int ell = static_cast<int>(uniform_int(rng, 1, 2));
            auto f = random_capped_graph(rng, n, cap, 0.3 + 0.7 * uniform_real(rng));
            std::string why;
            try {
                auto classes = hajnal_szemeredi_partition_for_degree(f, cap, ell);
                why = independent_partition_check(f, classes, ell);
                if (verify_distance_partition(f, classes, ell) != why.empty())
                    ++library_disagrees;
            }
            catch (const Error & e) {
                why = e.what();
            }
            if (why.empty())
                ++passed;
            else {
                std::lock_guard guard(lock);
                if (first.empty())
                    first = "graph " + std::to_string(i) + ": " + why;
            }
        });
        std::ostringstream detail;
        detail << "passed " << passed << "/200; library verifier disagreements " << library_disagrees;
        if (! first.empty())
            detail << " first: " << first;
        return { passed == 200 && library_disagrees == 0, detail.str() };
    }

    auto scratch_dir(const std::string & name) -> std::filesystem::path
    {
        auto dir = std::filesystem::temp_directory_path() / ("ramsey_acceptance_" + name);
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir);
        return dir;
    }

    auto criterion_8() -> Outcome
    {
        ExperimentConfig config;
        config.host = EnsembleSpec{ 4000, 0.15, 0 };
        config.target = TargetSpec{ TargetKind::degenerate, 2, 4, 50 };
        config.strategy = ColouringStrategy::random;
        config.r = 2;
        config.cp = ConstantsPack{};
        config.mode = EmbedMode::degenerate;
        config.trials = 20;
        config.master_seed = 8;
        config.output = (scratch_dir("c8") / "results.jsonl").string();
        auto result = run_campaign(config);

        double slowest = 0;
        for (auto & r : result.records) {
            double total = 0;
            for (auto & [stage, seconds] : r.timings)
                total += seconds;
            slowest = std::max(slowest, total);
        }
        auto verdict = verify_result_file(config.output);
        auto & a = result.aggregate;
        std::ostringstream detail;
        detail << "success " << a.successes << "/" << a.trials << " (95% CI " << a.ci_low << ".." << a.ci_high << "); verifier "
            << verdict.passed << "/" << verdict.checked << (verdict.ok() ? "" : " with problems") << "; slowest trial " << slowest << "s";
        for (auto & [stage, count] : a.failures_by_stage)
            detail << "; " << stage << " failures " << count;
        return { a.trials == 20 && a.successes >= 18 && verdict.ok() && verdict.passed == a.successes && slowest < 300, detail.str() };
    }

    auto criterion_9() -> Outcome
    {
        ExperimentConfig config;
        config.host = EnsembleSpec{ 4000, 0.2, 0 };
        config.target = TargetSpec{ TargetKind::planted, 3, 3, 0, 20, 4 };
        config.r = 2;
        config.cp = ConstantsPack{};
        config.cp.D = 3;
        config.cp.Delta = 3;
        config.cp.k0 = 6;
        config.cp.h1 = 4;
        config.mode = EmbedMode::maxdegree;
        config.trials = 10;
        config.master_seed = 9;

        std::vector<std::string> rows(10);
        std::atomic<int> successes{ 0 }, k4_branch{ 0 }, segment_branch{ 0 };
        parallel_for(10, [&] (int i) {
            auto instance = make_instance(config, i);
            EmbedOptions options;
            options.cp = config.cp;
            options.mode = config.mode;
            options.seed = derive_seed(instance.seed, 4);
            auto report = embed_monochromatic(instance.target.graph(), instance.host, instance.colouring, options);
            std::ostringstream row;
            bool ok = report.success;
            if (ok) {
                auto v = verify_embedding(instance.host.size(), instance.colouring, instance.target.graph(), report.embedding, report.colour);
                if (! v.ok) {
                    ok = false;
                    row << "verifier: " << v.message;
                }
            }
            else
                row << report.failure_stage << ": " << report.failure_message;

            // components on pairwise disjoint images, with the expected branches
            bool saw_k4 = false, saw_segment = false;
            std::vector<char> used(instance.host.size(), 0);
            std::vector<Vertex> image(instance.target.size(), -1);
            for (auto [x, v] : report.embedding)
                image[x] = v;
            for (auto & c : report.components) {
                saw_k4 = saw_k4 || (c.branch == "k4" && c.success);
                saw_segment = saw_segment || (c.branch == "segment" && c.success && ! c.segment.empty());
                if (ok)
                    for (auto x : c.vertices) {
                        if (used[image[x]])
                            ok = false;
                        used[image[x]] = 1;
                    }
            }
            if (ok && ! (saw_k4 && saw_segment)) {
                ok = false;
                row << "branches not exercised";
            }
            k4_branch += saw_k4;
            segment_branch += saw_segment;
            successes += ok;
            rows[i] = ok ? "ok" : row.str();
        });
        std::ostringstream detail;
        detail << "success " << successes << "/10; k4 branch " << k4_branch << "; segment branch " << segment_branch;
        for (int i = 0 ; i < 10 ; ++i)
            if (rows[i] != "ok")
                detail << "; trial " << i << " " << rows[i];
        return { successes >= 8, detail.str() };
    }

    auto criterion_10() -> Outcome
    {
        const int N = 6000, n = 6, D = 2, runs = 100, hosts = 5;
        const double p = 0.3;
        std::atomic<int> star_ok{ 0 }, injective{ 0 }, counted{ 0 }, occupancy_over{ 0 };
        std::mutex lock;
        std::string first;
        for (int hidx = 0 ; hidx < hosts ; ++hidx) {
            auto host = sample_gnp(EnsembleSpec{ N, p, derive_seed(0xca, hidx) });
            auto colouring = colour_edges(host, ColouringStrategy::random, 2, derive_seed(0xcb, hidx));
            auto chi = colour_classes(host, colouring)[0];
            CheckOptions o;
            o.seed = derive_seed(0xcc, hidx);
            auto star = check_star_property(chi, D, 0.5, p / 2, o);
            if (! star.holds)
                continue;
            ++star_ok;
            parallel_for(runs / hosts, [&] (int j) {
                int run = hidx * (runs / hosts) + j;
                auto f = generate_target(D, 4, n, derive_seed(0xcd, run));
                auto oracle = [&] (const std::vector<Vertex> & images, Vertex x) {
                    VertexSet mapped;
                    for (auto w : f.left_neighbours(x))
                        mapped.push_back(images[w]);
                    StepOracle step;
                    step.superset = mapped.empty() ? [&] { VertexSet all(N); std::iota(all.begin(), all.end(), 0); return all; }()
                        : joint_neighbourhood(chi, mapped);
                    return step;
                };
                CnParams params;
                params.D = D;
                params.Delta = 4;
                params.p = p / 2;
                params.seed = derive_seed(0xce, run);
                auto result = cn_injectivize(N, f, oracle, params);
                ++counted;
                bool ok = result.success;
                if (ok) {
                    std::vector<char> seen(N, 0);
                    for (auto v : result.images) {
                        if (v < 0 || seen[v])
                            ok = false;
                        else
                            seen[v] = 1;
                    }
                    for (auto [a, b] : f.graph().edges())
                        ok = ok && chi.adjacent(result.images[a], result.images[b]);
                }
                for (std::size_t l = 0 ; l < result.occupancy.size() && l < result.schedule.size() ; ++l)
                    if (double(result.occupancy[l]) > result.schedule[l])
                        ++occupancy_over;
                if (ok)
                    ++injective;
                else {
                    std::lock_guard guard(lock);
                    if (first.empty())
                        first = "run " + std::to_string(run) + ": " + result.reason;
                }
            });
        }
        std::ostringstream detail;
        detail << "hosts passing star check " << star_ok << "/" << hosts << "; injective homomorphisms " << injective << "/" << counted
            << "; occupancy over schedule " << occupancy_over;
        if (! first.empty())
            detail << "; first failure " << first;
        return { counted >= 95 && injective >= 0.95 * counted && occupancy_over == 0, detail.str() };
    }

    auto brute_extensions(const Graph & host, const RootedPattern & rp, const std::vector<Vertex> & root_images) -> long long
    {
        int k = rp.h.size();
        std::vector<Vertex> image(k, -1);
        std::vector<char> is_root(k, 0), used(host.size(), 0);
        for (std::size_t i = 0 ; i < rp.roots.size() ; ++i) {
            image[rp.roots[i]] = root_images[i];
            is_root[rp.roots[i]] = 1;
            used[root_images[i]] = 1;
        }
        VertexSet free;
        for (int x = 0 ; x < k ; ++x)
            if (! is_root[x])
                free.push_back(x);
        long long count = 0;
        std::function<void (std::size_t)> go = [&] (std::size_t pos) {
            if (pos == free.size()) {
                for (auto [a, b] : rp.h.edges())
                    if (! (is_root[a] && is_root[b]) && ! host.adjacent(image[a], image[b]))
                        return;
                ++count;
                return;
            }
            for (Vertex v = 0 ; v < host.size() ; ++v)
                if (! used[v]) {
                    used[v] = 1;
                    image[free[pos]] = v;
                    go(pos + 1);
                    used[v] = 0;
                }
        };
        go(0);
        return count;
    }

    auto brute_partite(const Graph & host, const Graph & pattern, const std::vector<VertexSet> & parts) -> long long
    {
        int k = pattern.size();
        std::vector<Vertex> image(k, -1);
        std::vector<char> used(host.size(), 0);
        long long count = 0;
        std::function<void (int)> go = [&] (int x) {
            if (x == k) {
                for (auto [a, b] : pattern.edges())
                    if (! host.adjacent(image[a], image[b]))
                        return;
                ++count;
                return;
            }
            for (auto v : parts[x])
                if (! used[v]) {
                    used[v] = 1;
                    image[x] = v;
                    go(x + 1);
                    used[v] = 0;
                }
        };
        go(0);
        return count;
    }

    auto criterion_11() -> Outcome
    {
        std::atomic<int> ext_bad{ 0 }, part_bad{ 0 };
        std::mutex lock;
        std::string first;
        parallel_for(1000, [&] (int i) {
            auto rng = make_rng(0xd1, i);
            int m = static_cast<int>(uniform_int(rng, 4, 9));
            auto host = random_graph(rng, m, 0.3 + 0.6 * uniform_real(rng));
            int k = static_cast<int>(uniform_int(rng, 2, std::min(5, m)));
            auto h = random_graph(rng, k, 0.3 + 0.7 * uniform_real(rng));
            int roots = static_cast<int>(uniform_int(rng, 0, k - 1));
            auto picks = sample_distinct(rng, k, roots);
            RootedPattern rp{ h, VertexSet(picks.begin(), picks.end()) };
            auto images = sample_distinct(rng, m, roots);
            std::vector<std::pair<Vertex, Vertex>> pairs;
            for (int j = 0 ; j < roots ; ++j)
                pairs.emplace_back(rp.roots[j], images[j]);
            long long lib = count_extensions(host, rp, PartialMap::from_pairs(k, pairs));
            long long brute = brute_extensions(host, rp, VertexSet(images.begin(), images.end()));
            if (lib != brute) {
                ++ext_bad;
                std::lock_guard guard(lock);
                if (first.empty())
                    first = "extensions instance " + std::to_string(i) + ": " + std::to_string(lib) + " vs " + std::to_string(brute);
            }
        });
        parallel_for(1000, [&] (int i) {
            auto rng = make_rng(0xd2, i);
            int m = static_cast<int>(uniform_int(rng, 5, 14));
            auto host = random_graph(rng, m, 0.3 + 0.6 * uniform_real(rng));
            int k = static_cast<int>(uniform_int(rng, 1, 5));
            auto pattern = random_graph(rng, k, 0.3 + 0.7 * uniform_real(rng));
            std::vector<VertexSet> parts(k);
            for (auto & part : parts) {
                // overlapping parts exercise injectivity
                for (int v = 0 ; v < m ; ++v)
                    if (uniform_real(rng) < 0.45)
                        part.push_back(v);
            }
            long long lib = count_partite_embeddings(host, pattern, parts);
            long long brute = brute_partite(host, pattern, parts);
            if (lib != brute) {
                ++part_bad;
                std::lock_guard guard(lock);
                if (first.empty())
                    first = "partite instance " + std::to_string(i) + ": " + std::to_string(lib) + " vs " + std::to_string(brute);
            }
        });
        std::ostringstream detail;
        detail << "count_extensions discrepancies " << ext_bad << "/1000; count_partite_embeddings discrepancies " << part_bad << "/1000";
        if (! first.empty())
            detail << "; first " << first;
        return { ext_bad == 0 && part_bad == 0, detail.str() };
    }
}

auto main(int argc, char * argv[]) -> int
{
    std::vector<std::function<Outcome ()>> criteria{ criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
        criterion_7, criterion_8, criterion_9, criterion_10, criterion_11 };

    std::vector<int> selected;
    for (int i = 1 ; i < argc ; ++i) {
        std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc)
            selected.push_back(std::stoi(argv[++i]));
        else {
            std::cerr << "usage: acceptance [--only N]...\n";
            return 2;
        }
    }
    if (selected.empty())
        for (int i = 1 ; i <= static_cast<int>(criteria.size()) ; ++i)
            selected.push_back(i);

    bool all = true;
    for (auto c : selected) {
        if (c < 1 || c > static_cast<int>(criteria.size())) {
            std::cerr << "no criterion " << c << '\n';
            return 2;
        }
        auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[c - 1]();
        }
        catch (const std::exception & e) {
            outcome = { false, std::string("exception: ") + e.what() };
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << "CRITERION " << c << " " << (outcome.pass ? "PASS" : "FAIL") << " " << outcome.detail
            << " [" << std::lround(seconds) << "s]" << std::endl;
        all = all && outcome.pass;
    }
    return all ? 0 : 1;
}
