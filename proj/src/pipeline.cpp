/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/density.hpp>
#include <ramsey/errors.hpp>
#include <ramsey/hsz.hpp>
#include <ramsey/pipeline.hpp>
#include <ramsey/regularity.hpp>

#include <algorithm>
#include <chrono>
#include <memory>
#include <cmath>
#include <numeric>

using namespace ramsey;

auto ramsey::to_string(EmbedMode mode) -> std::string
{
    return mode == EmbedMode::degenerate ? "degenerate" : "maxdegree";
}

auto ramsey::parse_embed_mode(const std::string & text) -> EmbedMode
{
    if (text == "degenerate")
        return EmbedMode::degenerate;
    if (text == "maxdegree")
        return EmbedMode::maxdegree;
    throw Error(ErrorKind::invalid_input, "unknown embedding mode '" + text + "'");
}

auto ramsey::segment_length(const Rational & mu) -> int
{
    if (mu <= 0)
        throw Error(ErrorKind::invalid_input, "mu must be positive");
    double half = to_double(Rational(1) / mu);
    return std::max(4, 2 * static_cast<int>(std::lround(half)));
}

auto ramsey::shortest_cycle(const Graph & g) -> VertexSet
{
    VertexSet best;
    int n = g.size();
    std::vector<int> dist(n), parent(n);
    for (auto [u, w] : g.edges()) {
        // shortest u-w path avoiding the edge uw
        std::fill(dist.begin(), dist.end(), -1);
        dist[u] = 0;
        parent[u] = -1;
        VertexSet queue{ u };
        for (std::size_t head = 0 ; head < queue.size() && dist[w] == -1 ; ++head) {
            auto a = queue[head];
            if (! best.empty() && dist[a] + 2 >= static_cast<int>(best.size()))
                break;
            for (auto b : g.neighbours(a)) {
                if (dist[b] != -1 || (a == u && b == w))
                    continue;
                dist[b] = dist[a] + 1;
                parent[b] = a;
                queue.push_back(b);
            }
        }
        if (dist[w] == -1 || (! best.empty() && dist[w] + 1 >= static_cast<int>(best.size())))
            continue;
        VertexSet cycle;
        for (Vertex v = w ; v != -1 ; v = parent[v])
            cycle.push_back(v);
        std::reverse(cycle.begin(), cycle.end());
        best = cycle;
    }
    return best;
}

auto ramsey::find_k4(const Graph & g, const std::vector<char> & forbidden) -> std::optional<VertexSet>
{
    auto ok = [&] (Vertex v) { return forbidden.empty() || ! forbidden[v]; };
    for (Vertex a = 0 ; a < g.size() ; ++a) {
        if (! ok(a))
            continue;
        for (auto b : g.neighbours(a)) {
            if (b <= a || ! ok(b))
                continue;
            VertexSet common;
            std::set_intersection(g.neighbours(a).begin(), g.neighbours(a).end(), g.neighbours(b).begin(), g.neighbours(b).end(),
                    std::back_inserter(common));
            for (std::size_t i = 0 ; i < common.size() ; ++i) {
                if (common[i] <= b || ! ok(common[i]))
                    continue;
                for (std::size_t j = i + 1 ; j < common.size() ; ++j)
                    if (ok(common[j]) && g.adjacent(common[i], common[j]))
                        return VertexSet{ a, b, common[i], common[j] };
            }
        }
    }
    return std::nullopt;
}

namespace
{
    using Clock = std::chrono::steady_clock;

    struct StageFailure
    {
        std::string stage, message;
    };

    template <typename Fn_>
    auto in_stage(const std::string & stage, EmbedReport & report, Fn_ && fn) -> decltype(fn())
    {
        auto start = Clock::now();
        try {
            if constexpr (std::is_void_v<decltype(fn())>) {
                fn();
                report.timings.emplace_back(stage, std::chrono::duration<double>(Clock::now() - start).count());
            }
            else {
                auto result = fn();
                report.timings.emplace_back(stage, std::chrono::duration<double>(Clock::now() - start).count());
                return result;
            }
        }
        catch (const Error & e) {
            report.timings.emplace_back(stage, std::chrono::duration<double>(Clock::now() - start).count());
            throw StageFailure{ stage, e.what() };
        }
    }

    struct PieceResult
    {
        bool success = false;
        std::vector<Vertex> images;             // piece labels
        std::string stage, message;
        CnResult cn;
    };

    auto merge(Trajectory & into, const Trajectory & from) -> void
    {
        into.steps.insert(into.steps.end(), from.steps.begin(), from.steps.end());
        into.failures.insert(into.failures.end(), from.failures.begin(), from.failures.end());
        into.ind1_failures += from.ind1_failures;
        into.ind2_checks += from.ind2_checks;
        into.ind2_failures += from.ind2_failures;
        into.c_bound_violations += from.c_bound_violations;
        into.boundary_crossoffs += from.boundary_crossoffs;
        into.truncated_counts += from.truncated_counts;
        into.restarts += from.restarts;
    }

    // Embeds a connected (or whole) piece with the lookahead growth and injective choice; a nonempty
    // segment goes last and is completed inside `free_region`.
    auto embed_piece(const Graph & piece, int D, const VertexSet & segment, const HostView & host, const ConstantsPack & cp,
            const EmbedOptions & options, std::uint64_t seed, const VertexBits * free_region, const std::vector<char> & taken,
            EmbedReport & report) -> PieceResult
    {
        PieceResult result;
        int n = piece.size();

        std::vector<char> in_segment(n, 0);
        for (auto q : segment)
            in_segment[q] = 1;
        VertexSet rest;
        for (int v = 0 ; v < n ; ++v)
            if (! in_segment[v])
                rest.push_back(v);

        auto prepared = in_stage("order", report, [&] {
            auto sub = induced(piece, rest);
            auto [og, degeneracy] = degeneracy_order(sub.graph);
            if (degeneracy > D)
                throw Error(ErrorKind::invalid_input, "target has degeneracy " + std::to_string(degeneracy) + " above " + std::to_string(D));
            VertexSet order;
            for (auto v : og.order())
                order.push_back(sub.to_parent[v]);
            order.insert(order.end(), segment.begin(), segment.end());
            return relabel_by_order(OrderedGraph(piece, order));
        });

        int m = static_cast<int>(rest.size());
        EmbedTarget target;
        target.f = prepared.graph;
        target.phi.assign(n, -1);
        for (int i = m ; i < n ; ++i)
            target.segment.push_back(i);

        in_stage("partition", report, [&] {
            VertexSet front(m);
            std::iota(front.begin(), front.end(), 0);
            auto classes = hajnal_szemeredi_partition(induced(target.f.graph(), front).graph, cp.hsz_distance, host.part_count(),
                    derive_seed(seed, 1));
            for (int c = 0 ; c < static_cast<int>(classes.size()) ; ++c)
                for (auto v : classes[c])
                    target.phi[v] = c;
        });

        ConstantsPack local = cp;
        local.D = D;
        std::unique_ptr<Grower> grower;

        CnParams params;
        params.rho = cp.rho;
        params.d = cp.d;
        params.D = D;
        params.Delta = cp.Delta;
        params.p = host.p();
        params.policy = options.policy;

        StepRecord pending;
        auto oracle = [&] (const std::vector<Vertex> &, Vertex x) -> StepOracle {
            pending = StepRecord{};
            pending.x = x;
            StepOracle step;
            if (options.policy == ChoicePolicy::lookahead)
                step.score = [&, x] (Vertex v) { return lookahead_score(host, target, grower->images(), x, v); };
            if (cp.audit) {
                auto [w, sizes] = grower->full_cross_off(x);
                pending.w_prime = static_cast<long long>(grower->candidates(x).size());
                pending.c_sizes = sizes;
                std::erase_if(w, [&] (Vertex v) { return ! taken.empty() && taken[v]; });
                step.superset = w;
                return step;
            }
            step.superset = grower->candidates(x);
            pending.w_prime = static_cast<long long>(step.superset.size());
            step.accept = [&, x] (Vertex v) {
                if (! taken.empty() && taken[v])
                    return false;
                ++pending.examined;
                if (grower->crossing_context(x, v)) {
                    ++pending.crossed;
                    return false;
                }
                return true;
            };
            return step;
        };
        auto on_commit = [&] (Vertex x, Vertex v) {
            grower->commit(x, v);
            pending.chosen = v;
            grower->record(pending);
        };

        std::vector<char> skip(n, 0);
        for (int i = m ; i < n ; ++i)
            skip[i] = 1;
        for (int attempt = 0 ; ; ++attempt) {
            grower = in_stage("lookahead", report, [&] { return std::make_unique<Grower>(host, target, local, free_region); });
            params.seed = attempt == 0 ? derive_seed(seed, 2) : derive_seed(derive_seed(seed, 2), attempt);
            result.cn = in_stage("grow", report, [&] { return cn_injectivize(host.size(), target.f, oracle, params, on_commit, skip); });
            if (result.cn.success)
                break;
            grower->record(pending);
            grower->trajectory().failures.push_back(result.cn.reason);
            if (attempt + 1 < cp.grow_attempts) {
                ++grower->trajectory().restarts;
                merge(report.trajectory, grower->trajectory());
                continue;
            }
            merge(report.trajectory, grower->trajectory());
            result.stage = result.cn.reason.find("occupancy") != std::string::npos ? "injectivize" : "grow";
            result.message = result.cn.reason;
            return result;
        }

        std::vector<Vertex> images = result.cn.images;
        if (! segment.empty()) {
            bool ok = in_stage("completion", report, [&] {
                LookaheadContext seg;
                seg.targets = target.segment;
                seg.segment = true;
                for (auto q : target.segment)
                    for (auto w : target.f.graph().neighbours(q))
                        if (w < m)
                            seg.decisive.push_back(w);
                VertexSet avoid, completion;
                for (auto v : images)
                    if (v != -1)
                        avoid.push_back(v);
                if (! is_completable(host, target, seg, images, *free_region, avoid, &completion))
                    return false;
                for (int i = 0 ; i < static_cast<int>(target.segment.size()) ; ++i)
                    images[target.segment[i]] = completion[i];
                return true;
            });
            if (! ok) {
                merge(report.trajectory, grower->trajectory());
                result.stage = "completion";
                result.message = "segment has no completion in the free region";
                return result;
            }
        }

        merge(report.trajectory, grower->trajectory());
        result.images.assign(n, -1);
        for (int v = 0 ; v < n ; ++v)
            result.images[prepared.to_original[v]] = images[v];
        result.success = true;
        return result;
    }

    auto selection_options(const ConstantsPack & cp, int colour) -> SelectOptions
    {
        SelectOptions o;
        o.tie_tolerance = cp.tie_tolerance;
        o.fine_density_floor = cp.fine_density_floor;
        o.trim_fraction = cp.trim_fraction;
        o.keep_half = cp.keep_half;
        o.colour = colour;
        return o;
    }

    auto is_regular_graph(const Graph & g, int degree) -> bool
    {
        for (int v = 0 ; v < g.size() ; ++v)
            if (g.degree(v) != degree)
                return false;
        return true;
    }
}

auto ramsey::embed_monochromatic(const Graph & f, const Graph & gamma, const EdgeColouring & colouring, const EmbedOptions & options) -> EmbedReport
{
    EmbedReport report;
    const auto & cp = options.cp;
    int n = f.size(), N = gamma.size();
    std::vector<Vertex> images(n, -1);

    try {
        auto graphs = in_stage("input", report, [&] {
            validate_constants(cp);
            if (n > N)
                throw Error(ErrorKind::invalid_input, "target larger than host");
            if (colouring.colours != cp.r)
                throw Error(ErrorKind::invalid_input, "colouring uses " + std::to_string(colouring.colours)
                        + " colours but the constants say " + std::to_string(cp.r));
            return colour_classes(gamma, colouring);
        });

        if (f.edge_count() == 0) {
            report.colour = 0;
            for (int v = 0 ; v < n ; ++v)
                images[v] = v;
        }
        else {
            Rational p(2 * gamma.edge_count(), static_cast<long long>(N) * (N - 1));
            int h1 = small_int(cp.h1, "h1");

            auto decomp = in_stage("regularity", report, [&] {
                SsrlOptions o;
                o.srl.assess.samples = cp.srl_samples;
                o.srl.assess.seed = derive_seed(options.seed, 11);
                o.max_iterations = cp.srl_iterations;
                Rational half = cp.eps / 2;
                return strengthened_srl(graphs, cp.eps, [half] (int) { return half; }, cp.k0, p, o);
            });
            report.energy_trace = decomp.energy_trace;

            auto select = [&] (const VertexSet & z, int colour) {
                return in_stage("selection", report, [&] {
                    return select_colour_and_parts(decomp, graphs, cp.r, h1, z, cp.d, p, selection_options(cp, colour));
                });
            };

            auto record_selection = [&] (const Selection & s) {
                report.colour = s.colour;
                report.K = s.K;
                report.part_sizes.clear();
                for (auto & part : s.parts)
                    report.part_sizes.push_back(static_cast<long long>(part.size()));
            };

            if (options.mode == EmbedMode::degenerate) {
                auto s = select({}, -1);
                record_selection(s);
                HostView host(gamma, graphs[s.colour], s.parts, to_double(p));
                ComponentReport comp;
                comp.vertices.resize(n);
                std::iota(comp.vertices.begin(), comp.vertices.end(), 0);
                comp.branch = "degenerate";
                auto piece = embed_piece(f, cp.D, {}, host, cp, options, derive_seed(options.seed, 20), nullptr, {}, report);
                comp.success = piece.success;
                comp.occupancy = piece.cn.occupancy;
                comp.schedule = piece.cn.schedule;
                report.components.push_back(comp);
                if (! piece.success)
                    throw StageFailure{ piece.stage, piece.message };
                images = piece.images;
            }
            else {
                if (f.max_degree() > cp.Delta)
                    throw StageFailure{ "input", "target exceeds the maximum degree " + std::to_string(cp.Delta) };
                std::vector<char> z_flags(N, 0);
                VertexSet z;
                int colour = -1;
                auto components = connected_components(f);
                for (std::size_t ci = 0 ; ci < components.size() ; ++ci) {
                    const auto & vertices = components[ci];
                    auto sub = induced(f, vertices);
                    ComponentReport comp;
                    comp.vertices = vertices;

                    std::vector<Vertex> local;
                    bool is_k4 = sub.graph.size() == 4 && sub.graph.edge_count() == 6;
                    if (sub.graph.edge_count() == 0) {
                        comp.branch = "isolated";
                        for (Vertex v = 0 ; v < N && local.size() < vertices.size() ; ++v)
                            if (! z_flags[v])
                                local.push_back(v);
                    }
                    else if (is_k4) {
                        comp.branch = "k4";
                        if (colour < 0) {
                            auto s = select(z, -1);
                            colour = s.colour;
                            record_selection(s);
                        }
                        auto k4 = in_stage("k4", report, [&] { return find_k4(graphs[colour], z_flags); });
                        if (! k4)
                            throw StageFailure{ "k4", "no K4 of the chosen colour avoids earlier images" };
                        local = *k4;
                    }
                    else {
                        auto s = select(z, colour);
                        colour = s.colour;
                        record_selection(s);
                        HostView host(gamma, graphs[colour], s.parts, to_double(p));

                        VertexBits free_region(N);
                        std::vector<char> in_parts(N, 0);
                        for (auto & part : s.parts)
                            for (auto v : part)
                                in_parts[v] = 1;
                        for (int v = 0 ; v < N ; ++v)
                            if (! in_parts[v] && ! z_flags[v])
                                free_region.set(v);

                        VertexSet segment;
                        int D = cp.Delta - 1;
                        if (is_regular_graph(sub.graph, cp.Delta)) {
                            comp.branch = "segment";
                            auto cycle = shortest_cycle(sub.graph);
                            int L = segment_length(cp.mu);
                            if (static_cast<int>(cycle.size()) <= L)
                                segment = cycle;
                            else
                                segment.assign(cycle.begin(), cycle.begin() + L);
                            for (auto q : segment)
                                comp.segment.push_back(sub.to_parent[q]);
                        }
                        else
                            comp.branch = "degenerate";

                        auto piece = embed_piece(sub.graph, D, segment, host, cp, options, derive_seed(options.seed, 20 + ci),
                                segment.empty() ? nullptr : &free_region, z_flags, report);
                        comp.occupancy = piece.cn.occupancy;
                        comp.schedule = piece.cn.schedule;
                        if (! piece.success) {
                            report.components.push_back(comp);
                            throw StageFailure{ piece.stage, piece.message };
                        }
                        local = piece.images;
                    }

                    comp.success = true;
                    report.components.push_back(comp);
                    for (std::size_t i = 0 ; i < vertices.size() ; ++i) {
                        images[vertices[i]] = local[i];
                        z_flags[local[i]] = 1;
                        z.push_back(local[i]);
                    }
                }
                if (colour < 0)
                    colour = 0;
                report.colour = colour;
            }
        }

        auto class_graph = [&] (int c) -> const Graph & { return graphs.at(c); };
        in_stage("verification", report, [&] {
            std::vector<char> seen(N, 0);
            for (int v = 0 ; v < n ; ++v) {
                if (images[v] < 0 || images[v] >= N || seen[images[v]])
                    throw Error(ErrorKind::invariant_violated, "embedding is not injective");
                seen[images[v]] = 1;
            }
            for (auto [a, b] : f.edges()) {
                Vertex u = images[a], w = images[b];
                if (! gamma.adjacent(u, w) || ! class_graph(report.colour).adjacent(u, w))
                    throw Error(ErrorKind::invariant_violated, "edge " + std::to_string(a) + "-" + std::to_string(b)
                            + " is not mapped to an edge of the chosen colour");
            }
        });
        report.success = true;
        for (int v = 0 ; v < n ; ++v)
            report.embedding.emplace_back(v, images[v]);
    }
    catch (const StageFailure & failure) {
        report.failure_stage = failure.stage;
        report.failure_message = failure.message;
    }
    return report;
}

auto ramsey::report_to_json(const EmbedReport & report) -> nlohmann::json
{
    nlohmann::json steps = nlohmann::json::array(), w_sizes = nlohmann::json::array(), c_sizes = nlohmann::json::array();
    for (auto & s : report.trajectory.steps) {
        steps.push_back({ { "x", s.x }, { "w_prime", s.w_prime }, { "examined", s.examined }, { "crossed", s.crossed }, { "chosen", s.chosen } });
        w_sizes.push_back(s.w_prime);
        nlohmann::json c = nlohmann::json::array();
        for (auto & [y, size] : s.c_sizes)
            c.push_back({ y, size });
        c_sizes.push_back(c);
    }
    nlohmann::json components = nlohmann::json::array();
    for (auto & c : report.components)
        components.push_back({ { "vertices", c.vertices }, { "branch", c.branch }, { "segment", c.segment }, { "success", c.success },
                { "occupancy", c.occupancy }, { "schedule", c.schedule } });
    nlohmann::json timings = nlohmann::json::object();
    for (auto & [stage, seconds] : report.timings)
        timings[stage] = timings.value(stage, 0.0) + seconds;
    nlohmann::json energy = nlohmann::json::array();
    for (auto & e : report.energy_trace)
        energy.push_back(to_string(e));

    const auto & t = report.trajectory;
    return nlohmann::json{
        { "success", report.success },
        { "embedding", report.embedding },
        { "colour", report.colour },
        { "failure_stage", report.failure_stage },
        { "failure_message", report.failure_message },
        { "trajectory", { { "steps", steps }, { "W_sizes", w_sizes }, { "C_sizes", c_sizes }, { "failures", t.failures },
            { "ind1_failures", t.ind1_failures }, { "ind2_checks", t.ind2_checks }, { "ind2_failures", t.ind2_failures },
            { "c_bound_violations", t.c_bound_violations }, { "boundary_crossoffs", t.boundary_crossoffs },
            { "truncated_counts", t.truncated_counts }, { "restarts", t.restarts } } },
        { "components", components },
        { "timings", timings },
        { "part_sizes", report.part_sizes },
        { "K", to_string(report.K) },
        { "energy_trace", energy }
    };
}
