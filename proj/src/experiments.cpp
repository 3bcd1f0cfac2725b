/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/errors.hpp>
#include <ramsey/experiments.hpp>
#include <ramsey/rng.hpp>

#include <algorithm>
#include <numeric>

using namespace ramsey;

auto ramsey::to_string(TargetKind kind) -> std::string
{
    return kind == TargetKind::degenerate ? "degenerate" : "planted";
}

auto ramsey::parse_target_kind(const std::string & text) -> TargetKind
{
    if (text == "degenerate")
        return TargetKind::degenerate;
    if (text == "planted")
        return TargetKind::planted;
    throw Error(ErrorKind::invalid_input, "unknown target kind '" + text + "'");
}

auto ramsey::generate_target(int D, int Delta, int n, std::uint64_t seed) -> OrderedGraph
{
    if (D < 1 || Delta < 1 || n < 0)
        throw Error(ErrorKind::invalid_input, "target class needs D, Delta >= 1 and n >= 0");
    if (D > Delta)
        throw Error(ErrorKind::invalid_input, "infeasible target class: D > Delta");

    auto rng = make_rng(seed, 0x7467);
    std::vector<int> degree(n, 0);
    std::vector<Edge> edges;
    for (int v = 1 ; v < n ; ++v) {
        VertexSet open;
        for (int u = 0 ; u < v ; ++u)
            if (degree[u] < Delta)
                open.push_back(u);
        int want = static_cast<int>(uniform_int(rng, 1, std::min(D, v)));
        int take = std::min<int>(want, open.size());
        for (auto i : sample_distinct(rng, open.size(), take)) {
            edges.emplace_back(open[i], v);
            ++degree[open[i]];
            ++degree[v];
        }
    }

    auto og = OrderedGraph::natural(Graph::from_edges(n, edges));
    if (og.graph().max_degree() > Delta || degeneracy_order(og.graph()).second > D)
        throw Error(ErrorKind::invariant_violated, "generated target left its class");
    return og;
}

auto ramsey::random_regular(int Delta, int n, std::uint64_t seed) -> Graph
{
    if (Delta < 0 || n <= Delta || (static_cast<long long>(Delta) * n) % 2)
        throw Error(ErrorKind::invalid_input, "no Delta-regular graph with these parameters");
    auto rng = make_rng(seed, 0x7267);
    std::vector<Vertex> points;
    for (int v = 0 ; v < n ; ++v)
        for (int i = 0 ; i < Delta ; ++i)
            points.push_back(v);
    for (int attempt = 0 ; attempt < 100000 ; ++attempt) {
        std::shuffle(points.begin(), points.end(), rng);
        std::vector<Edge> edges;
        bool simple = true;
        for (std::size_t i = 0 ; i < points.size() && simple ; i += 2) {
            auto [u, w] = std::minmax(points[i], points[i + 1]);
            if (u == w)
                simple = false;
            edges.emplace_back(u, w);
        }
        if (! simple)
            continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            continue;
        auto g = Graph::from_edges(n, edges);
        if (is_connected(g))
            return g;
    }
    throw Error(ErrorKind::budget_exceeded, "pairing model never produced a simple connected graph");
}

auto ramsey::generate_target(const TargetSpec & spec, std::uint64_t seed) -> OrderedGraph
{
    if (spec.kind == TargetKind::degenerate)
        return generate_target(spec.D, spec.Delta, spec.n, seed);
    if (spec.Delta < 3)
        throw Error(ErrorKind::invalid_input, "planted targets need Delta >= 3");
    return OrderedGraph::natural(disjoint_union({ complete_graph(4), random_regular(spec.Delta, spec.regular_size, seed),
                path_graph(spec.path_length) }));
}

auto ramsey::to_string(ColouringStrategy s) -> std::string
{
    switch (s) {
        case ColouringStrategy::random: return "random";
        case ColouringStrategy::majority_split: return "majority-split";
        case ColouringStrategy::clique_hider: return "clique-hider";
    }
    return "?";
}

auto ramsey::parse_colouring_strategy(const std::string & text) -> ColouringStrategy
{
    if (text == "random")
        return ColouringStrategy::random;
    if (text == "majority-split")
        return ColouringStrategy::majority_split;
    if (text == "clique-hider")
        return ColouringStrategy::clique_hider;
    throw Error(ErrorKind::invalid_input, "unknown colouring strategy '" + text + "'");
}

namespace
{
    // Colour storage parallel to each adjacency list.
    struct Painter
    {
        const Graph & g;
        std::vector<std::vector<signed char>> colour;

        explicit Painter(const Graph & graph) : g(graph), colour(graph.size())
        {
            for (int v = 0 ; v < g.size() ; ++v)
                colour[v].assign(g.degree(v), -1);
        }

        auto slot(Vertex u, Vertex w) -> signed char &
        {
            auto & n = g.neighbours(u);
            return colour[u][std::lower_bound(n.begin(), n.end(), w) - n.begin()];
        }

        auto paint(Vertex u, Vertex w, int c) -> void
        {
            slot(u, w) = static_cast<signed char>(c);
            slot(w, u) = static_cast<signed char>(c);
        }

        // For each colour, common neighbours z with uz and wz both in that colour.
        auto triangles(Vertex u, Vertex w, int r) const -> std::vector<long long>
        {
            std::vector<long long> result(r, 0);
            auto & nu = g.neighbours(u);
            auto & nw = g.neighbours(w);
            std::size_t i = 0, j = 0;
            while (i < nu.size() && j < nw.size()) {
                if (nu[i] < nw[j])
                    ++i;
                else if (nw[j] < nu[i])
                    ++j;
                else {
                    auto a = colour[u][i], b = colour[w][j];
                    if (a >= 0 && a == b)
                        ++result[a];
                    ++i;
                    ++j;
                }
            }
            return result;
        }
    };
}

auto ramsey::colour_edges(const Graph & g, ColouringStrategy strategy, int r, std::uint64_t seed) -> EdgeColouring
{
    if (r < 1)
        throw Error(ErrorKind::invalid_input, "need at least one colour");
    EdgeColouring result;
    result.colours = r;
    result.edges = g.edges();
    result.colour.assign(result.edges.size(), 0);
    if (r == 1)
        return result;

    auto rng = make_rng(seed, 0x636f);
    switch (strategy) {
        case ColouringStrategy::random:
            for (auto & c : result.colour)
                c = static_cast<int>(uniform_int(rng, 0, r - 1));
            break;

        case ColouringStrategy::majority_split: {
            // random vertex classes; an edge takes the sum of its endpoint classes mod r
            std::vector<int> cls(g.size());
            for (auto & c : cls)
                c = static_cast<int>(uniform_int(rng, 0, r - 1));
            for (std::size_t i = 0 ; i < result.edges.size() ; ++i)
                result.colour[i] = (cls[result.edges[i].first] + cls[result.edges[i].second]) % r;
            break;
        }

        case ColouringStrategy::clique_hider: {
            // random edge order; each edge takes the colour closing the fewest monochromatic triangles
            Painter painter(g);
            std::vector<std::size_t> order(result.edges.size());
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            for (auto i : order) {
                auto [u, w] = result.edges[i];
                auto counts = painter.triangles(u, w, r);
                auto best = *std::min_element(counts.begin(), counts.end());
                std::vector<int> ties;
                for (int c = 0 ; c < r ; ++c)
                    if (counts[c] == best)
                        ties.push_back(c);
                int c = ties[uniform_int(rng, 0, static_cast<long long>(ties.size()) - 1)];
                painter.paint(u, w, c);
                result.colour[i] = c;
            }
            break;
        }
    }
    return result;
}

auto ramsey::count_monochromatic_k4(const Graph & g, const EdgeColouring & c) -> long long
{
    long long total = 0;
    for (auto & cls : colour_classes(g, c)) {
        for (Vertex a = 0 ; a < cls.size() ; ++a)
            for (auto b : cls.neighbours(a)) {
                if (b <= a)
                    continue;
                auto common = joint_neighbourhood(cls, { a, b });
                for (std::size_t i = 0 ; i < common.size() ; ++i) {
                    if (common[i] <= b)
                        continue;
                    for (std::size_t j = i + 1 ; j < common.size() ; ++j)
                        if (cls.adjacent(common[i], common[j]))
                            ++total;
                }
            }
    }
    return total;
}

auto ramsey::config_to_json(const ExperimentConfig & c) -> nlohmann::json
{
    return nlohmann::json{
        { "schema_version", c.schema },
        { "host", { { "N", c.host.N }, { "p", c.host.p } } },
        { "target", { { "kind", to_string(c.target.kind) }, { "D", c.target.D }, { "Delta", c.target.Delta }, { "n", c.target.n },
            { "regular_size", c.target.regular_size }, { "path_length", c.target.path_length } } },
        { "colouring", { { "strategy", to_string(c.strategy) }, { "r", c.r } } },
        { "constants", constants_to_json(c.cp) },
        { "mode", to_string(c.mode) },
        { "policy", to_string(c.policy) },
        { "trials", c.trials },
        { "master_seed", c.master_seed },
        { "audit", c.audit },
        { "output", c.output }
    };
}

auto ramsey::config_from_json(const nlohmann::json & j) -> ExperimentConfig
{
    ExperimentConfig c;
    try {
        c.schema = j.at("schema_version").get<int>();
        if (c.schema != schema_version)
            throw Error(ErrorKind::invalid_input, "unsupported schema_version " + std::to_string(c.schema));
        for (auto & [key, value] : j.items()) {
            if (key == "schema_version")
                continue;
            else if (key == "host") {
                c.host.N = value.at("N").get<int>();
                c.host.p = value.at("p").get<double>();
            }
            else if (key == "target") {
                c.target.kind = parse_target_kind(value.value("kind", std::string("degenerate")));
                c.target.D = value.value("D", c.target.D);
                c.target.Delta = value.value("Delta", c.target.Delta);
                c.target.n = value.value("n", c.target.n);
                c.target.regular_size = value.value("regular_size", c.target.regular_size);
                c.target.path_length = value.value("path_length", c.target.path_length);
            }
            else if (key == "colouring") {
                c.strategy = parse_colouring_strategy(value.value("strategy", std::string("random")));
                c.r = value.value("r", c.r);
            }
            else if (key == "constants")
                c.cp = constants_from_json(value);
            else if (key == "mode")
                c.mode = parse_embed_mode(value.get<std::string>());
            else if (key == "policy")
                c.policy = parse_choice_policy(value.get<std::string>());
            else if (key == "trials")
                c.trials = value.get<int>();
            else if (key == "master_seed")
                c.master_seed = value.get<std::uint64_t>();
            else if (key == "audit")
                c.audit = value.get<bool>();
            else if (key == "output")
                c.output = value.get<std::string>();
            else
                throw Error(ErrorKind::invalid_input, "unknown config field '" + key + "'");
        }
    }
    catch (const nlohmann::json::exception & e) {
        throw Error(ErrorKind::invalid_input, std::string("malformed config: ") + e.what());
    }
    if (c.trials < 0)
        throw Error(ErrorKind::invalid_input, "trials must be non-negative");
    if (c.r != c.cp.r)
        throw Error(ErrorKind::invalid_input, "colouring r and constants r disagree");
    return c;
}

auto ramsey::trial_seed(const ExperimentConfig & c, int index) -> std::uint64_t
{
    return derive_seed(c.master_seed, static_cast<std::uint64_t>(index));
}

auto ramsey::make_instance(const ExperimentConfig & c, int index) -> TrialInstance
{
    TrialInstance t;
    t.seed = trial_seed(c, index);
    t.host = sample_gnp(EnsembleSpec{ c.host.N, c.host.p, derive_seed(t.seed, 1) });
    t.target = generate_target(c.target, derive_seed(t.seed, 2));
    t.colouring = colour_edges(t.host, c.strategy, c.r, derive_seed(t.seed, 3));
    return t;
}
