/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/campaign.hpp>
#include <ramsey/density.hpp>
#include <ramsey/ensemble.hpp>
#include <ramsey/errors.hpp>
#include <ramsey/experiments.hpp>
#include <ramsey/io.hpp>
#include <ramsey/pipeline.hpp>
#include <ramsey/regularity.hpp>
#include <ramsey/verify.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace ramsey;

namespace
{
    auto split_grid(const std::string & text) -> std::vector<std::string>
    {
        std::vector<std::string> result;
        std::stringstream in(text);
        for (std::string item ; std::getline(in, item, ',') ; )
            if (! item.empty())
                result.push_back(item);
        return result;
    }

    auto emit(const nlohmann::json & j, const std::string & out) -> void
    {
        if (out.empty())
            std::cout << j.dump(2) << '\n';
        else
            write_file(out, j.dump(2) + "\n");
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{ "Monochromatic embeddings of bounded-degree graphs in coloured random hosts" };
    app.require_subcommand(1);

    // density
    auto density = app.add_subcommand("density", "Exact density measures of a graph");
    std::string density_measure, density_graph, density_roots;
    density->add_option("measure", density_measure)->required()->check(CLI::IsMember({ "d2", "m2", "spencer" }));
    density->add_option("--graph", density_graph, "edge-list file")->required();
    density->add_option("--roots", density_roots, "comma-separated roots");

    // ensemble
    auto ensemble = app.add_subcommand("ensemble", "Random host graphs and their pseudorandom properties");
    ensemble->require_subcommand(1);
    auto ens_sample = ensemble->add_subcommand("sample", "Sample G(n,p)");
    EnsembleSpec ens_spec;
    std::string ens_out;
    ens_sample->add_option("--n", ens_spec.N)->required();
    ens_sample->add_option("--p", ens_spec.p)->required();
    ens_sample->add_option("--seed", ens_spec.seed);
    ens_sample->add_option("--out", ens_out)->required();

    auto ens_check = ensemble->add_subcommand("check", "Check a neighbourhood, star or upper-regularity property");
    std::string ens_property, ens_graph;
    int ens_D = 2;
    double ens_eps = 0.5, ens_p = 0.0;
    CheckOptions ens_options;
    ens_check->add_option("property", ens_property)->required()->check(CLI::IsMember({ "neigh", "star", "upreg" }));
    ens_check->add_option("--graph", ens_graph)->required();
    ens_check->add_option("--d", ens_D, "set size bound D");
    ens_check->add_option("--eps", ens_eps);
    ens_check->add_option("--p", ens_p)->required();
    ens_check->add_option("--samples", ens_options.samples);
    ens_check->add_option("--seed", ens_options.seed);

    auto ens_ext = ensemble->add_subcommand("extensions", "Count rooted extensions of a pattern");
    std::string ext_graph, ext_pattern, ext_roots, ext_pi;
    ens_ext->add_option("--graph", ext_graph)->required();
    ens_ext->add_option("--pattern", ext_pattern)->required();
    ens_ext->add_option("--roots", ext_roots)->required();
    ens_ext->add_option("--pi", ext_pi, "host images of the roots, in order")->required();

    // target and colouring generators
    auto target = app.add_subcommand("target", "Generate a target graph");
    TargetSpec target_spec;
    std::string target_kind = "degenerate", target_out;
    std::uint64_t target_seed = 1;
    target->add_option("--kind", target_kind)->check(CLI::IsMember({ "degenerate", "planted" }));
    target->add_option("--D", target_spec.D);
    target->add_option("--Delta", target_spec.Delta);
    target->add_option("--n", target_spec.n);
    target->add_option("--regular-size", target_spec.regular_size);
    target->add_option("--path-length", target_spec.path_length);
    target->add_option("--seed", target_seed);
    target->add_option("--out", target_out)->required();

    auto colour = app.add_subcommand("colour", "Colour the edges of a host graph");
    std::string colour_host, colour_strategy = "random", colour_out;
    int colour_r = 2;
    std::uint64_t colour_seed = 1;
    colour->add_option("--host", colour_host)->required();
    colour->add_option("--strategy", colour_strategy, "majority-split and clique-hider are exploratory adversaries, not worst cases")->check(CLI::IsMember({ "random", "majority-split", "clique-hider" }));
    colour->add_option("--r", colour_r);
    colour->add_option("--seed", colour_seed);
    colour->add_option("--out", colour_out)->required();

    // regularity
    auto reg = app.add_subcommand("reg", "Regularity decompositions");
    reg->require_subcommand(1);
    auto reg_decompose = reg->add_subcommand("decompose", "Strengthened regularity decomposition of colour-class graphs");
    std::vector<std::string> reg_graphs;
    std::string reg_eps = "1/2", reg_out;
    int reg_k0 = 5, reg_budget = 0;
    std::uint64_t reg_seed = 1;
    reg_decompose->add_option("--graphs", reg_graphs, "one edge-list file per colour")->required();
    reg_decompose->add_option("--eps", reg_eps);
    reg_decompose->add_option("--k0", reg_k0);
    reg_decompose->add_option("--budget", reg_budget, "iteration budget; 0 uses 16 r / eps^3");
    reg_decompose->add_option("--seed", reg_seed);
    reg_decompose->add_option("--out", reg_out);

    // embedding
    auto embed = app.add_subcommand("embed", "Embed a target monochromatically");
    auto embed_run = embed->add_subcommand("run", "One embedding attempt");
    embed->require_subcommand(1);
    std::string embed_target, embed_host, embed_colouring, embed_constants, embed_mode = "degenerate", embed_policy = "random", embed_out;
    std::uint64_t embed_seed = 1;
    bool embed_audit = false;
    embed_run->add_option("--target", embed_target)->required();
    embed_run->add_option("--host", embed_host)->required();
    embed_run->add_option("--colouring", embed_colouring)->required();
    embed_run->add_option("--constants", embed_constants, "constants JSON; practical defaults otherwise");
    embed_run->add_option("--mode", embed_mode)->check(CLI::IsMember({ "degenerate", "maxdegree" }));
    embed_run->add_option("--policy", embed_policy)->check(CLI::IsMember({ "random", "lowest_index", "lookahead" }));
    embed_run->add_option("--seed", embed_seed);
    embed_run->add_flag("--audit", embed_audit);
    embed_run->add_option("--out", embed_out);

    // campaigns
    auto campaign = app.add_subcommand("campaign", "Seeded experiment campaigns");
    campaign->require_subcommand(1);
    auto campaign_run = campaign->add_subcommand("run", "Run (or resume) a campaign");
    auto campaign_sweep = campaign->add_subcommand("sweep", "Run a campaign per grid value");
    auto campaign_verify = campaign->add_subcommand("verify", "Re-verify every embedding of a results file");
    std::string config_path, sweep_param, sweep_grid, sweep_csv, sweep_json, result_path;
    campaign_run->add_option("--config", config_path)->required();
    campaign_sweep->add_option("--config", config_path)->required();
    campaign_sweep->add_option("--param", sweep_param)->required()->check(CLI::IsMember({ "p", "n", "r", "mu" }));
    campaign_sweep->add_option("--grid", sweep_grid)->required();
    campaign_sweep->add_option("--csv", sweep_csv);
    campaign_sweep->add_option("--json", sweep_json);
    campaign_verify->add_option("--result", result_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*density) {
            auto g = load_graph(density_graph).graph();
            auto roots = parse_vertex_list(density_roots);
            DensityReport report;
            if (density_measure == "d2")
                report.value = d2(g);
            else if (density_measure == "m2")
                report = m2(g);
            else
                report = spencer_density(RootedPattern{ g, roots });
            emit({ { "value_num", numerator_string(report.value) }, { "value_den", denominator_string(report.value) },
                    { "witness", report.witness } }, "");
        }
        else if (*ens_sample) {
            auto g = sample_gnp(ens_spec);
            save_graph(ens_out, g);
            emit({ { "n", g.size() }, { "edges", g.edge_count() }, { "hash", content_hash(to_edge_list(g)) } }, "");
        }
        else if (*ens_check) {
            auto g = load_graph(ens_graph).graph();
            auto v = ens_property == "neigh" ? check_neighbourhood_property(g, ens_D, ens_eps, ens_p, ens_options)
                : ens_property == "star" ? check_star_property(g, ens_D, ens_eps, ens_p, ens_options)
                : check_upper_regular(g, ens_eps, ens_p, ens_options);
            nlohmann::json violations = nlohmann::json::array();
            for (auto & x : v.violations)
                violations.push_back({ { "witness", x.witness }, { "observed", x.observed }, { "lower", x.lower }, { "upper", x.upper } });
            emit({ { "holds", v.holds }, { "tested", v.tested }, { "violations", violations }, { "mode", to_string(v.mode) } }, "");
            return v.holds ? 0 : 1;
        }
        else if (*ens_ext) {
            auto host = load_graph(ext_graph).graph();
            RootedPattern rp{ load_graph(ext_pattern).graph(), parse_vertex_list(ext_roots) };
            auto images = parse_vertex_list(ext_pi);
            if (images.size() != rp.roots.size())
                throw Error(ErrorKind::invalid_input, "--pi must list one image per root");
            std::vector<std::pair<Vertex, Vertex>> pairs;
            for (std::size_t i = 0 ; i < images.size() ; ++i)
                pairs.emplace_back(rp.roots[i], images[i]);
            auto count = count_extensions(host, rp, PartialMap::from_pairs(rp.h.size(), pairs));
            emit({ { "count", count } }, "");
        }
        else if (*target) {
            target_spec.kind = parse_target_kind(target_kind);
            auto og = generate_target(target_spec, target_seed);
            save_graph(target_out, og);
        }
        else if (*colour) {
            auto host = load_graph(colour_host).graph();
            save_colouring(colour_out, colour_edges(host, parse_colouring_strategy(colour_strategy), colour_r, colour_seed));
        }
        else if (*reg_decompose) {
            std::vector<Graph> graphs;
            for (auto & path : reg_graphs)
                graphs.push_back(load_graph(path).graph());
            int n = graphs.at(0).size();
            long long edges = 0;
            for (auto & g : graphs) {
                if (g.size() != n)
                    throw Error(ErrorKind::invalid_input, "colour-class graphs must share a vertex set");
                edges += g.edge_count();
            }
            Rational p(edges * 2, static_cast<long long>(n) * std::max(1, n - 1));
            Rational eps = parse_rational(reg_eps), half = eps / 2;
            SsrlOptions o;
            o.max_iterations = reg_budget;
            o.srl.assess.seed = reg_seed;
            auto decomp = strengthened_srl(graphs, eps, [half] (int) { return half; }, reg_k0, p, o);
            nlohmann::json pairs = nlohmann::json::array(), trace = nlohmann::json::array();
            for (auto & r : decomp.pairs)
                pairs.push_back({ { "i", r.i }, { "j", r.j }, { "colour", r.colour }, { "density_num", numerator_string(r.density) },
                        { "density_den", denominator_string(r.density) }, { "regular", r.regular } });
            for (auto & e : decomp.energy_trace)
                trace.push_back(to_string(e));
            emit({ { "coarse", decomp.coarse.blocks() }, { "fine", decomp.fine.blocks() }, { "pairs", pairs }, { "energy_trace", trace } },
                    reg_out);
        }
        else if (*embed_run) {
            EmbedOptions options;
            if (! embed_constants.empty())
                options.cp = constants_from_json(nlohmann::json::parse(read_file(embed_constants)));
            options.cp.audit = options.cp.audit || embed_audit;
            options.mode = parse_embed_mode(embed_mode);
            options.policy = parse_choice_policy(embed_policy);
            options.seed = embed_seed;
            auto f = load_graph(embed_target).graph();
            auto host = load_graph(embed_host).graph();
            auto colouring = load_colouring(embed_colouring);
            auto report = embed_monochromatic(f, host, colouring, options);
            emit(report_to_json(report), embed_out);
            return report.success ? 0 : 1;
        }
        else if (*campaign_run || *campaign_sweep) {
            auto config = config_from_json(nlohmann::json::parse(read_file(config_path)));
            if (*campaign_run) {
                auto result = run_campaign(config);
                std::cout << aggregate_to_json(result.aggregate).dump() << '\n';
            }
            else {
                auto parameter = parse_sweep_parameter(sweep_param);
                auto cells = run_sweep(config, parameter, split_grid(sweep_grid));
                auto csv = sweep_to_csv(parameter, cells);
                if (! sweep_csv.empty())
                    write_file(sweep_csv, csv);
                if (! sweep_json.empty())
                    write_file(sweep_json, sweep_to_json(parameter, cells).dump(2) + "\n");
                std::cout << csv;
            }
        }
        else if (*campaign_verify) {
            auto v = verify_result_file(result_path);
            for (auto & problem : v.problems)
                std::cout << "FAIL " << problem << '\n';
            std::cout << (v.ok() ? "OK" : "FAILED") << " checked=" << v.checked << " passed=" << v.passed << '\n';
            return v.ok() ? 0 : 1;
        }
    }
    catch (const Error & e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return 2;
    }
    catch (const nlohmann::json::exception & e) {
        std::cerr << "error (invalid_input): " << e.what() << '\n';
        return 2;
    }
    return 0;
}
