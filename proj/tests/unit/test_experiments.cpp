/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/campaign.hpp>
#include <ramsey/errors.hpp>
#include <ramsey/experiments.hpp>
#include <ramsey/io.hpp>
#include <ramsey/verify.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace ramsey;

namespace
{
    auto scratch(const std::string & name) -> std::string
    {
        auto dir = std::filesystem::temp_directory_path() / "ramsey_unit";
        std::filesystem::create_directories(dir);
        auto path = dir / name;
        // sidecars and sweep cells all share the stem
        auto stem = path.stem().string() + ".";
        for (auto & entry : std::filesystem::directory_iterator(dir))
            if (entry.path().filename().string().starts_with(stem))
                std::filesystem::remove(entry.path());
        return path.string();
    }

    auto small_config(const std::string & output) -> ExperimentConfig
    {
        ExperimentConfig c;
        c.host = EnsembleSpec{ 300, 0.5, 0 };
        c.cp.eps = Rational(2, 3);
        c.target = TargetSpec{ TargetKind::degenerate, 1, 2, 6 };
        c.cp.D = 1;
        c.cp.Delta = 2;
        c.cp.h1 = 3;
        c.cp.k0 = 3;
        c.trials = 3;
        c.master_seed = 5;
        c.output = output;
        return c;
    }
}

TEST_SUITE("experiments")
{
    TEST_CASE("generated targets respect their bounds")
    {
        for (std::uint64_t seed = 1 ; seed <= 20 ; ++seed) {
            auto og = generate_target(2, 4, 50, seed);
            CHECK(og.size() == 50);
            CHECK(og.is_degenerate(2));
            CHECK(og.graph().max_degree() <= 4);
        }
        auto paths = generate_target(1, 2, 12, 3);
        CHECK(paths.graph().max_degree() <= 2);
        CHECK(paths.is_degenerate(1));
        CHECK_THROWS_AS(generate_target(3, 2, 10, 1), Error);
    }

    TEST_CASE("random regular graphs")
    {
        auto g = random_regular(3, 20, 4);
        CHECK(is_connected(g));
        for (int v = 0 ; v < 20 ; ++v)
            CHECK(g.degree(v) == 3);
    }

    TEST_CASE("planted targets")
    {
        TargetSpec spec{ TargetKind::planted, 3, 3, 0, 20, 4 };
        auto og = generate_target(spec, 2);
        CHECK(og.size() == 4 + 20 + 4);
        CHECK(og.graph().max_degree() == 3);
        CHECK(connected_components(og.graph()).size() == 3);
    }

    TEST_CASE("colourings")
    {
        auto g = sample_gnp({ 400, 0.2, 1 });
        auto one = colour_edges(g, ColouringStrategy::random, 1, 1);
        CHECK(std::all_of(one.colour.begin(), one.colour.end(), [] (int c) { return c == 0; }));

        auto two = colour_edges(g, ColouringStrategy::random, 2, 1);
        auto zeros = std::count(two.colour.begin(), two.colour.end(), 0);
        double half = double(g.edge_count()) / 2;
        CHECK(std::abs(double(zeros) - half) <= 0.1 * half);
        CHECK(colour_edges(g, ColouringStrategy::random, 2, 1).colour == two.colour);

        auto split = colour_edges(g, ColouringStrategy::majority_split, 2, 1);
        CHECK(split.edges.size() == static_cast<std::size_t>(g.edge_count()));
    }

    TEST_CASE("the clique hider beats a random colouring")
    {
        auto g = sample_gnp({ 60, 0.6, 2 });
        auto random = count_monochromatic_k4(g, colour_edges(g, ColouringStrategy::random, 2, 2));
        auto hider = count_monochromatic_k4(g, colour_edges(g, ColouringStrategy::clique_hider, 2, 2));
        CHECK(hider < random);
    }

    TEST_CASE("colouring text round trips")
    {
        auto g = sample_gnp({ 30, 0.3, 1 });
        auto c = colour_edges(g, ColouringStrategy::random, 3, 1);
        auto back = parse_colouring(to_colouring_text(c));
        CHECK(back.colours == 3);
        CHECK(back.edges == c.edges);
        CHECK(back.colour == c.colour);
    }

    TEST_CASE("config json round trip and strictness")
    {
        auto c = small_config("x.jsonl");
        auto j = config_to_json(c);
        CHECK(config_to_json(config_from_json(j)) == j);
        auto extra = j;
        extra["surprise"] = 1;
        CHECK_THROWS_AS(config_from_json(extra), Error);
        auto mismatch = j;
        mismatch["colouring"]["r"] = 3;
        CHECK_THROWS_AS(config_from_json(mismatch), Error);
    }

    TEST_CASE("instances are regenerated from their seeds")
    {
        auto c = small_config("x.jsonl");
        auto a = make_instance(c, 1), b = make_instance(c, 1), other = make_instance(c, 2);
        CHECK(a.seed == trial_seed(c, 1));
        CHECK(a.host == b.host);
        CHECK(a.colouring.colour == b.colouring.colour);
        CHECK(! (a.host == other.host));
    }

    TEST_CASE("clopper-pearson interval")
    {
        auto [lo, hi] = clopper_pearson(0, 20);
        CHECK(lo == 0.0);
        CHECK(hi == doctest::Approx(0.16843).epsilon(1e-4));
        auto [lo2, hi2] = clopper_pearson(20, 20);
        CHECK(lo2 == doctest::Approx(0.83157).epsilon(1e-4));
        CHECK(hi2 == 1.0);
    }

    TEST_CASE("zero trials give a valid file")
    {
        auto c = small_config(scratch("zero.jsonl"));
        c.trials = 0;
        auto result = run_campaign(c, 1);
        CHECK(result.records.empty());
        CHECK(result.aggregate.trials == 0);
        auto loaded = load_campaign(c.output);
        CHECK(loaded.records.empty());
        CHECK(verify_result_file(c.output).ok());
    }

    TEST_CASE("campaigns are deterministic, resumable and verifiable")
    {
        auto c = small_config(scratch("a.jsonl"));
        auto first = run_campaign(c, 2);
        CHECK(first.aggregate.trials == 3);
        auto bytes = read_file(c.output);

        auto again = small_config(scratch("b.jsonl"));
        run_campaign(again, 1);
        auto other = read_file(again.output);
        // the header names its own output path, everything after it must agree
        CHECK(bytes.substr(bytes.find('\n')) == other.substr(other.find('\n')));

        // cut the file after the second trial and resume
        auto cut = bytes.substr(0, bytes.find('\n', bytes.find('\n', bytes.find('\n') + 1) + 1) + 1) + "{\"torn";
        write_file(c.output, cut);
        run_campaign(c, 1);
        CHECK(read_file(c.output) == bytes);

        auto verdict = verify_result_file(c.output);
        CHECK(verdict.ok());
        CHECK(verdict.passed == first.aggregate.successes);
    }

    TEST_CASE("tampered results fail verification")
    {
        auto c = small_config(scratch("t.jsonl"));
        auto result = run_campaign(c, 1);
        REQUIRE(result.aggregate.successes > 0);
        auto text = read_file(c.output);
        auto at = text.find("\"embedding\":[[");
        REQUIRE(at != std::string::npos);
        // swap the first image for a different vertex
        auto start = text.find(',', at) + 1;
        auto end = text.find(']', start);
        auto value = std::stoi(text.substr(start, end - start));
        text.replace(start, end - start, std::to_string((value + 1) % 300));
        write_file(c.output, text);
        CHECK(! verify_result_file(c.output).ok());
    }

    TEST_CASE("a single-cell sweep matches the campaign")
    {
        auto c = small_config(scratch("s.jsonl"));
        auto cells = run_sweep(c, SweepParameter::p, { "0.5" }, 1);
        REQUIRE(cells.size() == 1);
        auto direct = small_config(scratch("d.jsonl"));
        auto result = run_campaign(direct, 1);
        CHECK(cells[0].aggregate.successes == result.aggregate.successes);
        CHECK(sweep_to_csv(SweepParameter::p, cells).find("0.5") != std::string::npos);
    }
}
