/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/graph.hpp>
#include <ramsey/rational.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace ramsey
{
    enum class ConstantsMode { asymptotic, practical };

    auto to_string(ConstantsMode mode) -> std::string;

    struct ConstantsPack
    {
        ConstantsMode mode = ConstantsMode::practical;
        int D = 2, Delta = 4, r = 2;
        Rational mu = Rational(1, 10);
        Rational d = Rational(1, 4);
        BigInt h0 = 8, ell1 = 2, h1 = 5;
        Rational kappa = Rational(1, 4);
        Rational rho = Rational(1, 100);
        Rational K = 5;

        // practical-mode knobs
        int hsz_distance = 1;               // classes are pairwise further apart than this in F
        int k0 = 5;                         // initial coarse parts of the regularity decomposition
        Rational eps = Rational(1, 2);      // regularity parameter
        Rational tie_tolerance = -1;        // negative uses eps
        Rational fine_density_floor = -1;   // negative uses 5 / (8 r)
        Rational trim_fraction = 1;
        bool keep_half = false;
        int srl_samples = 64;
        int srl_iterations = 4;
        int lookahead_growth = 2;           // extra radius tried when the roots reach the boundary
        long long count_budget = 4000000;   // search nodes per extension count
        int grow_attempts = 3;              // fresh-seed restarts of a piece's growth after a dead end
        bool audit = false;
    };

    // h0 = 16 D^5 / mu^3 and l1 = D^2 h0^2 / mu + 20 (both rounded up), h1 = 2 Delta^l1, d = 1/(2r),
    // kappa = d^D / (20 h1 K), rho = d^D / (4 K0). Throws instance-too-large when h1 cannot be stored.
    auto asymptotic_constants(int D, int Delta, int r, const Rational & mu, const Rational & K, const Rational & K0) -> ConstantsPack;

    // Throws invalid-input on a broken invariant for the pack's mode.
    auto validate_constants(const ConstantsPack & cp, const Rational & K0 = 0) -> void;

    auto small_int(const BigInt & x, const std::string & what) -> int;

    auto constants_to_json(const ConstantsPack & cp) -> nlohmann::json;
    auto constants_from_json(const nlohmann::json & j) -> ConstantsPack;

    struct LookaheadContext
    {
        VertexSet targets;                  // {y}, or the segment in path or cycle order
        bool segment = false;
        VertexSet h1;                       // sorted vertices of H1 without the targets
        VertexSet boundary;                 // left distance exactly `radius`
        VertexSet h0;                       // roots chosen inside h1, containing the targets' outside neighbours
        VertexSet decisive;                 // neighbours of the targets inside h1
        int radius = 0;
        std::vector<int> findroots_trajectory;
    };

    // The order must be the natural one (vertex i has rank i).
    auto build_lookahead(const OrderedGraph & og, Vertex y, const ConstantsPack & cp) -> LookaheadContext;
    auto build_segment_lookahead(const OrderedGraph & og, const VertexSet & q, const ConstantsPack & cp) -> LookaheadContext;

    // Throws invariant-violated when the roots are disconnected from the targets, too many, meet the
    // boundary, or fail the Spencer bound (exhaustive up to 18 vertices, closure cut beyond).
    auto verify_lookahead(const OrderedGraph & og, const LookaheadContext & ctx, const ConstantsPack & cp) -> void;
}
