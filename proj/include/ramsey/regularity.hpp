/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/ensemble.hpp>
#include <ramsey/graph.hpp>
#include <ramsey/rational.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ramsey
{
    class Partition
    {
        private:
            std::vector<VertexSet> _blocks;

        public:
            Partition() = default;
            explicit Partition(std::vector<VertexSet> blocks);

            // k blocks of consecutive members of `ground`, sizes differing by at most one.
            static auto equitable(const VertexSet & ground, int k) -> Partition;
            static auto equitable(int n, int k) -> Partition;

            auto blocks() const -> const std::vector<VertexSet> & { return _blocks; }
            auto block(int i) const -> const VertexSet & { return _blocks[i]; }
            auto size() const -> int { return static_cast<int>(_blocks.size()); }
            auto covered() const -> long long;
            auto is_equitable() const -> bool;

            // block index of every vertex below n, -1 when uncovered
            auto block_index(int n) const -> std::vector<int>;
    };

    auto is_refinement(const Partition & coarse, const Partition & fine) -> bool;

    // Each coarse block contains exactly s fine blocks and the fine partition is equitable; returns s.
    auto equitable_refinement_factor(const Partition & coarse, const Partition & fine) -> std::optional<int>;

    struct PairAssessment
    {
        Rational density;
        bool regular = true;
        Rational epsilon;
        std::optional<std::pair<VertexSet, VertexSet>> witness;
        CheckMode mode = CheckMode::exhaustive;
        long long tested = 0;
    };

    struct AssessOptions
    {
        CheckMode mode = CheckMode::sampled;
        int exhaustive_limit = 16;      // exhaustive search runs over subsets of the smaller side
        int samples = 64;
        int refine_rounds = 0;          // sampled: degree-greedy U'/V' alternations after each random U'
        std::uint64_t seed = 1;
    };

    auto p_density(const Graph & g, const VertexSet & u, const VertexSet & v, const Rational & p) -> Rational;

    auto assess_pair(const Graph & g, const VertexSet & u, const VertexSet & v, const Rational & eps, const Rational & p,
            const AssessOptions & options = {}) -> PairAssessment;

    auto energy(const Partition & partition, const std::vector<Graph> & graphs, const Rational & p) -> Rational;

    struct DefectSides
    {
        Rational lhs, rhs;
    };

    // Both sides of sum_i lambda_i (d + rho_i)^2 = d^2 + sum_i lambda_i rho_i^2.
    auto defect_cauchy_schwarz(const std::vector<Rational> & lambda, const Rational & d, const std::vector<Rational> & rho) -> DefectSides;

    struct SrlOptions
    {
        AssessOptions assess;
        int max_parts = 256;            // fine partition size budget
        int max_rounds = 8;
    };

    struct SrlResult
    {
        Partition fine;
        int factor = 1;                 // fine blocks per base block
        bool converged = false;
        std::vector<double> irregular_fraction;     // per colour, last round
        std::vector<Rational> energy_trace;
    };

    // Witness-driven equitable refinement of `base` until every colour has at most an eps fraction of irregular pairs.
    auto srl_refine(const std::vector<Graph> & graphs, const Rational & eps, const Partition & base, const Rational & p,
            const SrlOptions & options = {}) -> SrlResult;

    // Starts from the equitable partition into t0 blocks; throws budget-exceeded with the energy trace on failure.
    auto srl_partition(const std::vector<Graph> & graphs, const Rational & eps, int t0, const Rational & p,
            const SrlOptions & options = {}) -> Partition;

    struct PairRecord
    {
        int i = 0, j = 0, colour = 0;
        Rational density;
        bool regular = true;
    };

    struct RegularityDecomposition
    {
        Partition coarse, fine;
        std::vector<PairRecord> pairs;          // fine pairs lying in distinct coarse blocks, every colour
        std::vector<Rational> energy_trace;     // energy of the coarse partition at each iteration
        std::vector<Rational> gains;            // consecutive differences of energy_trace
        Rational epsilon;
        int iterations = 0;
        bool rl4_holds = false;
        long long rl4_violations = 0;
        std::string note;
    };

    struct SsrlOptions
    {
        SrlOptions srl;
        int max_iterations = 0;                 // 0 uses 16 r eps^-3
        bool assert_gain = true;                // throw when a non-final gain falls below eps^3 / 16
    };

    auto strengthened_srl(const std::vector<Graph> & graphs, const Rational & eps, const std::function<Rational (int)> & f,
            int k0, const Rational & p, const SsrlOptions & options = {}) -> RegularityDecomposition;

    struct SelectOptions
    {
        Rational tie_tolerance = -1;            // colours within this of the best count as majority; negative uses eps
        Rational fine_density_floor = -1;       // negative uses 5 / (8 r)
        Rational trim_fraction = Rational(9, 10);
        bool keep_half = true;                  // use q parts where every chosen block has at least 2q good ones
        int colour = -1;                        // when nonnegative, only this colour is tried
    };

    struct Selection
    {
        int colour = 0;
        std::vector<int> coarse_parts;
        std::vector<VertexSet> parts;                   // V_1 .. V_h1
        std::vector<std::vector<VertexSet>> fine;       // q equal blocks inside each V_i
        Rational K;                                     // N / |V_i|
        std::vector<std::pair<int, int>> bad_coarse_pairs;
        std::vector<int> bad_fine_parts;                // indices into the decomposition's fine partition
    };

    auto select_colour_and_parts(const RegularityDecomposition & decomp, const std::vector<Graph> & graphs, int r, int h1,
            const VertexSet & z, const Rational & d, const Rational & p, const SelectOptions & options = {}) -> Selection;

    inline constexpr int default_partite_limit = 8;

    // Embeddings with pattern vertex x mapped into parts[x].
    auto count_partite_embeddings(const Graph & g, const Graph & pattern, const std::vector<VertexSet> & parts,
            int limit = default_partite_limit) -> long long;

    auto predicted_partite_count(const Graph & g, const Graph & pattern, const std::vector<VertexSet> & parts, const Rational & p) -> double;
    auto predicted_partite_count(const std::vector<long long> & part_sizes, const Graph & pattern,
            const std::vector<double> & edge_densities, double p) -> double;

    // Partite embeddings of pattern minus its last vertex y whose images of N(y) have fewer than
    // (3/4)(dp)^deg(y) |V_y| common neighbours in V_y.
    auto count_poor_embeddings(const Graph & g, const Graph & pattern, const std::vector<VertexSet> & parts,
            const Rational & d, const Rational & p, int limit = default_partite_limit) -> long long;

    // Partite embeddings of pattern minus V(q) with no partite extension over q.
    auto count_noncompletion_embeddings(const Graph & g, const Graph & pattern, const VertexSet & q,
            const std::vector<VertexSet> & parts, int limit = default_partite_limit) -> long long;
}
