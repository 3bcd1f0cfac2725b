/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/bitrows.hpp>
#include <ramsey/graph.hpp>
#include <ramsey/lookahead.hpp>
#include <ramsey/rational.hpp>
#include <ramsey/rng.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ramsey
{
    // The host Gamma, the chosen colour class G inside it, and the parts V_1 .. V_h1, as bit rows.
    class HostView
    {
        private:
            const Graph * _gamma;
            const Graph * _colour;
            AdjacencyBits _gamma_bits, _colour_bits;
            std::vector<VertexBits> _part_bits;
            std::vector<VertexSet> _parts;
            VertexBits _everything;
            double _p;

        public:
            HostView(const Graph & gamma, const Graph & colour, std::vector<VertexSet> parts, double p);

            auto gamma() const -> const Graph & { return *_gamma; }
            auto colour() const -> const Graph & { return *_colour; }
            auto gamma_row(Vertex v) const -> const Word * { return _gamma_bits.row(v); }
            auto colour_row(Vertex v) const -> const Word * { return _colour_bits.row(v); }
            auto part(int i) const -> const VertexSet & { return _parts[i]; }
            auto part_bits(int i) const -> const VertexBits & { return _part_bits[i]; }
            auto part_count() const -> int { return static_cast<int>(_parts.size()); }
            auto everything() const -> const VertexBits & { return _everything; }
            auto size() const -> int { return _gamma->size(); }
            auto words() const -> int { return _gamma_bits.words(); }
            auto p() const -> double { return _p; }
    };

    // F in the order it is embedded, with its part assignment; the optional segment is a final segment
    // completed outside the parts.
    struct EmbedTarget
    {
        OrderedGraph f;                 // natural order
        std::vector<int> phi;           // part of each vertex, -1 on the segment
        VertexSet segment;              // path or cycle order
    };

    // (1/2) (dp)^degree |V_part|
    auto promising_threshold(const HostView & host, int part, int degree, const Rational & d) -> double;

    // images[x] is the host vertex of x, or -1; the target's left neighbours must be mapped.
    auto is_promising(const HostView & host, const EmbedTarget & target, const LookaheadContext & ctx,
            const std::vector<Vertex> & images, const Rational & d) -> bool;

    // Whether the segment extends into `allowed` (minus `avoid`) along colour-class edges. The segment's
    // outside neighbours must be mapped; a found completion is written to `completion` in segment order.
    auto is_completable(const HostView & host, const EmbedTarget & target, const LookaheadContext & ctx,
            const std::vector<Vertex> & images, const VertexBits & allowed, const VertexSet & avoid = {},
            VertexSet * completion = nullptr) -> bool;

    enum class Classification { promising, completable };

    struct CountRequest
    {
        Classification classify = Classification::promising;
        Rational d = Rational(1, 4);
        const VertexBits * allowed = nullptr;   // completion region, for the completable classification
        bool need_total = true;                 // false prunes subtrees already known to be good
        long long stop_when_bad_exceeds = -1;   // negative never stops early
        long long node_budget = -1;             // negative is unlimited
    };

    struct ExtensionCount
    {
        long long total = 0, bad = 0, nodes = 0;
        bool stopped = false;                   // the bad count passed the stopping point
        bool truncated = false;                 // the node budget ran out
    };

    // Extensions of the mapped part of H1 to all of it: injective, Gamma-edges everywhere, colour-class edges
    // and the part assignment on the roots. `bad` counts the unpromising (or uncompletable) ones.
    auto enumerate_extensions(const HostView & host, const EmbedTarget & target, const LookaheadContext & ctx,
            const std::vector<Vertex> & images, const CountRequest & request) -> ExtensionCount;

    // Common colour-class neighbourhood of the images of x's left neighbours inside x's part.
    auto candidate_set(const HostView & host, const EmbedTarget & target, const std::vector<Vertex> & images, Vertex x) -> VertexSet;

    // Smallest |V_phi(y) cap N(v) cap N(images of y's mapped left neighbours)| over later neighbours y of x.
    auto lookahead_score(const HostView & host, const EmbedTarget & target, const std::vector<Vertex> & images, Vertex x, Vertex v) -> long long;

    // Stable reorder of candidates by decreasing lookahead score.
    auto order_by_score(VertexSet & candidates, const std::function<long long (Vertex)> & score) -> void;

    // kappa^(v+1) N^v p^e, with v and e the vertices and edges of H1 not inside [x]
    auto bad_extension_limit(const HostView & host, const EmbedTarget & target, const LookaheadContext & ctx, Vertex x,
            const Rational & kappa) -> double;

    struct StepRecord
    {
        Vertex x = -1;
        long long w_prime = 0;                  // |W'|
        long long examined = 0;                 // candidates tested against the cross-off rule
        long long crossed = 0;                  // of those, how many were crossed off
        std::vector<std::pair<Vertex, long long>> c_sizes;      // full cross-off sets per target, audit mode
        Vertex chosen = -1;
    };

    struct Trajectory
    {
        std::vector<StepRecord> steps;
        std::vector<std::string> failures;
        long long ind1_failures = 0;
        long long ind2_checks = 0, ind2_failures = 0;
        long long c_bound_violations = 0;
        long long boundary_crossoffs = 0;
        long long truncated_counts = 0;
        long long restarts = 0;                 // growth attempts abandoned at a dead end
    };

    // Lookahead state for growing a partite homomorphism of the target into the colour class.
    class Grower
    {
        private:
            const HostView & _host;
            const EmbedTarget & _target;
            ConstantsPack _cp;
            const VertexBits * _free;
            std::vector<LookaheadContext> _contexts;
            std::vector<std::vector<int>> _affected;    // contexts whose H1 contains the vertex
            std::vector<Vertex> _images;
            Trajectory _trajectory;

            auto crossed_for(int context, Vertex x, Vertex v) -> std::optional<bool>;

        public:
            // `free_region` is where the segment is completed; required when the target has a segment.
            Grower(const HostView & host, const EmbedTarget & target, const ConstantsPack & cp, const VertexBits * free_region = nullptr);

            auto contexts() const -> const std::vector<LookaheadContext> & { return _contexts; }
            auto images() const -> const std::vector<Vertex> & { return _images; }
            auto trajectory() -> Trajectory & { return _trajectory; }
            auto trajectory() const -> const Trajectory & { return _trajectory; }

            // W'
            auto candidates(Vertex x) const -> VertexSet;

            // Index of a context for which v is crossed off at step x, if any.
            auto crossing_context(Vertex x, Vertex v) -> std::optional<int>;

            // W together with the size of every cross-off set; logs bound checks into the trajectory.
            auto full_cross_off(Vertex x) -> std::pair<VertexSet, std::vector<std::pair<Vertex, long long>>>;

            // Maps x to v, then audits the degree condition for vertices whose left neighbours are now all
            // mapped and, in audit mode, the bad-extension bounds.
            auto commit(Vertex x, Vertex v) -> void;

            auto record(StepRecord step) -> void { _trajectory.steps.push_back(std::move(step)); }
    };

    // lookahead: the candidate leaving the largest smallest candidate set for later neighbours, ties at random
    enum class ChoicePolicy { random, lowest_index, lookahead };

    auto to_string(ChoicePolicy policy) -> std::string;
    auto parse_choice_policy(const std::string & text) -> ChoicePolicy;

    struct GrowResult
    {
        bool success = false;
        std::vector<Vertex> images;
        Vertex failed_step = -1;
        Trajectory trajectory;
    };

    // Plain growth: each vertex goes to a uniformly random (or the lowest) unused vertex of W.
    auto grow_homomorphism(const HostView & host, const EmbedTarget & target, const ConstantsPack & cp,
            ChoicePolicy policy = ChoicePolicy::random, std::uint64_t seed = 1, const VertexBits * free_region = nullptr) -> GrowResult;
}
