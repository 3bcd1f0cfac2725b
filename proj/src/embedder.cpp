/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/embedder.hpp>
#include <ramsey/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace ramsey;

HostView::HostView(const Graph & gamma, const Graph & colour, std::vector<VertexSet> parts, double p) :
    _gamma(&gamma),
    _colour(&colour),
    _gamma_bits(gamma),
    _colour_bits(colour),
    _parts(std::move(parts)),
    _everything(gamma.size()),
    _p(p)
{
    if (gamma.size() != colour.size())
        throw Error(ErrorKind::invalid_input, "colour class and host differ in size");
    for (auto & part : _parts) {
        for (auto v : part)
            if (v < 0 || v >= gamma.size())
                throw Error(ErrorKind::invalid_input, "part vertex out of range");
        _part_bits.emplace_back(gamma.size(), part);
    }
    for (int v = 0 ; v < gamma.size() ; ++v)
        _everything.set(v);
}

auto ramsey::to_string(ChoicePolicy policy) -> std::string
{
    switch (policy) {
        case ChoicePolicy::random: return "random";
        case ChoicePolicy::lowest_index: return "lowest_index";
        case ChoicePolicy::lookahead: return "lookahead";
    }
    throw Error(ErrorKind::invalid_input, "unknown choice policy");
}

auto ramsey::parse_choice_policy(const std::string & text) -> ChoicePolicy
{
    if (text == "random")
        return ChoicePolicy::random;
    if (text == "lowest_index")
        return ChoicePolicy::lowest_index;
    if (text == "lookahead")
        return ChoicePolicy::lookahead;
    throw Error(ErrorKind::invalid_input, "unknown choice policy '" + text + "'");
}

auto ramsey::promising_threshold(const HostView & host, int part, int degree, const Rational & d) -> double
{
    return 0.5 * std::pow(to_double(d) * host.p(), degree) * double(host.part(part).size());
}

namespace
{
    auto mapped_image(const std::vector<Vertex> & images, Vertex w) -> Vertex
    {
        if (images[w] == -1)
            throw Error(ErrorKind::invalid_input, "pattern vertex " + std::to_string(w) + " is not mapped");
        return images[w];
    }

    auto popcount_words(const Word * w, int words) -> long long
    {
        long long result = 0;
        for (int i = 0 ; i < words ; ++i)
            result += std::popcount(w[i]);
        return result;
    }

    auto test_bit(const Word * w, Vertex v) -> bool
    {
        return (w[v >> 6] >> (v & 63)) & 1;
    }
}

auto ramsey::is_promising(const HostView & host, const EmbedTarget & target, const LookaheadContext & ctx,
        const std::vector<Vertex> & images, const Rational & d) -> bool
{
    if (ctx.segment)
        throw Error(ErrorKind::invalid_input, "promising embeddings are defined for single targets");
    Vertex y = ctx.targets.front();
    int part = target.phi[y];
    std::vector<const Word *> rows;
    for (auto w : ctx.decisive)
        rows.push_back(host.colour_row(mapped_image(images, w)));
    auto common = count_common(host.part_bits(part).data(), rows, host.words());
    return double(common) >= promising_threshold(host, part, static_cast<int>(ctx.decisive.size()), d);
}

auto ramsey::is_completable(const HostView & host, const EmbedTarget & target, const LookaheadContext & ctx,
        const std::vector<Vertex> & images, const VertexBits & allowed, const VertexSet & avoid, VertexSet * completion) -> bool
{
    if (! ctx.segment)
        throw Error(ErrorKind::invalid_input, "completion needs a segment context");
    const auto & q = ctx.targets;
    const auto & f = target.f.graph();
    int words = host.words();
    std::vector<int> position(f.size(), -1);
    for (std::size_t i = 0 ; i < q.size() ; ++i)
        position[q[i]] = static_cast<int>(i);

    VertexBits blocked(host.size());
    for (auto v : avoid)
        blocked.set(v);
    for (auto w : ctx.decisive)
        blocked.set(mapped_image(images, w));

    // per segment vertex, rows fixed by mapped outside neighbours
    std::vector<std::vector<Word>> base(q.size(), std::vector<Word>(allowed.data(), allowed.data() + words));
    for (std::size_t i = 0 ; i < q.size() ; ++i) {
        for (int k = 0 ; k < words ; ++k)
            base[i][k] &= ~blocked.data()[k];
        for (auto w : f.neighbours(q[i]))
            if (position[w] == -1) {
                auto row = host.colour_row(mapped_image(images, w));
                for (int k = 0 ; k < words ; ++k)
                    base[i][k] &= row[k];
            }
    }

    VertexSet placed(q.size(), -1);
    auto go = [&] (auto & self, std::size_t i) -> bool {
        if (i == q.size())
            return true;
        std::vector<Word> local = base[i];
        for (auto w : f.neighbours(q[i]))
            if (position[w] != -1 && position[w] < static_cast<int>(i)) {
                auto row = host.colour_row(placed[position[w]]);
                for (int k = 0 ; k < words ; ++k)
                    local[k] &= row[k];
            }
        for (std::size_t j = 0 ; j < i ; ++j)
            local[placed[j] >> 6] &= ~(Word{ 1 } << (placed[j] & 63));
        for (int k = 0 ; k < words ; ++k)
            for (Word bits = local[k] ; bits ; bits &= bits - 1) {
                placed[i] = k * 64 + std::countr_zero(bits);
                if (self(self, i + 1))
                    return true;
            }
        placed[i] = -1;
        return false;
    };
    bool ok = go(go, 0);
    if (ok && completion)
        *completion = placed;
    return ok;
}

namespace
{
    class ExtensionSearch
    {
        private:
            struct Constraint
            {
                Vertex w;
                bool colour;
            };

            const HostView & _host;
            const EmbedTarget & _target;
            const LookaheadContext & _ctx;
            const CountRequest & _request;
            std::vector<Vertex> _images;
            std::vector<Vertex> _order;
            std::vector<std::vector<Constraint>> _constraints;
            std::vector<int> _part;                     // part of each position, -1 when unrestricted
            std::vector<std::vector<Word>> _buffers;
            std::vector<Vertex> _used;
            int _classify_at = -1;                      // position completing the decisive set
            bool _broken = false;                       // mapped part not injective
            int _words;
            ExtensionCount _result;

            enum class State { unknown, good, bad };

            auto classify() -> bool
            {
                if (_request.classify == Classification::promising)
                    return is_promising(_host, _target, _ctx, _images, _request.d);
                if (! _request.allowed)
                    throw Error(ErrorKind::invalid_input, "completable classification needs an allowed region");
                VertexSet avoid;
                for (auto v : _ctx.h0)
                    if (_images[v] != -1)
                        avoid.push_back(_images[v]);
                return is_completable(_host, _target, _ctx, _images, *_request.allowed, avoid);
            }

            auto halt() const -> bool
            {
                return _result.stopped || _result.truncated;
            }

            auto add(long long count, State state) -> void
            {
                _result.total += count;
                if (state == State::bad) {
                    _result.bad += count;
                    if (_request.stop_when_bad_exceeds >= 0 && _result.bad > _request.stop_when_bad_exceeds)
                        _result.stopped = true;
                }
            }

            auto go(std::size_t pos, State state) -> void
            {
                if (pos == _order.size()) {
                    add(1, state);
                    return;
                }
                auto & mask = _buffers[pos];
                if (_part[pos] >= 0)
                    std::copy(_host.part_bits(_part[pos]).data(), _host.part_bits(_part[pos]).data() + _words, mask.begin());
                else
                    std::copy(_host.everything().data(), _host.everything().data() + _words, mask.begin());
                for (auto & c : _constraints[pos]) {
                    auto row = c.colour ? _host.colour_row(_images[c.w]) : _host.gamma_row(_images[c.w]);
                    for (int k = 0 ; k < _words ; ++k)
                        mask[k] &= row[k];
                }

                if (pos + 1 == _order.size() && static_cast<int>(pos) != _classify_at) {
                    long long count = popcount_words(mask.data(), _words);
                    for (auto v : _used)
                        if (test_bit(mask.data(), v))
                            --count;
                    add(count, state);
                    return;
                }

                Vertex u = _order[pos];
                for (int k = 0 ; k < _words && ! halt() ; ++k)
                    for (Word bits = mask[k] ; bits && ! halt() ; bits &= bits - 1) {
                        Vertex v = k * 64 + std::countr_zero(bits);
                        if (std::find(_used.begin(), _used.end(), v) != _used.end())
                            continue;
                        if (_request.node_budget >= 0 && ++_result.nodes > _request.node_budget) {
                            _result.truncated = true;
                            break;
                        }
                        _images[u] = v;
                        _used.push_back(v);
                        State next = state;
                        if (static_cast<int>(pos) == _classify_at)
                            next = classify() ? State::good : State::bad;
                        if (! (next == State::good && ! _request.need_total))
                            go(pos + 1, next);
                        _used.pop_back();
                        _images[u] = -1;
                    }
            }

        public:
            ExtensionSearch(const HostView & host, const EmbedTarget & target, const LookaheadContext & ctx,
                    const std::vector<Vertex> & images, const CountRequest & request) :
                _host(host), _target(target), _ctx(ctx), _request(request), _images(target.f.size(), -1), _words(host.words())
            {
                const auto & f = target.f.graph();
                std::vector<char> in_h1(f.size(), 0), in_h0(f.size(), 0), decisive(f.size(), 0), placed(f.size(), 0);
                for (auto v : ctx.h1)
                    in_h1[v] = 1;
                for (auto v : ctx.h0)
                    in_h0[v] = 1;
                for (auto v : ctx.decisive)
                    decisive[v] = 1;

                VertexSet unmapped;
                for (auto v : ctx.h1) {
                    if (images[v] != -1) {
                        _images[v] = images[v];
                        _used.push_back(images[v]);
                        placed[v] = 1;
                    }
                    else
                        unmapped.push_back(v);
                }
                auto sorted_used = _used;
                std::sort(sorted_used.begin(), sorted_used.end());
                _broken = std::adjacent_find(sorted_used.begin(), sorted_used.end()) != sorted_used.end();

                // decisive vertices first, then the other roots, then the rest; greedily most-constrained
                auto group = [&] (Vertex v) { return decisive[v] ? 0 : in_h0[v] ? 1 : 2; };
                while (! unmapped.empty()) {
                    auto best = unmapped.begin();
                    int best_links = -1;
                    for (auto it = unmapped.begin() ; it != unmapped.end() ; ++it) {
                        int links = 0;
                        for (auto w : f.neighbours(*it))
                            links += in_h1[w] && placed[w];
                        if (group(*it) < group(*best) || (group(*it) == group(*best) && links > best_links)) {
                            best = it;
                            best_links = links;
                        }
                    }
                    Vertex u = *best;
                    unmapped.erase(best);
                    std::vector<Constraint> cons;
                    for (auto w : f.neighbours(u))
                        if (in_h1[w] && placed[w])
                            cons.push_back(Constraint{ w, in_h0[u] && in_h0[w] });
                    _order.push_back(u);
                    _constraints.push_back(std::move(cons));
                    _part.push_back(in_h0[u] ? target.phi[u] : -1);
                    placed[u] = 1;
                    if (decisive[u])
                        _classify_at = static_cast<int>(_order.size()) - 1;
                }
                _buffers.assign(_order.size(), std::vector<Word>(_words));
            }

            auto run() -> ExtensionCount
            {
                if (_broken)
                    return _result;
                State state = State::unknown;
                if (_classify_at == -1) {
                    state = classify() ? State::good : State::bad;
                    if (state == State::good && ! _request.need_total)
                        return _result;
                }
                go(0, state);
                return _result;
            }
    };
}

auto ramsey::enumerate_extensions(const HostView & host, const EmbedTarget & target, const LookaheadContext & ctx,
        const std::vector<Vertex> & images, const CountRequest & request) -> ExtensionCount
{
    if (static_cast<int>(images.size()) != target.f.size())
        throw Error(ErrorKind::invalid_input, "image vector does not match the pattern");
    if (ctx.h1.size() > 24)
        throw Error(ErrorKind::instance_too_large, "lookahead graph too large to enumerate");
    ExtensionSearch search(host, target, ctx, images, request);
    return search.run();
}

auto ramsey::candidate_set(const HostView & host, const EmbedTarget & target, const std::vector<Vertex> & images, Vertex x) -> VertexSet
{
    int part = target.phi[x];
    if (part < 0)
        throw Error(ErrorKind::invalid_input, "segment vertices have no candidate set");
    std::vector<const Word *> rows;
    for (auto w : target.f.left_neighbours(x))
        rows.push_back(host.colour_row(mapped_image(images, w)));
    return common_members(host.part_bits(part).data(), rows, host.words());
}

auto ramsey::lookahead_score(const HostView & host, const EmbedTarget & target, const std::vector<Vertex> & images, Vertex x, Vertex v) -> long long
{
    long long best = std::numeric_limits<long long>::max();
    for (auto y : target.f.graph().neighbours(x)) {
        if (y < x || target.phi[y] < 0 || images[y] != -1)
            continue;
        std::vector<const Word *> rows{ host.colour_row(v) };
        for (auto w : target.f.left_neighbours(y))
            if (w != x && images[w] != -1)
                rows.push_back(host.colour_row(images[w]));
        best = std::min<long long>(best, count_common(host.part_bits(target.phi[y]).data(), rows, host.words()));
    }
    return best;
}

auto ramsey::order_by_score(VertexSet & candidates, const std::function<long long (Vertex)> & score) -> void
{
    std::vector<std::pair<long long, Vertex>> keyed;
    for (auto v : candidates)
        keyed.emplace_back(score(v), v);
    std::stable_sort(keyed.begin(), keyed.end(), [] (const auto & a, const auto & b) { return a.first > b.first; });
    for (std::size_t i = 0 ; i < keyed.size() ; ++i)
        candidates[i] = keyed[i].second;
}

auto ramsey::bad_extension_limit(const HostView & host, const EmbedTarget & target, const LookaheadContext & ctx, Vertex x,
        const Rational & kappa) -> double
{
    const auto & f = target.f.graph();
    int v = 0, e = 0;
    for (auto u : ctx.h1) {
        if (u > x)
            ++v;
        for (auto w : f.neighbours(u))
            if (w > u && std::binary_search(ctx.h1.begin(), ctx.h1.end(), w) && w > x)
                ++e;
    }
    double N = host.size();
    return std::pow(to_double(kappa), v + 1) * std::pow(N, v) * std::pow(host.p(), e);
}

Grower::Grower(const HostView & host, const EmbedTarget & target, const ConstantsPack & cp, const VertexBits * free_region) :
    _host(host), _target(target), _cp(cp), _free(free_region), _images(target.f.size(), -1)
{
    int n = target.f.size();
    if (static_cast<int>(target.phi.size()) != n)
        throw Error(ErrorKind::invalid_input, "part assignment does not match the pattern");
    std::vector<char> in_segment(n, 0);
    for (auto v : target.segment)
        in_segment[v] = 1;
    for (int x = 0 ; x < n ; ++x) {
        if (in_segment[x])
            continue;
        if (target.phi[x] < 0 || target.phi[x] >= host.part_count())
            throw Error(ErrorKind::invalid_input, "part assignment out of range");
        if (target.f.left_degree(x) == 0)
            continue;
        auto ctx = build_lookahead(target.f, x, cp);
        if (! ctx.h1.empty())
            _contexts.push_back(std::move(ctx));
    }
    if (! target.segment.empty()) {
        if (! free_region)
            throw Error(ErrorKind::invalid_input, "segment completion needs a free region");
        auto ctx = build_segment_lookahead(target.f, target.segment, cp);
        if (! ctx.h1.empty())
            _contexts.push_back(std::move(ctx));
    }
    _affected.assign(n, {});
    for (int i = 0 ; i < static_cast<int>(_contexts.size()) ; ++i)
        for (auto x : _contexts[i].h1)
            _affected[x].push_back(i);
}

auto Grower::candidates(Vertex x) const -> VertexSet
{
    return candidate_set(_host, _target, _images, x);
}

auto Grower::crossed_for(int context, Vertex x, Vertex v) -> std::optional<bool>
{
    const auto & ctx = _contexts[context];
    double limit = bad_extension_limit(_host, _target, ctx, x, _cp.kappa);
    CountRequest request;
    request.classify = ctx.segment ? Classification::completable : Classification::promising;
    request.d = _cp.d;
    request.allowed = _free;
    request.need_total = false;
    request.stop_when_bad_exceeds = limit >= 9e18 ? -1 : static_cast<long long>(std::floor(limit));
    request.node_budget = _cp.count_budget;
    _images[x] = v;
    auto count = enumerate_extensions(_host, _target, ctx, _images, request);
    _images[x] = -1;
    if (count.truncated)
        return std::nullopt;
    return double(count.bad) > limit;
}

auto Grower::crossing_context(Vertex x, Vertex v) -> std::optional<int>
{
    for (auto c : _affected[x]) {
        auto crossed = crossed_for(c, x, v);
        if (! crossed)
            ++_trajectory.truncated_counts;
        else if (*crossed)
            return c;
    }
    return std::nullopt;
}

auto Grower::full_cross_off(Vertex x) -> std::pair<VertexSet, std::vector<std::pair<Vertex, long long>>>
{
    auto w_prime = candidates(x);
    std::vector<char> crossed(w_prime.size(), 0);
    std::vector<std::pair<Vertex, long long>> sizes;
    double bound = to_double(_cp.kappa) * double(_host.size()) * std::pow(_host.p(), _target.f.left_degree(x));
    for (auto c : _affected[x]) {
        long long size = 0;
        for (std::size_t i = 0 ; i < w_prime.size() ; ++i) {
            auto r = crossed_for(c, x, w_prime[i]);
            if (! r)
                ++_trajectory.truncated_counts;
            else if (*r) {
                crossed[i] = 1;
                ++size;
            }
        }
        const auto & ctx = _contexts[c];
        sizes.emplace_back(ctx.targets.front(), size);
        if (double(size) > bound)
            ++_trajectory.c_bound_violations;
        if (size > 0 && std::binary_search(ctx.boundary.begin(), ctx.boundary.end(), x))
            ++_trajectory.boundary_crossoffs;
    }
    VertexSet w;
    for (std::size_t i = 0 ; i < w_prime.size() ; ++i)
        if (! crossed[i])
            w.push_back(w_prime[i]);
    return { w, sizes };
}

auto Grower::commit(Vertex x, Vertex v) -> void
{
    _images[x] = v;
    const auto & f = _target.f;
    std::vector<char> in_segment(f.size(), 0);
    for (auto s : _target.segment)
        in_segment[s] = 1;

    for (auto b : f.graph().neighbours(x)) {
        if (b <= x || in_segment[b])
            continue;
        auto left = f.left_neighbours(b);
        if (*std::max_element(left.begin(), left.end()) != x)
            continue;
        std::vector<const Word *> rows;
        for (auto w : left)
            rows.push_back(_host.colour_row(_images[w]));
        auto common = count_common(_host.part_bits(_target.phi[b]).data(), rows, _host.words());
        if (double(common) < promising_threshold(_host, _target.phi[b], static_cast<int>(left.size()), _cp.d)) {
            ++_trajectory.ind1_failures;
            _trajectory.failures.push_back("degree condition fails for vertex " + std::to_string(b) + " after step " + std::to_string(x));
        }
    }

    if (! _cp.audit)
        return;
    for (auto c : _affected[x]) {
        const auto & ctx = _contexts[c];
        if (ctx.decisive.empty() || x >= *std::max_element(ctx.decisive.begin(), ctx.decisive.end()))
            continue;
        double limit = bad_extension_limit(_host, _target, ctx, x, _cp.kappa);
        CountRequest request;
        request.classify = ctx.segment ? Classification::completable : Classification::promising;
        request.d = _cp.d;
        request.allowed = _free;
        request.need_total = false;
        request.stop_when_bad_exceeds = limit >= 9e18 ? -1 : static_cast<long long>(std::floor(limit));
        request.node_budget = _cp.count_budget;
        auto count = enumerate_extensions(_host, _target, ctx, _images, request);
        if (count.truncated) {
            ++_trajectory.truncated_counts;
            continue;
        }
        ++_trajectory.ind2_checks;
        if (double(count.bad) > limit) {
            ++_trajectory.ind2_failures;
            _trajectory.failures.push_back("bad-extension bound fails for target " + std::to_string(ctx.targets.front())
                    + " after step " + std::to_string(x));
        }
    }
}

auto ramsey::grow_homomorphism(const HostView & host, const EmbedTarget & target, const ConstantsPack & cp,
        ChoicePolicy policy, std::uint64_t seed, const VertexBits * free_region) -> GrowResult
{
    GrowResult result;
    Grower grower(host, target, cp, free_region);
    auto rng = make_rng(seed, 0x67726f77);
    int n = target.f.size();
    std::vector<char> in_segment(n, 0), used(host.size(), 0);
    for (auto s : target.segment)
        in_segment[s] = 1;

    for (Vertex x = 0 ; x < n ; ++x) {
        if (in_segment[x])
            continue;
        StepRecord step;
        step.x = x;
        VertexSet w;
        if (cp.audit) {
            auto [full, sizes] = grower.full_cross_off(x);
            step.w_prime = static_cast<long long>(grower.candidates(x).size());
            step.c_sizes = sizes;
            for (auto v : full)
                if (! used[v])
                    w.push_back(v);
        }
        else {
            w = grower.candidates(x);
            step.w_prime = static_cast<long long>(w.size());
            std::erase_if(w, [&] (Vertex v) { return used[v]; });
        }
        if (policy != ChoicePolicy::lowest_index)
            std::shuffle(w.begin(), w.end(), rng);
        if (policy == ChoicePolicy::lookahead)
            order_by_score(w, [&] (Vertex v) { return lookahead_score(host, target, grower.images(), x, v); });

        for (auto v : w) {
            if (! cp.audit) {
                ++step.examined;
                if (grower.crossing_context(x, v)) {
                    ++step.crossed;
                    continue;
                }
            }
            step.chosen = v;
            break;
        }
        if (step.chosen == -1) {
            grower.trajectory().failures.push_back("no admissible vertex for " + std::to_string(x));
            grower.record(step);
            result.failed_step = x;
            result.trajectory = grower.trajectory();
            result.images = grower.images();
            return result;
        }
        used[step.chosen] = 1;
        grower.commit(x, step.chosen);
        grower.record(step);
    }

    result.images = grower.images();
    if (! target.segment.empty()) {
        const LookaheadContext * seg = nullptr;
        for (auto & ctx : grower.contexts())
            if (ctx.segment)
                seg = &ctx;
        LookaheadContext bare;
        if (! seg) {
            bare.targets = target.segment;
            bare.segment = true;
            seg = &bare;
        }
        VertexSet avoid, completion;
        for (auto v : result.images)
            if (v != -1)
                avoid.push_back(v);
        LookaheadContext full = *seg;
        full.decisive.clear();
        for (auto q : target.segment)
            for (auto w : target.f.graph().neighbours(q))
                if (! in_segment[w])
                    full.decisive.push_back(w);
        if (! is_completable(host, target, full, result.images, *free_region, avoid, &completion)) {
            grower.trajectory().failures.push_back("segment completion failed");
            result.trajectory = grower.trajectory();
            result.failed_step = target.segment.front();
            return result;
        }
        for (std::size_t i = 0 ; i < target.segment.size() ; ++i)
            result.images[target.segment[i]] = completion[i];
    }
    result.success = true;
    result.trajectory = grower.trajectory();
    return result;
}
