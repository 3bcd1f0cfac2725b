/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/errors.hpp>
#include <ramsey/hsz.hpp>
#include <ramsey/rng.hpp>

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>

using namespace ramsey;

auto ramsey::hsz_class_count(int max_degree, int ell) -> long long
{
    if (max_degree < 0 || ell < 0)
        throw Error(ErrorKind::invalid_input, "degree and distance must be nonnegative");
    long long h = 2;
    for (int i = 0 ; i < ell ; ++i) {
        if (h > (1LL << 50))
            throw Error(ErrorKind::instance_too_large, "class count overflows");
        h *= max_degree;
    }
    return h;
}

namespace
{
    struct Colouring
    {
        const Graph & power;
        int h;
        std::vector<int> colour;
        std::vector<std::vector<int>> conflicts;    // conflicts[v][c]: power-neighbours of v coloured c
        std::vector<int> size;

        Colouring(const Graph & p, int classes) :
            power(p), h(classes), colour(p.size(), -1), conflicts(p.size(), std::vector<int>(classes, 0)), size(classes, 0)
        {
        }

        auto place(Vertex v, int c) -> void
        {
            if (colour[v] != -1) {
                --size[colour[v]];
                for (auto w : power.neighbours(v))
                    --conflicts[w][colour[v]];
            }
            colour[v] = c;
            ++size[c];
            for (auto w : power.neighbours(v))
                ++conflicts[w][c];
        }

        auto mover(int from, int to) const -> std::optional<Vertex>
        {
            for (int v = 0 ; v < power.size() ; ++v)
                if (colour[v] == from && conflicts[v][to] == 0)
                    return v;
            return std::nullopt;
        }

        // shift one vertex along a chain from a largest class to a smallest one
        auto rebalance_step() -> bool
        {
            int largest = *std::max_element(size.begin(), size.end());
            int smallest = *std::min_element(size.begin(), size.end());
            std::vector<int> parent(h, -2);
            std::deque<int> queue;
            for (int c = 0 ; c < h ; ++c)
                if (size[c] == largest) {
                    parent[c] = -1;
                    queue.push_back(c);
                }
            while (! queue.empty()) {
                int a = queue.front();
                queue.pop_front();
                for (int b = 0 ; b < h ; ++b) {
                    if (parent[b] != -2 || ! mover(a, b))
                        continue;
                    parent[b] = a;
                    if (size[b] == smallest) {
                        // walk back, moving from the destination end so each move sees its final target
                        for (int to = b ; parent[to] != -1 ; to = parent[to])
                            place(*mover(parent[to], to), to);
                        return true;
                    }
                    queue.push_back(b);
                }
            }
            return false;
        }

        auto balanced() const -> bool
        {
            return *std::max_element(size.begin(), size.end()) - *std::min_element(size.begin(), size.end()) <= 1;
        }
    };
}

auto ramsey::hajnal_szemeredi_partition(const Graph & f, int ell, int h, std::uint64_t seed, int restarts) -> std::vector<VertexSet>
{
    if (h < 1)
        throw Error(ErrorKind::invalid_input, "need at least one class");
    if (ell < 0)
        throw Error(ErrorKind::invalid_input, "distance must be nonnegative");
    auto power = power_graph(f, ell);
    if (f.size() > 0 && h < power.max_degree() + 1)
        throw Error(ErrorKind::invalid_input, "need at least " + std::to_string(power.max_degree() + 1)
                + " classes for distance " + std::to_string(ell));

    int n = f.size();
    for (int attempt = 0 ; attempt <= restarts ; ++attempt) {
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), 0);
        if (attempt > 0) {
            auto rng = make_rng(seed, static_cast<std::uint64_t>(attempt));
            std::shuffle(order.begin(), order.end(), rng);
        }

        Colouring col(power, h);
        for (auto v : order) {
            int best = -1;
            for (int c = 0 ; c < h ; ++c)
                if (col.conflicts[v][c] == 0 && (best == -1 || col.size[c] < col.size[best]))
                    best = c;
            col.place(v, best);
        }

        long long budget = static_cast<long long>(n) * h + 16;
        while (! col.balanced() && budget-- > 0)
            if (! col.rebalance_step())
                break;
        if (! col.balanced())
            continue;

        std::vector<VertexSet> classes(h);
        for (int v = 0 ; v < n ; ++v)
            classes[col.colour[v]].push_back(v);
        if (! verify_distance_partition(f, classes, ell))
            throw Error(ErrorKind::invariant_violated, "distance partition failed verification");
        return classes;
    }
    throw Error(ErrorKind::budget_exceeded, "rebalancing did not reach an equitable partition");
}

auto ramsey::hajnal_szemeredi_partition_for_degree(const Graph & f, int max_degree, int ell) -> std::vector<VertexSet>
{
    if (max_degree < 1)
        throw Error(ErrorKind::invalid_input, "degree bound must be at least 1");
    if (f.max_degree() > max_degree)
        throw Error(ErrorKind::invalid_input, "graph exceeds the degree bound");
    auto h = hsz_class_count(max_degree, ell);
    if (h > 1000000)
        throw Error(ErrorKind::instance_too_large, "too many classes");
    return hajnal_szemeredi_partition(f, ell, static_cast<int>(h));
}

auto ramsey::verify_distance_partition(const Graph & f, const std::vector<VertexSet> & classes, int ell) -> bool
{
    int n = f.size();
    std::vector<int> owner(n, -1);
    std::size_t lo = SIZE_MAX, hi = 0;
    for (std::size_t c = 0 ; c < classes.size() ; ++c) {
        lo = std::min(lo, classes[c].size());
        hi = std::max(hi, classes[c].size());
        for (auto v : classes[c]) {
            if (v < 0 || v >= n || owner[v] != -1)
                return false;
            owner[v] = static_cast<int>(c);
        }
    }
    if (std::count(owner.begin(), owner.end(), -1) != 0)
        return false;
    if (! classes.empty() && hi - lo > 1)
        return false;

    std::vector<int> dist(n);
    std::vector<Vertex> queue;
    for (int s = 0 ; s < n ; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        queue.assign(1, s);
        for (std::size_t head = 0 ; head < queue.size() ; ++head) {
            auto u = queue[head];
            if (dist[u] == ell)
                continue;
            for (auto w : f.neighbours(u))
                if (dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
        }
        for (auto u : queue)
            if (u != s && owner[u] == owner[s])
                return false;
    }
    return true;
}
