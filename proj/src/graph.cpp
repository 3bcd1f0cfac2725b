/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/errors.hpp>
#include <ramsey/graph.hpp>

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <string>

using namespace ramsey;

Graph::Graph(int n) :
    _adj(n)
{
    if (n < 0)
        throw Error(ErrorKind::invalid_input, "negative vertex count");
}

auto Graph::from_edges(int n, const std::vector<Edge> & edges) -> Graph
{
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw Error(ErrorKind::invalid_input, "edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
        if (u == v)
            throw Error(ErrorKind::invalid_input, "self-loop at " + std::to_string(u));
        g._adj[u].push_back(v);
        g._adj[v].push_back(u);
    }
    long long twice = 0;
    for (auto & a : g._adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        twice += static_cast<long long>(a.size());
    }
    g._edge_count = twice / 2;
    return g;
}

auto Graph::adjacent(Vertex u, Vertex v) const -> bool
{
    const auto & a = _adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

auto Graph::edges() const -> std::vector<Edge>
{
    std::vector<Edge> result;
    result.reserve(_edge_count);
    for (int u = 0 ; u < size() ; ++u)
        for (auto v : _adj[u])
            if (u < v)
                result.emplace_back(u, v);
    return result;
}

auto Graph::max_degree() const -> int
{
    int result = 0;
    for (auto & a : _adj)
        result = std::max(result, static_cast<int>(a.size()));
    return result;
}

auto Distance::value() const -> int
{
    if (! is_finite())
        throw Error(ErrorKind::invalid_input, "value of an infinite distance");
    return _hops;
}

auto Distance::operator<=> (const Distance & other) const -> std::strong_ordering
{
    if (is_finite() && other.is_finite())
        return _hops <=> other._hops;
    if (is_finite())
        return std::strong_ordering::less;
    if (other.is_finite())
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

OrderedGraph::OrderedGraph(Graph graph, std::vector<Vertex> order) :
    _graph(std::move(graph)),
    _order(std::move(order)),
    _rank(_graph.size(), -1)
{
    if (static_cast<int>(_order.size()) != _graph.size())
        throw Error(ErrorKind::invalid_input, "order length differs from vertex count");
    for (int i = 0 ; i < static_cast<int>(_order.size()) ; ++i) {
        auto v = _order[i];
        if (v < 0 || v >= _graph.size() || _rank[v] != -1)
            throw Error(ErrorKind::invalid_input, "order is not a permutation");
        _rank[v] = i;
    }
}

auto OrderedGraph::natural(Graph graph) -> OrderedGraph
{
    std::vector<Vertex> order(graph.size());
    std::iota(order.begin(), order.end(), 0);
    return OrderedGraph{ std::move(graph), std::move(order) };
}

auto OrderedGraph::left_neighbours(Vertex v) const -> VertexSet
{
    VertexSet result;
    for (auto w : _graph.neighbours(v))
        if (_rank[w] < _rank[v])
            result.push_back(w);
    return result;
}

auto OrderedGraph::left_degree(Vertex v) const -> int
{
    int result = 0;
    for (auto w : _graph.neighbours(v))
        if (_rank[w] < _rank[v])
            ++result;
    return result;
}

auto OrderedGraph::max_left_degree() const -> int
{
    int result = 0;
    for (int v = 0 ; v < size() ; ++v)
        result = std::max(result, left_degree(v));
    return result;
}

auto OrderedGraph::is_degenerate(int d) const -> bool
{
    return max_left_degree() <= d;
}

auto ramsey::degeneracy_order(const Graph & g) -> std::pair<OrderedGraph, int>
{
    int n = g.size();
    std::vector<int> remaining_degree(n);
    std::set<std::pair<int, Vertex>> queue;
    for (int v = 0 ; v < n ; ++v) {
        remaining_degree[v] = g.degree(v);
        queue.emplace(remaining_degree[v], v);
    }

    std::vector<bool> removed(n, false);
    std::vector<Vertex> peeled;
    int degeneracy = 0;
    while (! queue.empty()) {
        auto [deg, v] = *queue.begin();
        queue.erase(queue.begin());
        degeneracy = std::max(degeneracy, deg);
        removed[v] = true;
        peeled.push_back(v);
        for (auto w : g.neighbours(v))
            if (! removed[w]) {
                queue.erase({ remaining_degree[w], w });
                queue.emplace(--remaining_degree[w], w);
            }
    }

    // a peeled vertex keeps its remaining neighbours on its left
    std::reverse(peeled.begin(), peeled.end());
    return { OrderedGraph{ g, std::move(peeled) }, degeneracy };
}

auto ramsey::left_distances_from(const OrderedGraph & og, Vertex y) -> std::vector<Distance>
{
    const auto & g = og.graph();
    std::vector<Distance> dist(g.size(), Distance::infinite());
    dist[y] = Distance::finite(0);
    std::deque<Vertex> queue{ y };
    while (! queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto w : g.neighbours(v))
            if (og.rank(w) < og.rank(v) && ! dist[w].is_finite()) {
                dist[w] = Distance::finite(dist[v].value() + 1);
                queue.push_back(w);
            }
    }
    return dist;
}

auto ramsey::left_distance(const OrderedGraph & og, Vertex y, Vertex x) -> Distance
{
    if (y < 0 || x < 0 || y >= og.size() || x >= og.size())
        throw Error(ErrorKind::invalid_input, "vertex out of range");
    if (og.rank(x) > og.rank(y))
        throw Error(ErrorKind::invalid_input, "left distance needs x ranked no later than y");
    return left_distances_from(og, y)[x];
}

auto ramsey::distances_from(const Graph & g, Vertex x) -> std::vector<Distance>
{
    std::vector<Distance> dist(g.size(), Distance::infinite());
    dist[x] = Distance::finite(0);
    std::deque<Vertex> queue{ x };
    while (! queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto w : g.neighbours(v))
            if (! dist[w].is_finite()) {
                dist[w] = Distance::finite(dist[v].value() + 1);
                queue.push_back(w);
            }
    }
    return dist;
}

auto ramsey::graph_distance(const Graph & g, Vertex x, Vertex y) -> Distance
{
    if (x < 0 || y < 0 || x >= g.size() || y >= g.size())
        throw Error(ErrorKind::invalid_input, "vertex out of range");
    return distances_from(g, x)[y];
}

auto ramsey::power_graph(const Graph & g, int ell) -> Graph
{
    if (ell < 1)
        throw Error(ErrorKind::invalid_input, "power needs ell >= 1");
    std::vector<Edge> edges;
    for (int x = 0 ; x < g.size() ; ++x) {
        // depth-limited BFS
        std::vector<int> depth(g.size(), -1);
        depth[x] = 0;
        std::deque<Vertex> queue{ x };
        while (! queue.empty()) {
            auto v = queue.front();
            queue.pop_front();
            if (depth[v] == ell)
                continue;
            for (auto w : g.neighbours(v))
                if (depth[w] == -1) {
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                    if (x < w)
                        edges.emplace_back(x, w);
                }
        }
    }
    return Graph::from_edges(g.size(), edges);
}

auto ramsey::induced(const Graph & g, const VertexSet & s) -> InducedSubgraph
{
    InducedSubgraph result;
    result.from_parent.assign(g.size(), -1);
    for (auto v : s) {
        if (v < 0 || v >= g.size())
            throw Error(ErrorKind::invalid_input, "vertex out of range: " + std::to_string(v));
        if (result.from_parent[v] != -1)
            throw Error(ErrorKind::invalid_input, "repeated vertex in subset: " + std::to_string(v));
        result.from_parent[v] = static_cast<int>(result.to_parent.size());
        result.to_parent.push_back(v);
    }

    std::vector<Edge> edges;
    for (auto v : s)
        for (auto w : g.neighbours(v))
            if (v < w && result.from_parent[w] != -1)
                edges.emplace_back(result.from_parent[v], result.from_parent[w]);
    result.graph = Graph::from_edges(static_cast<int>(s.size()), edges);
    return result;
}

auto ramsey::induced_ordered(const OrderedGraph & og, const VertexSet & s) -> std::pair<OrderedGraph, InducedSubgraph>
{
    auto sub = induced(og.graph(), s);
    std::vector<Vertex> local(s.size());
    std::iota(local.begin(), local.end(), 0);
    std::sort(local.begin(), local.end(), [&] (Vertex a, Vertex b) {
            return og.rank(sub.to_parent[a]) < og.rank(sub.to_parent[b]); });
    return { OrderedGraph{ sub.graph, local }, std::move(sub) };
}

auto ramsey::relabel_by_order(const OrderedGraph & og) -> RelabelledOrder
{
    RelabelledOrder result;
    result.to_original = og.order();
    result.from_original.assign(og.size(), -1);
    for (int i = 0 ; i < og.size() ; ++i)
        result.from_original[og.order()[i]] = i;
    std::vector<Edge> edges;
    for (auto [u, v] : og.graph().edges())
        edges.emplace_back(result.from_original[u], result.from_original[v]);
    result.graph = OrderedGraph::natural(Graph::from_edges(og.size(), edges));
    return result;
}

namespace
{
    auto membership(const Graph & g, const VertexSet & x) -> std::vector<char>
    {
        std::vector<char> in(g.size(), 0);
        for (auto v : x) {
            if (v < 0 || v >= g.size())
                throw Error(ErrorKind::invalid_input, "vertex out of range: " + std::to_string(v));
            in[v] = 1;
        }
        return in;
    }
}

auto ramsey::edges_within(const Graph & g, const VertexSet & x) -> long long
{
    auto in = membership(g, x);
    long long twice = 0;
    for (int v = 0 ; v < g.size() ; ++v)
        if (in[v])
            for (auto w : g.neighbours(v))
                twice += in[w];
    return twice / 2;
}

auto ramsey::edges_between(const Graph & g, const VertexSet & x, const VertexSet & y) -> long long
{
    auto in_y = membership(g, y);
    long long result = 0;
    for (auto v : x) {
        if (v < 0 || v >= g.size())
            throw Error(ErrorKind::invalid_input, "vertex out of range: " + std::to_string(v));
        for (auto w : g.neighbours(v))
            result += in_y[w];
    }
    return result;
}

auto ramsey::joint_neighbourhood(const Graph & g, const VertexSet & s, const VertexSet & x) -> VertexSet
{
    VertexSet result;
    for (auto v : x) {
        if (v < 0 || v >= g.size())
            throw Error(ErrorKind::invalid_input, "vertex out of range: " + std::to_string(v));
        bool all = true;
        for (auto u : s)
            if (! g.adjacent(u, v)) {
                all = false;
                break;
            }
        if (all)
            result.push_back(v);
    }
    return result;
}

auto ramsey::joint_neighbourhood(const Graph & g, const VertexSet & s) -> VertexSet
{
    VertexSet all(g.size());
    std::iota(all.begin(), all.end(), 0);
    if (s.empty())
        return all;
    VertexSet result = g.neighbours(s.front());
    for (std::size_t i = 1 ; i < s.size() ; ++i) {
        VertexSet next;
        const auto & other = g.neighbours(s[i]);
        std::set_intersection(result.begin(), result.end(), other.begin(), other.end(), std::back_inserter(next));
        result = std::move(next);
    }
    return result;
}

auto ramsey::connected_components(const Graph & g) -> std::vector<VertexSet>
{
    std::vector<int> component(g.size(), -1);
    std::vector<VertexSet> result;
    for (int s = 0 ; s < g.size() ; ++s) {
        if (component[s] != -1)
            continue;
        int id = static_cast<int>(result.size());
        result.emplace_back();
        std::deque<Vertex> queue{ s };
        component[s] = id;
        while (! queue.empty()) {
            auto v = queue.front();
            queue.pop_front();
            result.back().push_back(v);
            for (auto w : g.neighbours(v))
                if (component[w] == -1) {
                    component[w] = id;
                    queue.push_back(w);
                }
        }
        std::sort(result.back().begin(), result.back().end());
    }
    return result;
}

auto ramsey::is_connected(const Graph & g) -> bool
{
    return connected_components(g).size() <= 1;
}

auto ramsey::complete_graph(int n) -> Graph
{
    std::vector<Edge> edges;
    for (int u = 0 ; u < n ; ++u)
        for (int v = u + 1 ; v < n ; ++v)
            edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

auto ramsey::path_graph(int n) -> Graph
{
    std::vector<Edge> edges;
    for (int v = 0 ; v + 1 < n ; ++v)
        edges.emplace_back(v, v + 1);
    return Graph::from_edges(n, edges);
}

auto ramsey::cycle_graph(int n) -> Graph
{
    if (n < 3)
        throw Error(ErrorKind::invalid_input, "cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (int v = 0 ; v < n ; ++v)
        edges.emplace_back(v, (v + 1) % n);
    return Graph::from_edges(n, edges);
}

auto ramsey::complete_bipartite(int a, int b) -> Graph
{
    std::vector<Edge> edges;
    for (int u = 0 ; u < a ; ++u)
        for (int v = 0 ; v < b ; ++v)
            edges.emplace_back(u, a + v);
    return Graph::from_edges(a + b, edges);
}

auto ramsey::disjoint_union(const std::vector<Graph> & parts) -> Graph
{
    std::vector<Edge> edges;
    int offset = 0;
    for (auto & part : parts) {
        for (auto [u, v] : part.edges())
            edges.emplace_back(u + offset, v + offset);
        offset += part.size();
    }
    return Graph::from_edges(offset, edges);
}
