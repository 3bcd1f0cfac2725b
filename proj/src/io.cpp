/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/errors.hpp>
#include <ramsey/io.hpp>

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

using namespace ramsey;

auto ramsey::write_edge_list(std::ostream & out, const Graph & g) -> void
{
    out << g.size() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges())
        out << u << " " << v << "\n";
}

auto ramsey::write_edge_list(std::ostream & out, const OrderedGraph & og) -> void
{
    write_edge_list(out, og.graph());
    out << "order:";
    for (auto v : og.order())
        out << " " << v;
    out << "\n";
}

auto ramsey::read_edge_list(std::istream & in) -> OrderedGraph
{
    long long n = -1, m = -1;
    if (! (in >> n >> m) || n < 0 || m < 0)
        throw Error(ErrorKind::io, "edge list must start with 'n m'");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (long long i = 0 ; i < m ; ++i) {
        long long u, v;
        if (! (in >> u >> v))
            throw Error(ErrorKind::io, "edge list ended after " + std::to_string(i) + " of " + std::to_string(m) + " edges");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    auto g = Graph::from_edges(static_cast<int>(n), edges);

    std::string word;
    if (in >> word) {
        if (word != "order:")
            throw Error(ErrorKind::io, "unexpected trailing token '" + word + "'");
        std::vector<Vertex> order;
        long long v;
        while (in >> v)
            order.push_back(static_cast<int>(v));
        return OrderedGraph{ std::move(g), std::move(order) };
    }
    return OrderedGraph::natural(std::move(g));
}

auto ramsey::to_edge_list(const Graph & g) -> std::string
{
    std::ostringstream out;
    write_edge_list(out, g);
    return out.str();
}

auto ramsey::to_edge_list(const OrderedGraph & og) -> std::string
{
    std::ostringstream out;
    write_edge_list(out, og);
    return out.str();
}

auto ramsey::parse_edge_list(const std::string & text) -> OrderedGraph
{
    std::istringstream in(text);
    return read_edge_list(in);
}

auto ramsey::read_file(const std::string & path) -> std::string
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw Error(ErrorKind::io, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

auto ramsey::write_file(const std::string & path, const std::string & contents) -> void
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (! out)
        throw Error(ErrorKind::io, "cannot write '" + path + "'");
    out << contents;
    if (! out)
        throw Error(ErrorKind::io, "write failed for '" + path + "'");
}

auto ramsey::load_graph(const std::string & path) -> OrderedGraph
{
    return parse_edge_list(read_file(path));
}

auto ramsey::save_graph(const std::string & path, const Graph & g) -> void
{
    write_file(path, to_edge_list(g));
}

auto ramsey::save_graph(const std::string & path, const OrderedGraph & og) -> void
{
    write_file(path, to_edge_list(og));
}

auto ramsey::to_colouring_text(const EdgeColouring & c) -> std::string
{
    std::ostringstream out;
    out << c.edges.size() << " " << c.colours << "\n";
    for (std::size_t i = 0 ; i < c.edges.size() ; ++i)
        out << c.edges[i].first << " " << c.edges[i].second << " " << c.colour[i] << "\n";
    return out.str();
}

auto ramsey::parse_colouring(const std::string & text) -> EdgeColouring
{
    std::istringstream in(text);
    long long m = -1;
    EdgeColouring c;
    if (! (in >> m >> c.colours) || m < 0 || c.colours < 1)
        throw Error(ErrorKind::io, "colouring must start with 'm r'");
    for (long long i = 0 ; i < m ; ++i) {
        int u, v, col;
        if (! (in >> u >> v >> col))
            throw Error(ErrorKind::io, "colouring truncated");
        if (col < 0 || col >= c.colours)
            throw Error(ErrorKind::io, "colour out of range");
        c.edges.emplace_back(std::min(u, v), std::max(u, v));
        c.colour.push_back(col);
    }
    return c;
}

auto ramsey::load_colouring(const std::string & path) -> EdgeColouring
{
    return parse_colouring(read_file(path));
}

auto ramsey::save_colouring(const std::string & path, const EdgeColouring & c) -> void
{
    write_file(path, to_colouring_text(c));
}

auto ramsey::colour_classes(const Graph & host, const EdgeColouring & c) -> std::vector<Graph>
{
    if (static_cast<long long>(c.edges.size()) != host.edge_count())
        throw Error(ErrorKind::invalid_input, "colouring does not cover the host's edges");
    std::vector<std::vector<Edge>> per_colour(c.colours);
    for (std::size_t i = 0 ; i < c.edges.size() ; ++i) {
        auto [u, v] = c.edges[i];
        if (u < 0 || v >= host.size() || ! host.adjacent(u, v))
            throw Error(ErrorKind::invalid_input, "coloured pair is not a host edge");
        per_colour[c.colour[i]].push_back(c.edges[i]);
    }
    std::vector<Graph> result;
    long long total = 0;
    for (auto & edges : per_colour) {
        result.push_back(Graph::from_edges(host.size(), edges));
        total += result.back().edge_count();
    }
    if (total != host.edge_count())
        throw Error(ErrorKind::invalid_input, "colouring repeats an edge");
    return result;
}

auto ramsey::parse_vertex_list(const std::string & text) -> VertexSet
{
    VertexSet result;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        token.erase(std::remove_if(token.begin(), token.end(), [] (unsigned char c) { return std::isspace(c); }), token.end());
        if (token.empty())
            continue;
        try {
            result.push_back(std::stoi(token));
        }
        catch (const std::exception &) {
            throw Error(ErrorKind::invalid_input, "bad vertex '" + token + "'");
        }
    }
    return result;
}

auto ramsey::content_hash(const std::string & bytes) -> std::string
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (1 != EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr))
        throw Error(ErrorKind::io, "hashing failed");
    std::ostringstream out;
    for (unsigned i = 0 ; i < length ; ++i)
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return out.str();
}
