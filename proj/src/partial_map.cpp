/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/errors.hpp>
#include <ramsey/partial_map.hpp>

#include <unordered_set>

using namespace ramsey;

auto PartialMap::from_pairs(int pattern_size, const std::vector<std::pair<Vertex, Vertex>> & pairs) -> PartialMap
{
    PartialMap result(pattern_size);
    for (auto [x, v] : pairs) {
        if (x < 0 || x >= pattern_size)
            throw Error(ErrorKind::invalid_input, "pattern vertex out of range");
        if (result.is_mapped(x))
            throw Error(ErrorKind::invalid_input, "pattern vertex mapped twice");
        result.assign(x, v);
    }
    return result;
}

auto PartialMap::assign(Vertex x, Vertex v) -> void
{
    if (v < 0)
        throw Error(ErrorKind::invalid_input, "negative host vertex");
    if (_image[x] == -1)
        ++_mapped;
    _image[x] = v;
}

auto PartialMap::unassign(Vertex x) -> void
{
    if (_image[x] != -1)
        --_mapped;
    _image[x] = -1;
}

auto PartialMap::domain() const -> VertexSet
{
    VertexSet result;
    for (int x = 0 ; x < pattern_size() ; ++x)
        if (_image[x] != -1)
            result.push_back(x);
    return result;
}

auto PartialMap::is_injective() const -> bool
{
    std::unordered_set<Vertex> seen;
    for (auto v : _image)
        if (v != -1 && ! seen.insert(v).second)
            return false;
    return true;
}

auto PartialMap::is_homomorphism(const Graph & pattern, const Graph & host) const -> bool
{
    for (auto [x, y] : pattern.edges())
        if (is_mapped(x) && is_mapped(y)) {
            auto u = _image[x], v = _image[y];
            if (u >= host.size() || v >= host.size() || ! host.adjacent(u, v))
                return false;
        }
    return true;
}
