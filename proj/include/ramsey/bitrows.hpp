/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/graph.hpp>

#include <bit>
#include <cstdint>
#include <vector>

namespace ramsey
{
    using Word = std::uint64_t;

    class VertexBits
    {
        private:
            std::vector<Word> _words;

        public:
            VertexBits() = default;
            explicit VertexBits(int n) : _words((n + 63) / 64, 0) { }
            VertexBits(int n, const VertexSet & members) : VertexBits(n)
            {
                for (auto v : members)
                    set(v);
            }

            auto set(Vertex v) -> void { _words[v >> 6] |= Word{ 1 } << (v & 63); }
            auto reset(Vertex v) -> void { _words[v >> 6] &= ~(Word{ 1 } << (v & 63)); }
            auto test(Vertex v) const -> bool { return (_words[v >> 6] >> (v & 63)) & 1; }
            auto words() const -> int { return static_cast<int>(_words.size()); }
            auto data() const -> const Word * { return _words.data(); }
            auto data() -> Word * { return _words.data(); }

            auto count() const -> int
            {
                int result = 0;
                for (auto w : _words)
                    result += std::popcount(w);
                return result;
            }

            auto members() const -> VertexSet
            {
                VertexSet result;
                for (int i = 0 ; i < words() ; ++i)
                    for (Word w = _words[i] ; w ; w &= w - 1)
                        result.push_back(i * 64 + std::countr_zero(w));
                return result;
            }
    };

    // One bit row per vertex, for fast common-neighbourhood counting.
    class AdjacencyBits
    {
        private:
            int _n = 0, _words = 0;
            std::vector<Word> _data;

        public:
            AdjacencyBits() = default;
            explicit AdjacencyBits(const Graph & g) :
                _n(g.size()), _words((g.size() + 63) / 64), _data(static_cast<std::size_t>(_n) * _words, 0)
            {
                for (int v = 0 ; v < _n ; ++v)
                    for (auto w : g.neighbours(v))
                        _data[static_cast<std::size_t>(v) * _words + (w >> 6)] |= Word{ 1 } << (w & 63);
            }

            auto size() const -> int { return _n; }
            auto words() const -> int { return _words; }
            auto row(Vertex v) const -> const Word * { return _data.data() + static_cast<std::size_t>(v) * _words; }
            auto adjacent(Vertex u, Vertex v) const -> bool { return (row(u)[v >> 6] >> (v & 63)) & 1; }
    };

    // |mask AND row_1 AND ... AND row_k|
    inline auto count_common(const Word * mask, const std::vector<const Word *> & rows, int words) -> int
    {
        int result = 0;
        for (int i = 0 ; i < words ; ++i) {
            Word w = mask[i];
            for (auto r : rows)
                w &= r[i];
            result += std::popcount(w);
        }
        return result;
    }

    inline auto common_members(const Word * mask, const std::vector<const Word *> & rows, int words) -> VertexSet
    {
        VertexSet result;
        for (int i = 0 ; i < words ; ++i) {
            Word w = mask[i];
            for (auto r : rows)
                w &= r[i];
            for ( ; w ; w &= w - 1)
                result.push_back(i * 64 + std::countr_zero(w));
        }
        return result;
    }
}
