/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <ramsey/graph.hpp>

#include <vector>

namespace ramsey
{
    // Partial injection from pattern vertices to host vertices.
    class PartialMap
    {
        private:
            std::vector<Vertex> _image;
            int _mapped = 0;

        public:
            PartialMap() = default;
            explicit PartialMap(int pattern_size) : _image(pattern_size, -1) { }

            static auto from_pairs(int pattern_size, const std::vector<std::pair<Vertex, Vertex>> & pairs) -> PartialMap;

            auto pattern_size() const -> int { return static_cast<int>(_image.size()); }
            auto mapped_count() const -> int { return _mapped; }
            auto is_mapped(Vertex x) const -> bool { return _image[x] != -1; }
            auto operator[] (Vertex x) const -> Vertex { return _image[x]; }
            auto images() const -> const std::vector<Vertex> & { return _image; }

            auto assign(Vertex x, Vertex v) -> void;
            auto unassign(Vertex x) -> void;

            auto domain() const -> VertexSet;
            auto is_injective() const -> bool;

            // Every pattern edge with both ends mapped lands on a host edge.
            auto is_homomorphism(const Graph & pattern, const Graph & host) const -> bool;
    };
}
