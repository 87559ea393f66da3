/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_INCLUDE_MINHOM_DIGRAPH_HH
#define MINHOM_GUARD_INCLUDE_MINHOM_DIGRAPH_HH 1

#include <minhom/types.hh>

#include <utility>
#include <vector>

namespace minhom
{
    using Arc = std::pair<int, int>;

    // Vertices are 0 .. size() - 1. Loops are allowed, parallel arcs are not.
    class Digraph
    {
        private:
            int _size = 0;
            std::vector<Arc> _arcs;
            std::vector<std::vector<int> > _out, _in;

        public:
            explicit Digraph(int size = 0);

            auto size() const -> int;
            auto arc_count() const -> int;

            // Returns false if the arc was already present.
            auto add_arc(int from, int to) -> bool;
            auto add_edge(int a, int b) -> void;

            auto has_arc(int from, int to) const -> bool;
            auto arcs() const -> const std::vector<Arc> &;
            auto out_neighbours(int v) const -> const std::vector<int> &;
            auto in_neighbours(int v) const -> const std::vector<int> &;

            auto is_symmetric() const -> bool;
            auto reversed() const -> Digraph;
            auto symmetric_closure() const -> Digraph;
            auto induced(const std::vector<int> & vertices) const -> Digraph;
    };

    auto out_masks(const Digraph &) -> std::vector<VertexMask>;
    auto in_masks(const Digraph &) -> std::vector<VertexMask>;

    // Weak components, each listed in increasing vertex order, ordered by
    // their smallest vertex.
    auto weak_components(const Digraph &) -> std::vector<std::vector<int> >;

    // Pairs (u, v), u != v, joined by an undirected path of length at most
    // the given bound.
    auto close_pairs(const Digraph &, int max_distance) -> std::vector<Arc>;

    auto directed_cycle(int k) -> Digraph;
}

#endif
