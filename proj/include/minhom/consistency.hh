/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_INCLUDE_MINHOM_CONSISTENCY_HH
#define MINHOM_GUARD_INCLUDE_MINHOM_CONSISTENCY_HH 1

#include <minhom/digraph.hh>
#include <minhom/instance.hh>

#include <optional>
#include <vector>

namespace minhom
{
    // L(x, y) for every ordered pair of source vertices, stored as one mask
    // of admissible b per (x, y, a). L(y, x) is always the transpose.
    class PairLists
    {
        private:
            int _size = 0, _target_size = 0;
            std::vector<VertexMask> _rows;

        public:
            PairLists() = default;
            PairLists(int size, int target_size);

            auto size() const -> int;
            auto target_size() const -> int;
            auto row(int x, int y, int a) const -> VertexMask;
            auto row(int x, int y, int a) -> VertexMask &;
            auto contains(int x, int y, int a, int b) const -> bool;
            auto empty() const -> bool;
    };

    struct ListState
    {
        std::vector<VertexMask> lists;
        PairLists pairs;
    };

    // Largest number of pair-list rows we are prepared to store.
    constexpr long max_pair_rows = 1L << 25;

    auto arc_consistency(const Digraph & source, const Digraph & target,
            std::vector<VertexMask> lists) -> std::optional<std::vector<VertexMask> >;

    auto pair_consistency(const Digraph & source, const Digraph & target,
            const std::vector<VertexMask> & lists) -> std::optional<ListState>;

    // Arc consistency followed by pair consistency on the instance's lists.
    auto consistent_lists(const Instance &) -> std::optional<ListState>;

    auto is_arc_consistent(const Digraph & source, const Digraph & target,
            const std::vector<VertexMask> & lists) -> bool;
}

#endif
