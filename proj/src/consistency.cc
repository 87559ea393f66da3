/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/consistency.hh>

#include <deque>

using std::deque;
using std::nullopt;
using std::optional;
using std::vector;

namespace minhom
{
    PairLists::PairLists(int size, int target_size) :
        _size(size),
        _target_size(target_size)
    {
        if (long(size) * size * target_size > max_pair_rows)
            throw MinHomError(ErrorKind::SizeLimit, "pair lists too large for " + std::to_string(size) + " vertices");
        _rows.assign(std::size_t(size) * size * target_size, 0);
    }

    auto PairLists::size() const -> int
    {
        return _size;
    }

    auto PairLists::target_size() const -> int
    {
        return _target_size;
    }

    auto PairLists::row(int x, int y, int a) const -> VertexMask
    {
        return _rows[(std::size_t(x) * _size + y) * _target_size + a];
    }

    auto PairLists::row(int x, int y, int a) -> VertexMask &
    {
        return _rows[(std::size_t(x) * _size + y) * _target_size + a];
    }

    auto PairLists::contains(int x, int y, int a, int b) const -> bool
    {
        return has_bit(row(x, y, a), b);
    }

    auto PairLists::empty() const -> bool
    {
        return _rows.empty();
    }

    auto arc_consistency(const Digraph & source, const Digraph & target,
            vector<VertexMask> lists) -> optional<vector<VertexMask> >
    {
        auto out = out_masks(target), in = in_masks(target);
        const auto & arcs = source.arcs();

        // arcs incident to each vertex
        vector<vector<int> > incident(source.size());
        for (int i = 0 ; i < int(arcs.size()) ; ++i) {
            incident[arcs[i].first].push_back(i);
            if (arcs[i].second != arcs[i].first)
                incident[arcs[i].second].push_back(i);
        }

        deque<int> queue;
        vector<char> queued(arcs.size(), 1);
        for (int i = 0 ; i < int(arcs.size()) ; ++i)
            queue.push_back(i);

        for (auto m : lists)
            if (! m)
                return nullopt;

        while (! queue.empty()) {
            int i = queue.front();
            queue.pop_front();
            queued[i] = 0;
            auto [x, y] = arcs[i];

            VertexMask nx = 0, ny = 0;
            if (x == y) {
                for_each_bit(lists[x], [&] (int a) { if (has_bit(out[a], a)) nx |= bit(a); });
                ny = nx;
            }
            else {
                for_each_bit(lists[x], [&] (int a) { if (out[a] & lists[y]) nx |= bit(a); });
                for_each_bit(lists[y], [&] (int b) { if (in[b] & nx) ny |= bit(b); });
            }

            for (auto [v, nv] : { std::pair{ x, nx }, std::pair{ y, ny } }) {
                if (nv == lists[v])
                    continue;
                lists[v] = nv;
                if (! nv)
                    return nullopt;
                for (int j : incident[v])
                    if (! queued[j]) {
                        queued[j] = 1;
                        queue.push_back(j);
                    }
            }
        }

        return lists;
    }

    auto is_arc_consistent(const Digraph & source, const Digraph & target,
            const vector<VertexMask> & lists) -> bool
    {
        auto out = out_masks(target), in = in_masks(target);
        for (auto m : lists)
            if (! m)
                return false;
        for (auto & [x, y] : source.arcs()) {
            bool ok = true;
            for_each_bit(lists[x], [&] (int a) { if (! (out[a] & lists[y])) ok = false; });
            for_each_bit(lists[y], [&] (int b) { if (! (in[b] & lists[x])) ok = false; });
            if (x == y)
                for_each_bit(lists[x], [&] (int a) { if (! has_bit(out[a], a)) ok = false; });
            if (! ok)
                return false;
        }
        return true;
    }

    auto pair_consistency(const Digraph & source, const Digraph & target,
            const vector<VertexMask> & initial) -> optional<ListState>
    {
        int n = source.size(), p = target.size();
        auto out = out_masks(target), in = in_masks(target);

        for (auto m : initial)
            if (! m)
                return nullopt;

        ListState state{ initial, PairLists(n, p) };
        auto & pairs = state.pairs;

        // full[x * n + y]: L(x, y) is still the whole of L(x) x L(y)
        vector<char> full(std::size_t(n) * n, 1);

        for (int x = 0 ; x < n ; ++x)
            for (int y = 0 ; y < n ; ++y) {
                if (x == y) {
                    for_each_bit(initial[x], [&] (int a) { pairs.row(x, x, a) = bit(a); });
                    full[x * n + x] = 0;
                    continue;
                }
                for_each_bit(initial[x], [&] (int a) {
                    VertexMask row = initial[y];
                    if (source.has_arc(x, y))
                        row &= out[a];
                    if (source.has_arc(y, x))
                        row &= in[a];
                    pairs.row(x, y, a) = row;
                    if (row != initial[y])
                        full[x * n + y] = 0;
                });
            }

        auto pair_empty = [&] (int x, int y) {
            bool empty = true;
            for_each_bit(state.lists[x], [&] (int a) { if (pairs.row(x, y, a)) empty = false; });
            return empty;
        };

        deque<std::pair<int, int> > queue;
        vector<char> queued(std::size_t(n) * n, 0);
        auto push = [&] (int x, int y) {
            if (x > y)
                std::swap(x, y);
            if (! queued[x * n + y]) {
                queued[x * n + y] = 1;
                queue.emplace_back(x, y);
            }
        };

        for (int x = 0 ; x < n ; ++x)
            for (int y = x + 1 ; y < n ; ++y) {
                if (pair_empty(x, y))
                    return nullopt;
                push(x, y);
            }

        while (! queue.empty()) {
            auto [x, y] = queue.front();
            queue.pop_front();
            queued[x * n + y] = 0;

            bool changed = false;
            for (int z = 0 ; z < n ; ++z) {
                if (z == x || z == y)
                    continue;
                if (full[x * n + z] && full[z * n + y])
                    continue;
                for_each_bit(state.lists[x], [&] (int a) {
                    VertexMask & r = pairs.row(x, y, a);
                    if (! r)
                        return;
                    VertexMask allowed = 0;
                    for_each_bit(pairs.row(x, z, a), [&] (int c) { allowed |= pairs.row(z, y, c); });
                    if ((r & allowed) != r) {
                        r &= allowed;
                        changed = true;
                    }
                });
            }

            if (! changed)
                continue;

            full[x * n + y] = full[y * n + x] = 0;
            for_each_bit(state.lists[y], [&] (int b) { pairs.row(y, x, b) = 0; });
            for_each_bit(state.lists[x], [&] (int a) {
                for_each_bit(pairs.row(x, y, a), [&] (int b) { pairs.row(y, x, b) |= bit(a); });
            });

            if (pair_empty(x, y))
                return nullopt;

            for (int w = 0 ; w < n ; ++w) {
                if (w != x && w != y) {
                    push(x, w);
                    push(w, y);
                }
            }
        }

        // lists become projections of the pair lists
        for (int x = 0 ; x < n ; ++x) {
            VertexMask l = state.lists[x];
            for (int y = 0 ; y < n ; ++y) {
                if (y == x)
                    continue;
                VertexMask proj = 0;
                for_each_bit(l, [&] (int a) { if (pairs.row(x, y, a)) proj |= bit(a); });
                l &= proj;
            }
            if (! l)
                return nullopt;
            state.lists[x] = l;
        }

        for (int x = 0 ; x < n ; ++x)
            for (int y = 0 ; y < n ; ++y)
                for (int a = 0 ; a < p ; ++a) {
                    if (! has_bit(state.lists[x], a))
                        pairs.row(x, y, a) = 0;
                    else
                        pairs.row(x, y, a) &= state.lists[y];
                }

        return state;
    }

    auto consistent_lists(const Instance & inst) -> optional<ListState>
    {
        auto ac = arc_consistency(inst.source(), inst.target(), inst.lists());
        if (! ac)
            return nullopt;
        return pair_consistency(inst.source(), inst.target(), *ac);
    }
}
