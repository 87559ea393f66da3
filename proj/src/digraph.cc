/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/digraph.hh>

#include <algorithm>
#include <string>

using std::vector;

namespace minhom
{
    Digraph::Digraph(int size) :
        _size(size),
        _out(size),
        _in(size)
    {
        if (size < 0)
            throw MinHomError(ErrorKind::BadArgument, "negative digraph size");
    }

    auto Digraph::size() const -> int
    {
        return _size;
    }

    auto Digraph::arc_count() const -> int
    {
        return int(_arcs.size());
    }

    auto Digraph::add_arc(int from, int to) -> bool
    {
        if (from < 0 || from >= _size || to < 0 || to >= _size)
            throw MinHomError(ErrorKind::BadArgument, "arc (" + std::to_string(from) + ", "
                    + std::to_string(to) + ") out of range");

        auto & out = _out[from];
        auto pos = std::lower_bound(out.begin(), out.end(), to);
        if (pos != out.end() && *pos == to)
            return false;
        out.insert(pos, to);

        auto & in = _in[to];
        in.insert(std::lower_bound(in.begin(), in.end(), from), from);

        _arcs.emplace_back(from, to);
        return true;
    }

    auto Digraph::add_edge(int a, int b) -> void
    {
        add_arc(a, b);
        add_arc(b, a);
    }

    auto Digraph::has_arc(int from, int to) const -> bool
    {
        if (from < 0 || from >= _size || to < 0 || to >= _size)
            return false;
        return std::binary_search(_out[from].begin(), _out[from].end(), to);
    }

    auto Digraph::arcs() const -> const vector<Arc> &
    {
        return _arcs;
    }

    auto Digraph::out_neighbours(int v) const -> const vector<int> &
    {
        return _out.at(v);
    }

    auto Digraph::in_neighbours(int v) const -> const vector<int> &
    {
        return _in.at(v);
    }

    auto Digraph::is_symmetric() const -> bool
    {
        for (auto & [a, b] : _arcs)
            if (! has_arc(b, a))
                return false;
        return true;
    }

    auto Digraph::reversed() const -> Digraph
    {
        Digraph result(_size);
        for (auto & [a, b] : _arcs)
            result.add_arc(b, a);
        return result;
    }

    auto Digraph::symmetric_closure() const -> Digraph
    {
        Digraph result(_size);
        for (auto & [a, b] : _arcs)
            result.add_edge(a, b);
        return result;
    }

    auto Digraph::induced(const vector<int> & vertices) const -> Digraph
    {
        vector<int> index(_size, -1);
        for (unsigned i = 0 ; i < vertices.size() ; ++i)
            index.at(vertices[i]) = int(i);

        Digraph result(int(vertices.size()));
        for (auto & [a, b] : _arcs)
            if (index[a] != -1 && index[b] != -1)
                result.add_arc(index[a], index[b]);
        return result;
    }

    auto out_masks(const Digraph & g) -> vector<VertexMask>
    {
        if (g.size() > max_target_size)
            throw MinHomError(ErrorKind::SizeLimit, "target has more than 64 vertices");
        vector<VertexMask> result(g.size(), 0);
        for (auto & [a, b] : g.arcs())
            result[a] |= bit(b);
        return result;
    }

    auto in_masks(const Digraph & g) -> vector<VertexMask>
    {
        if (g.size() > max_target_size)
            throw MinHomError(ErrorKind::SizeLimit, "target has more than 64 vertices");
        vector<VertexMask> result(g.size(), 0);
        for (auto & [a, b] : g.arcs())
            result[b] |= bit(a);
        return result;
    }

    auto weak_components(const Digraph & g) -> vector<vector<int> >
    {
        vector<int> component(g.size(), -1);
        vector<vector<int> > result;
        for (int start = 0 ; start < g.size() ; ++start) {
            if (component[start] != -1)
                continue;
            int c = int(result.size());
            result.emplace_back();
            vector<int> stack{ start };
            component[start] = c;
            while (! stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                result[c].push_back(v);
                for (auto * adj : { &g.out_neighbours(v), &g.in_neighbours(v) })
                    for (int w : *adj)
                        if (component[w] == -1) {
                            component[w] = c;
                            stack.push_back(w);
                        }
            }
            std::sort(result[c].begin(), result[c].end());
        }
        return result;
    }

    auto close_pairs(const Digraph & g, int max_distance) -> vector<Arc>
    {
        vector<Arc> result;
        vector<int> dist(g.size(), -1);
        vector<int> touched;
        for (int s = 0 ; s < g.size() ; ++s) {
            vector<int> frontier{ s };
            dist[s] = 0;
            touched.assign(1, s);
            for (int d = 1 ; d <= max_distance && ! frontier.empty() ; ++d) {
                vector<int> next;
                for (int v : frontier)
                    for (auto * adj : { &g.out_neighbours(v), &g.in_neighbours(v) })
                        for (int w : *adj)
                            if (dist[w] == -1) {
                                dist[w] = d;
                                touched.push_back(w);
                                next.push_back(w);
                            }
                frontier = std::move(next);
            }
            vector<int> found;
            for (int w : touched)
                if (w != s)
                    found.push_back(w);
            std::sort(found.begin(), found.end());
            for (int w : found)
                result.emplace_back(s, w);
            for (int w : touched)
                dist[w] = -1;
        }
        return result;
    }

    auto directed_cycle(int k) -> Digraph
    {
        Digraph result(k);
        for (int i = 0 ; i < k ; ++i)
            result.add_arc(i, (i + 1) % k);
        return result;
    }
}
