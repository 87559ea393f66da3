/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/orderings.hh>

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

using std::array;
using std::deque;
using std::nullopt;
using std::optional;
using std::vector;

namespace minhom
{
    auto Ordering::from_permutation(vector<int> perm) -> Ordering
    {
        Ordering result;
        result.rank.assign(perm.size(), -1);
        for (unsigned i = 0 ; i < perm.size() ; ++i) {
            if (perm[i] < 0 || perm[i] >= int(perm.size()) || result.rank[perm[i]] != -1)
                throw MinHomError(ErrorKind::BadOrder, "not a permutation");
            result.rank[perm[i]] = int(i);
        }
        result.perm = std::move(perm);
        return result;
    }

    auto Ordering::identity(int size) -> Ordering
    {
        vector<int> perm(size);
        std::iota(perm.begin(), perm.end(), 0);
        return from_permutation(std::move(perm));
    }

    auto Ordering::with_levels(vector<int> new_levels, int new_k) const -> Ordering
    {
        if (int(new_levels.size()) != size() || new_k < 2)
            throw MinHomError(ErrorKind::BadOrder, "bad level assignment");
        for (int l : new_levels)
            if (l < 0 || l >= new_k)
                throw MinHomError(ErrorKind::BadOrder, "level out of range");
        Ordering result = *this;
        result.levels = std::move(new_levels);
        result.k = new_k;
        return result;
    }

    auto Ordering::size() const -> int
    {
        return int(perm.size());
    }

    auto Ordering::has_levels() const -> bool
    {
        return k > 0;
    }

    auto Ordering::before(int a, int b) const -> bool
    {
        return rank[a] < rank[b];
    }

    namespace
    {
        // Violated when pos(u) < pos(u2) and pos(v2) < pos(v).
        struct Pattern
        {
            int u, v, u2, v2;
        };

        auto make_patterns(const Digraph & h, bool min, bool max, const vector<int> * levels, int k) -> vector<Pattern>
        {
            vector<Pattern> result;
            for (auto & [u, v] : h.arcs())
                for (auto & [u2, v2] : h.arcs()) {
                    if (u == u2 || v == v2)
                        continue;
                    if (levels && k >= 3 && (*levels)[u] != (*levels)[u2])
                        continue;
                    bool bad = (min && ! h.has_arc(u, v2)) || (max && ! h.has_arc(u2, v));
                    if (bad)
                        result.push_back(Pattern{ u, v, u2, v2 });
                }
            return result;
        }

        auto flags_for(OrderingKind kind) -> std::pair<bool, bool>
        {
            switch (kind) {
                case OrderingKind::Min:     return { true, false };
                case OrderingKind::Max:     return { false, true };
                case OrderingKind::MinMax:  return { true, true };
                case OrderingKind::KMin:    return { true, false };
                case OrderingKind::KMinMax: return { true, true };
            }
            return { true, false };
        }

        auto is_level_kind(OrderingKind kind) -> bool
        {
            return kind == OrderingKind::KMin || kind == OrderingKind::KMinMax;
        }

        auto search_permutation(int n, const vector<Pattern> & patterns) -> optional<vector<int> >
        {
            vector<vector<const Pattern *> > by_u(n), by_v2(n);
            for (auto & pat : patterns) {
                by_u[pat.u].push_back(&pat);
                by_v2[pat.v2].push_back(&pat);
            }

            vector<int> pos(n, -1), prefix;
            prefix.reserve(n);

            auto ok = [&] (int x) {
                for (auto * pat : by_u[x])
                    if (pos[pat->u2] == -1 && pos[pat->v2] != -1 && (pos[pat->v] == -1 || pos[pat->v2] < pos[pat->v]))
                        return false;
                for (auto * pat : by_v2[x])
                    if (pos[pat->v] == -1 && pos[pat->u] != -1 && (pos[pat->u2] == -1 || pos[pat->u] < pos[pat->u2]))
                        return false;
                return true;
            };

            std::function<bool (int)> extend = [&] (int depth) -> bool {
                if (depth == n)
                    return true;
                for (int x = 0 ; x < n ; ++x) {
                    if (pos[x] != -1)
                        continue;
                    pos[x] = depth;
                    prefix.push_back(x);
                    if (ok(x) && extend(depth + 1))
                        return true;
                    prefix.pop_back();
                    pos[x] = -1;
                }
                return false;
            };

            if (extend(0))
                return prefix;
            return nullopt;
        }

        // Every vertex is a pure source or a pure sink: order the sources,
        // then the sinks.
        auto is_split(const Digraph & h) -> bool
        {
            for (int v = 0 ; v < h.size() ; ++v)
                if (! h.out_neighbours(v).empty() && ! h.in_neighbours(v).empty())
                    return false;
            return true;
        }

        auto search_split_min_ordering(const Digraph & h) -> optional<vector<int> >
        {
            int n = h.size();
            vector<int> sources, sinks, sink_index(n, -1);
            for (int v = 0 ; v < n ; ++v) {
                if (h.in_neighbours(v).empty())
                    sources.push_back(v);
                else {
                    sink_index[v] = int(sinks.size());
                    sinks.push_back(v);
                }
            }
            int t = int(sinks.size());

            // reach[i]: sinks that must come after sink i
            vector<VertexMask> reach(t, 0);
            vector<char> placed(n, 0);
            vector<int> order;

            auto add_precedence = [&] (vector<VertexMask> & r, int from, int to) -> bool {
                if (has_bit(r[to], from) || from == to)
                    return false;
                VertexMask desc = bit(to) | r[to];
                for (int i = 0 ; i < t ; ++i)
                    if (i == from || has_bit(r[i], from))
                        r[i] |= desc;
                return true;
            };

            std::function<bool (int)> extend = [&] (int depth) -> bool {
                if (depth == int(sources.size()))
                    return true;
                for (int s : sources) {
                    if (placed[s])
                        continue;
                    auto saved = reach;
                    bool good = true;
                    for (int s2 : sources) {
                        if (placed[s2] || s2 == s || ! good)
                            continue;
                        for (int v : h.out_neighbours(s)) {
                            for (int v2 : h.out_neighbours(s2))
                                if (v != v2 && ! h.has_arc(s, v2))
                                    if (! add_precedence(reach, sink_index[v], sink_index[v2])) {
                                        good = false;
                                        break;
                                    }
                            if (! good)
                                break;
                        }
                    }
                    if (good) {
                        placed[s] = 1;
                        order.push_back(s);
                        if (extend(depth + 1))
                            return true;
                        order.pop_back();
                        placed[s] = 0;
                    }
                    reach = std::move(saved);
                }
                return false;
            };

            if (! extend(0))
                return nullopt;

            vector<char> done(t, 0);
            for (int step = 0 ; step < t ; ++step) {
                for (int i = 0 ; i < t ; ++i) {
                    if (done[i])
                        continue;
                    bool free = true;
                    for (int j = 0 ; j < t ; ++j)
                        if (! done[j] && j != i && has_bit(reach[j], i))
                            free = false;
                    if (free) {
                        done[i] = 1;
                        order.push_back(sinks[i]);
                        break;
                    }
                }
            }
            if (int(order.size()) != n)
                throw MinHomError(ErrorKind::Internal, "sink precedence is cyclic");
            return order;
        }

        // Level assignments of each weak component (with arcs) to the
        // directed k-cycle, one per rotation vector.
        auto level_assignments(const Digraph & h, int k) -> vector<vector<int> >
        {
            auto comps = weak_components(h);
            vector<int> base(h.size(), 0);
            vector<int> moving;
            for (auto & comp : comps) {
                if (comp.size() == 1 && ! h.has_arc(comp[0], comp[0]))
                    continue;
                vector<int> level(h.size(), -1);
                level[comp[0]] = 0;
                deque<int> queue{ comp[0] };
                while (! queue.empty()) {
                    int v = queue.front();
                    queue.pop_front();
                    for (int w : h.out_neighbours(v)) {
                        int want = (level[v] + 1) % k;
                        if (level[w] == -1) {
                            level[w] = want;
                            queue.push_back(w);
                        }
                        else if (level[w] != want)
                            return {};
                    }
                    for (int w : h.in_neighbours(v)) {
                        int want = (level[v] + k - 1) % k;
                        if (level[w] == -1) {
                            level[w] = want;
                            queue.push_back(w);
                        }
                        else if (level[w] != want)
                            return {};
                    }
                }
                for (int v : comp)
                    base[v] = level[v];
                moving.push_back(int(&comp - &comps[0]));
            }

            vector<vector<int> > result;
            if (moving.empty()) {
                result.push_back(base);
                return result;
            }

            vector<int> offset(moving.size(), 0);
            while (true) {
                auto levels = base;
                for (unsigned i = 1 ; i < moving.size() ; ++i)
                    for (int v : comps[moving[i]])
                        levels[v] = (levels[v] + offset[i]) % k;
                result.push_back(std::move(levels));

                unsigned i = 1;
                while (i < moving.size() && ++offset[i] == k)
                    offset[i++] = 0;
                if (i >= moving.size())
                    break;
            }
            return result;
        }
    }

    auto valid_levels(const Digraph & h, const vector<int> & levels, int k) -> bool
    {
        if (k < 2 || int(levels.size()) != h.size())
            return false;
        for (int l : levels)
            if (l < 0 || l >= k)
                return false;
        for (auto & [a, b] : h.arcs())
            if (levels[b] != (levels[a] + 1) % k)
                return false;
        return true;
    }

    auto verify_ordering(const Digraph & h, const Ordering & ord, OrderingKind kind) -> bool
    {
        if (ord.size() != h.size())
            return false;
        auto [min, max] = flags_for(kind);
        const vector<int> * levels = nullptr;
        if (is_level_kind(kind)) {
            if (! ord.has_levels() || ! valid_levels(h, ord.levels, ord.k))
                return false;
            levels = &ord.levels;
        }
        for (auto & pat : make_patterns(h, min, max, levels, ord.k))
            if (ord.rank[pat.u] < ord.rank[pat.u2] && ord.rank[pat.v2] < ord.rank[pat.v])
                return false;
        return true;
    }

    auto verify_min_ordering(const Digraph & h, const Ordering & ord) -> bool
    {
        return verify_ordering(h, ord, OrderingKind::Min);
    }

    auto verify_kmin_ordering(const Digraph & h, const Ordering & ord) -> bool
    {
        return verify_ordering(h, ord, OrderingKind::KMin);
    }

    auto find_ordering(const Digraph & h, OrderingKind kind, int k, int bound) -> optional<Ordering>
    {
        if (h.size() > bound)
            throw MinHomError(ErrorKind::SizeLimit, "ordering search limited to " + std::to_string(bound) + " vertices");
        auto [min, max] = flags_for(kind);

        if (! is_level_kind(kind)) {
            optional<vector<int> > perm;
            if (kind == OrderingKind::Min && is_split(h))
                perm = search_split_min_ordering(h);
            else
                perm = search_permutation(h.size(), make_patterns(h, min, max, nullptr, 0));
            if (! perm)
                return nullopt;
            auto result = Ordering::from_permutation(*perm);
            if (! verify_ordering(h, result, kind))
                throw MinHomError(ErrorKind::Internal, "ordering search produced an invalid ordering");
            return result;
        }

        if (k < 2)
            throw MinHomError(ErrorKind::BadArgument, "k must be at least 2");

        optional<Ordering> best;
        for (auto & levels : level_assignments(h, k)) {
            auto perm = search_permutation(h.size(), make_patterns(h, min, max, &levels, k));
            if (perm && (! best || *perm < best->perm))
                best = Ordering::from_permutation(*perm).with_levels(levels, k);
        }
        if (best && ! verify_ordering(h, *best, kind))
            throw MinHomError(ErrorKind::Internal, "ordering search produced an invalid ordering");
        return best;
    }

    auto Completion::in_added(int a, int b) const -> bool
    {
        return has_bit(out_added[a], b);
    }

    auto build_completion(const Digraph & h, const Ordering & ord) -> Completion
    {
        if (ord.has_levels()) {
            if (! verify_kmin_ordering(h, ord))
                throw MinHomError(ErrorKind::NotKminOrdering, "ordering is not a k-min ordering");
        }
        else if (! verify_min_ordering(h, ord))
            throw MinHomError(ErrorKind::NotMinOrdering, "ordering is not a min ordering");

        int p = h.size();
        Completion c{ h, Digraph(p), {}, ord, out_masks(h), in_masks(h), {}, {}, vector<VertexMask>(p, 0),
            vector<VertexMask>(p, 0) };

        for (int a = 0 ; a < p ; ++a)
            for (int b = 0 ; b < p ; ++b)
                if (ord.rank[b] > ord.rank[a])
                    c.later[a] |= bit(b);

        for (int a = 0 ; a < p ; ++a)
            for (int b = 0 ; b < p ; ++b) {
                if (h.has_arc(a, b))
                    continue;
                if (ord.has_levels() && ord.levels[b] != (ord.levels[a] + 1) % ord.k)
                    continue;
                bool earlier_out = false, earlier_in = false;
                for (int b2 : h.out_neighbours(a))
                    if (ord.rank[b2] < ord.rank[b])
                        earlier_out = true;
                for (int a2 : h.in_neighbours(b))
                    if (ord.rank[a2] < ord.rank[a])
                        earlier_in = true;
                if (earlier_out && earlier_in) {
                    c.added.emplace_back(a, b);
                    c.out_added[a] |= bit(b);
                }
            }

        for (auto & [a, b] : h.arcs())
            c.completed.add_arc(a, b);
        for (auto & [a, b] : c.added)
            c.completed.add_arc(a, b);
        c.out_all = out_masks(c.completed);
        c.in_all = in_masks(c.completed);

        auto kind = ord.has_levels() ? OrderingKind::KMinMax : OrderingKind::MinMax;
        if (! verify_ordering(c.completed, ord, kind))
            throw MinHomError(ErrorKind::Internal, "completion is not min-max ordered");

        for (auto & [a, b] : c.added)
            if ((c.in_base[b] & c.later[a]) && (c.out_base[a] & c.later[b]))
                throw MinHomError(ErrorKind::Internal, "added arc has neighbours on both sides");

        return c;
    }

    auto KminPolymorphisms::f(int x, int y) const -> int
    {
        return binary[x * size + y];
    }

    auto KminPolymorphisms::g(int x, int y, int z) const -> int
    {
        return ternary[(x * size + y) * size + z];
    }

    auto build_kmin_polymorphisms(const Digraph & h, const Ordering & ord) -> KminPolymorphisms
    {
        if (! verify_kmin_ordering(h, ord))
            throw MinHomError(ErrorKind::NotKminOrdering, "ordering is not a k-min ordering");

        int p = h.size();
        auto & lv = ord.levels;
        auto smaller = [&] (int x, int y) { return ord.rank[x] <= ord.rank[y] ? x : y; };

        KminPolymorphisms result;
        result.size = p;
        result.binary.resize(p * p);
        result.ternary.resize(p * p * p);

        for (int x = 0 ; x < p ; ++x)
            for (int y = 0 ; y < p ; ++y)
                result.binary[x * p + y] = lv[x] == lv[y] ? smaller(x, y) : x;

        for (int x = 0 ; x < p ; ++x)
            for (int y = 0 ; y < p ; ++y)
                for (int z = 0 ; z < p ; ++z) {
                    int value;
                    bool xy = lv[x] == lv[y], xz = lv[x] == lv[z], yz = lv[y] == lv[z];
                    if ((xy && xz) || (! xy && ! xz && ! yz))
                        value = x;
                    else if (xy)
                        value = smaller(x, y);
                    else if (xz)
                        value = smaller(x, z);
                    else
                        value = smaller(y, z);
                    result.ternary[(x * p + y) * p + z] = value;
                }

        return result;
    }

    auto is_binary_polymorphism(const Digraph & h, const vector<int> & table) -> bool
    {
        int p = h.size();
        for (auto & [a, b] : h.arcs())
            for (auto & [c, d] : h.arcs())
                if (! h.has_arc(table[a * p + c], table[b * p + d]))
                    return false;
        return true;
    }

    auto is_ternary_polymorphism(const Digraph & h, const vector<int> & table) -> bool
    {
        int p = h.size();
        auto & arcs = h.arcs();
        for (auto & [a, b] : arcs)
            for (auto & [c, d] : arcs)
                for (auto & [e, f] : arcs)
                    if (! h.has_arc(table[(a * p + c) * p + e], table[(b * p + d) * p + f]))
                        return false;
        return true;
    }

    namespace
    {
        auto strongly_connected_components(const vector<vector<int> > & adj) -> vector<int>
        {
            int n = int(adj.size()), counter = 0, comps = 0;
            vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
            vector<char> on_stack(n, 0);

            std::function<void (int)> visit = [&] (int v) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = 1;
                for (int w : adj[v]) {
                    if (index[w] == -1) {
                        visit(w);
                        low[v] = std::min(low[v], low[w]);
                    }
                    else if (on_stack[w])
                        low[v] = std::min(low[v], index[w]);
                }
                if (low[v] == index[v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = comps;
                        if (w == v)
                            break;
                    }
                    ++comps;
                }
            };

            for (int v = 0 ; v < n ; ++v)
                if (index[v] == -1)
                    visit(v);
            return comp;
        }
    }

    auto invertible_pairs(const Digraph & h, int bound) -> vector<Arc>
    {
        int p = h.size();
        if (p > bound)
            throw MinHomError(ErrorKind::SizeLimit, "invertible pair search limited to " + std::to_string(bound) + " vertices");

        auto out = out_masks(h), in = in_masks(h);
        vector<vector<int> > adj(p * p);
        for (int a1 = 0 ; a1 < p ; ++a1)
            for (int a2 = 0 ; a2 < p ; ++a2) {
                auto & succ = adj[a1 * p + a2];
                for_each_bit(out[a1], [&] (int b1) {
                    for_each_bit(out[a2] & ~out[a1], [&] (int b2) { succ.push_back(b1 * p + b2); });
                });
                for_each_bit(in[a1], [&] (int b1) {
                    for_each_bit(in[a2] & ~in[a1], [&] (int b2) { succ.push_back(b1 * p + b2); });
                });
            }

        auto comp = strongly_connected_components(adj);
        vector<Arc> result;
        for (int x = 0 ; x < p ; ++x)
            for (int y = 0 ; y < p ; ++y)
                if (x != y && comp[x * p + y] == comp[y * p + x])
                    result.emplace_back(x, y);
        return result;
    }

    auto detect_dat(const Digraph & h, int bound) -> optional<DatWitness>
    {
        int p = h.size();
        if (p > bound)
            throw MinHomError(ErrorKind::SizeLimit, "DAT search limited to " + std::to_string(bound) + " vertices");

        auto out = out_masks(h), in = in_masks(h);
        auto id = [&] (int a, int b, int c) { return (a * p + b) * p + c; };
        int n = p * p * p;

        vector<vector<int> > adj(n), radj(n);
        for (int a1 = 0 ; a1 < p ; ++a1)
            for (int a2 = 0 ; a2 < p ; ++a2)
                for (int a3 = 0 ; a3 < p ; ++a3) {
                    int from = id(a1, a2, a3);
                    auto add = [&] (VertexMask m1, VertexMask m2, VertexMask m3) {
                        for_each_bit(m1, [&] (int b1) {
                            for_each_bit(m2, [&] (int b2) {
                                for_each_bit(m3, [&] (int b3) {
                                    adj[from].push_back(id(b1, b2, b3));
                                    radj[id(b1, b2, b3)].push_back(from);
                                });
                            });
                        });
                    };
                    add(out[a1], out[a2] & ~out[a1], out[a3] & ~out[a1]);
                    add(in[a1], in[a2] & ~in[a1], in[a3] & ~in[a1]);
                }

        auto path_to = [&] (int start, int goal) -> vector<Triple> {
            vector<int> parent(n, -2);
            deque<int> queue{ start };
            parent[start] = -1;
            while (! queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                if (v == goal)
                    break;
                for (int w : adj[v])
                    if (parent[w] == -2) {
                        parent[w] = v;
                        queue.push_back(w);
                    }
            }
            vector<Triple> path;
            for (int v = goal ; v != -1 ; v = parent[v])
                path.push_back(Triple{ v / (p * p), (v / p) % p, v % p });
            std::reverse(path.begin(), path.end());
            return path;
        };

        for (auto & [alpha, beta] : invertible_pairs(h, std::max(bound, p))) {
            int goal = id(alpha, beta, beta);
            vector<char> reaches(n, 0);
            deque<int> queue{ goal };
            reaches[goal] = 1;
            while (! queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                for (int w : radj[v])
                    if (! reaches[w]) {
                        reaches[w] = 1;
                        queue.push_back(w);
                    }
            }

            for (int a = 0 ; a < p ; ++a)
                for (int b = 0 ; b < p ; ++b)
                    for (int c = 0 ; c < p ; ++c) {
                        if (a == b || b == c || a == c)
                            continue;
                        if (reaches[id(a, b, c)] && reaches[id(b, a, c)] && reaches[id(c, a, b)]) {
                            DatWitness w{ a, b, c, alpha, beta, {} };
                            w.paths[0] = path_to(id(a, b, c), goal);
                            w.paths[1] = path_to(id(b, a, c), goal);
                            w.paths[2] = path_to(id(c, a, b), goal);
                            return w;
                        }
                    }
        }
        return nullopt;
    }

    auto star_digraph(const Digraph & h) -> Digraph
    {
        int p = h.size();
        Digraph result(2 * p);
        for (auto & [x, y] : h.arcs())
            result.add_arc(x, p + y);
        return result;
    }
}
