/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/exact.hh>
#include <minhom/consistency.hh>

#include <algorithm>
#include <functional>

using std::nullopt;
using std::optional;
using std::vector;

namespace minhom
{
    namespace
    {
        struct Backtracker
        {
            const Instance & inst;
            vector<VertexMask> lists;
            vector<int> order, map;
            vector<Rational> cheapest_rest;
            bool minimise;

            optional<Rational> best_cost;
            vector<int> best_map;
            vector<vector<int> > all;

            Backtracker(const Instance & i, vector<VertexMask> l, bool min) :
                inst(i), lists(std::move(l)), map(i.source().size(), -1), minimise(min)
            {
                auto & d = inst.source();
                order.resize(d.size());
                for (int v = 0 ; v < d.size() ; ++v)
                    order[v] = v;
                if (minimise)
                    std::stable_sort(order.begin(), order.end(), [&] (int a, int b) {
                            auto da = d.out_neighbours(a).size() + d.in_neighbours(a).size();
                            auto db = d.out_neighbours(b).size() + d.in_neighbours(b).size();
                            return da > db;
                        });

                cheapest_rest.assign(order.size() + 1, 0);
                for (int k = int(order.size()) - 1 ; k >= 0 ; --k) {
                    optional<Rational> m;
                    for_each_bit(lists[order[k]], [&] (int a) {
                            auto & c = inst.cost(order[k], a).value();
                            if (! m || c < *m)
                                m = c;
                        });
                    cheapest_rest[k] = cheapest_rest[k + 1] + *m;
                }
            }

            auto fits(int v, int a) const -> bool
            {
                auto & d = inst.source();
                auto & h = inst.target();
                for (int w : d.out_neighbours(v))
                    if ((w == v && ! h.has_arc(a, a)) || (w != v && map[w] != -1 && ! h.has_arc(a, map[w])))
                        return false;
                for (int w : d.in_neighbours(v))
                    if (w != v && map[w] != -1 && ! h.has_arc(map[w], a))
                        return false;
                return true;
            }

            auto search(int depth, const Rational & cost) -> void
            {
                if (minimise && best_cost && cost + cheapest_rest[depth] >= *best_cost)
                    return;
                if (depth == int(order.size())) {
                    if (minimise) {
                        best_cost = cost;
                        best_map = map;
                    }
                    else
                        all.push_back(map);
                    return;
                }
                int v = order[depth];
                for_each_bit(lists[v], [&] (int a) {
                        if (! fits(v, a))
                            return;
                        map[v] = a;
                        search(depth + 1, cost + inst.cost(v, a).value());
                        map[v] = -1;
                    });
            }
        };

        auto checked_lists(const Instance & inst, long budget) -> optional<vector<VertexMask> >
        {
            auto lists = arc_consistency(inst.source(), inst.target(), inst.lists());
            if (! lists)
                return nullopt;
            double product = 1;
            for (auto m : *lists) {
                product *= popcount(m);
                if (product > double(budget))
                    throw MinHomError(ErrorKind::SizeLimit, "search space exceeds the brute force budget");
            }
            return lists;
        }
    }

    auto brute_force_min(const Instance & inst, long budget) -> optional<Homomorphism>
    {
        auto lists = checked_lists(inst, budget);
        if (! lists)
            return nullopt;
        Backtracker bt(inst, *lists, true);
        bt.search(0, 0);
        if (! bt.best_cost)
            return nullopt;
        return Homomorphism{ bt.best_map, *bt.best_cost };
    }

    auto all_homomorphisms(const Instance & inst, long budget) -> vector<vector<int> >
    {
        auto lists = checked_lists(inst, budget);
        if (! lists)
            return {};
        Backtracker bt(inst, *lists, false);
        bt.search(0, 0);
        std::sort(bt.all.begin(), bt.all.end());
        return bt.all;
    }

    auto enumerate_integer_solutions(const LpModel & model, int cap) -> vector<IntegerPoint>
    {
        int total = 0;
        for (int v = 0 ; v < model.vertex_count() ; ++v)
            total += int(model.domain(v).size());
        if (total > cap)
            throw MinHomError(ErrorKind::SizeLimit, "model too large to enumerate");

        vector<IntegerPoint> result;
        int n = model.vertex_count();
        vector<int> positions(n, 0);
        for (int v = 0 ; v < n ; ++v)
            if (model.domain(v).empty())
                return result;

        while (true) {
            auto values = model.encode(positions);
            vector<Rational> exact(values.begin(), values.end());
            if (model.satisfied_by(exact))
                result.push_back(IntegerPoint{ values, model.decode(values), model.objective_value(exact) });

            int v = 0;
            while (v < n && ++positions[v] == int(model.domain(v).size()))
                positions[v++] = 0;
            if (v == n)
                break;
        }
        return result;
    }

    auto greedy_list_hom(const Digraph & source, const Digraph & target, const Ordering & ord,
            const vector<VertexMask> & lists, const vector<int> * vertex_levels) -> vector<int>
    {
        vector<int> result(source.size(), -1);
        for (int v = 0 ; v < source.size() ; ++v)
            for (int a : ord.perm) {
                if (! has_bit(lists.at(v), a))
                    continue;
                if (vertex_levels && ord.levels.at(a) != vertex_levels->at(v))
                    continue;
                result[v] = a;
                break;
            }
        if (target.size() == 0)
            throw MinHomError(ErrorKind::Empty, "empty target");
        return result;
    }
}
