/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/lp_build.hh>

#include <algorithm>

using std::string;
using std::to_string;
using std::vector;

namespace minhom
{
    auto family_names(const string & prefix) -> FamilyNames
    {
        FamilyNames result;
        for (int i = 0 ; i < 12 ; ++i)
            result[i] = prefix + to_string(i + 1);
        return result;
    }

    auto ordered_domains(int vertices, const Ordering & ord) -> vector<vector<int> >
    {
        return vector<vector<int> >(vertices, ord.perm);
    }

    auto pair_scope(const Digraph & g, PairScope scope) -> vector<Arc>
    {
        switch (scope) {
            case PairScope::None:
                return {};
            case PairScope::Close:
                return close_pairs(g, 2);
            case PairScope::All: {
                vector<Arc> result;
                for (int u = 0 ; u < g.size() ; ++u)
                    for (int v = 0 ; v < g.size() ; ++v)
                        if (u != v)
                            result.emplace_back(u, v);
                return result;
            }
        }
        return {};
    }

    namespace
    {
        struct Emitter
        {
            const ThresholdSpec & spec;
            LpModel & model;

            auto t(int v, int i) const -> int
            {
                return model.threshold(v, i);
            }

            // mass at position i, as terms with the given sign
            auto mass(vector<LinearTerm> & terms, int v, int i, long sign) const -> void
            {
                terms.push_back(LinearTerm{ t(v, i), sign });
                terms.push_back(LinearTerm{ t(v, i + 1), -sign });
            }

            auto position_of(int v, int h) const -> int
            {
                auto & d = spec.domains[v];
                for (int i = 0 ; i < int(d.size()) ; ++i)
                    if (d[i] == h)
                        return i;
                return -1;
            }

            auto name(int i) const -> const string &
            {
                return spec.family[i - 1];
            }
        };
    }

    auto build_threshold_system(const ThresholdSpec & spec) -> LpModel
    {
        const auto & d = *spec.source;
        LpModel model(spec.domains);
        Emitter e{ spec, model };
        int n = d.size();

        for (int v = 0 ; v < n ; ++v) {
            auto & dom = spec.domains[v];
            int m = int(dom.size());
            for (int i = 0 ; i < m ; ++i)
                if (has_bit(spec.lists[v], dom[i]) && spec.costs[v][i] != 0) {
                    model.add_objective(e.t(v, i), spec.costs[v][i]);
                    model.add_objective(e.t(v, i + 1), -spec.costs[v][i]);
                }
        }

        for (int v = 0 ; v < n ; ++v)
            for (int i = 0 ; i < int(spec.domains[v].size()) ; ++i)
                model.add_constraint(e.name(1), { { e.t(v, i), 1 } }, Sense::GreaterEqual, 0);

        for (int v = 0 ; v < n ; ++v)
            model.add_constraint(e.name(2), { { e.t(v, 0), 1 } }, Sense::Equal, 1);

        for (int v = 0 ; v < n ; ++v)
            model.add_constraint(e.name(3), { { e.t(v, int(spec.domains[v].size())), 1 } }, Sense::Equal, 0);

        for (int v = 0 ; v < n ; ++v)
            for (int i = 0 ; i < int(spec.domains[v].size()) ; ++i)
                model.add_constraint(e.name(4), { { e.t(v, i + 1), 1 }, { e.t(v, i), -1 } }, Sense::LessEqual, 0);

        for (int v = 0 ; v < n ; ++v)
            for (int i = 0 ; i < int(spec.domains[v].size()) ; ++i)
                if (! has_bit(spec.lists[v], spec.domains[v][i]))
                    model.add_constraint(e.name(5), { { e.t(v, i + 1), 1 }, { e.t(v, i), -1 } }, Sense::Equal, 0);

        for (auto & [u, v] : d.arcs()) {
            auto & du = spec.domains[u];
            auto & dv = spec.domains[v];
            for (int i = 0 ; i < int(du.size()) ; ++i)
                for (int j = 0 ; j < int(dv.size()) ; ++j)
                    if (has_bit(spec.out_arcs[du[i]], dv[j])) {
                        model.add_constraint(e.name(6), { { e.t(u, i), 1 }, { e.t(v, j), -1 } }, Sense::LessEqual, 0);
                        break;
                    }
            for (int j = 0 ; j < int(dv.size()) ; ++j)
                for (int i = 0 ; i < int(du.size()) ; ++i)
                    if (has_bit(spec.in_arcs[dv[j]], du[i])) {
                        model.add_constraint(e.name(7), { { e.t(v, j), 1 }, { e.t(u, i), -1 } }, Sense::LessEqual, 0);
                        break;
                    }
        }

        if (spec.completion) {
            auto & comp = *spec.completion;
            for (auto & [a, b] : comp.added)
                for (auto & [u, v] : d.arcs()) {
                    int i = e.position_of(u, a), j = e.position_of(v, b);
                    if (i == -1 || j == -1)
                        continue;
                    auto & du = spec.domains[u];
                    auto & dv = spec.domains[v];

                    // in-neighbours of b in L(u): sum over those before a, first after a
                    vector<LinearTerm> terms;
                    int s = -1;
                    for (int q = 0 ; q < int(du.size()) ; ++q) {
                        if (! has_bit(spec.lists[u], du[q]) || ! has_bit(comp.in_base[b], du[q]))
                            continue;
                        if (q < i)
                            e.mass(terms, u, q, -1);
                        else if (q > i && s == -1)
                            s = q;
                    }
                    terms.push_back(LinearTerm{ e.t(v, j), 1 });
                    if (s != -1) {
                        terms.push_back(LinearTerm{ e.t(u, s), -1 });
                        model.add_constraint(e.name(8), terms, Sense::LessEqual, 0);
                    }
                    else {
                        terms.push_back(LinearTerm{ e.t(v, j + 1), -1 });
                        model.add_constraint(e.name(9), terms, Sense::LessEqual, 0);
                    }

                    // out-neighbours of a in L(v)
                    terms.clear();
                    s = -1;
                    for (int q = 0 ; q < int(dv.size()) ; ++q) {
                        if (! has_bit(spec.lists[v], dv[q]) || ! has_bit(comp.out_base[a], dv[q]))
                            continue;
                        if (q < j)
                            e.mass(terms, v, q, -1);
                        else if (q > j && s == -1)
                            s = q;
                    }
                    terms.push_back(LinearTerm{ e.t(u, i), 1 });
                    if (s != -1) {
                        terms.push_back(LinearTerm{ e.t(v, s), -1 });
                        model.add_constraint(e.name(10), terms, Sense::LessEqual, 0);
                    }
                    else {
                        terms.push_back(LinearTerm{ e.t(u, i + 1), -1 });
                        model.add_constraint(e.name(11), terms, Sense::LessEqual, 0);
                    }
                }
        }

        if (spec.pairs)
            for (auto & [u, v] : spec.pair_scope) {
                auto & du = spec.domains[u];
                auto & dv = spec.domains[v];
                for (int i = 0 ; i < int(du.size()) ; ++i) {
                    int a = du[i];
                    if (! has_bit(spec.lists[u], a))
                        continue;
                    vector<LinearTerm> terms;
                    e.mass(terms, u, i, 1);
                    VertexMask allowed = spec.pairs->row(u, v, a);
                    for (int j = 0 ; j < int(dv.size()) ; ++j)
                        if (has_bit(allowed, dv[j]))
                            e.mass(terms, v, j, -1);
                    model.add_constraint(e.name(12), terms, Sense::LessEqual, 0);
                }
            }

        return model;
    }

    namespace
    {
        auto aligned_costs(const Instance & inst, const vector<vector<int> > & domains,
                const vector<VertexMask> & lists) -> vector<vector<Rational> >
        {
            vector<vector<Rational> > result(domains.size());
            for (unsigned v = 0 ; v < domains.size() ; ++v)
                for (int h : domains[v])
                    result[v].push_back(has_bit(lists[v], h) ? inst.cost(v, h).value() : Rational(0));
            return result;
        }
    }

    auto build_base_system(const Instance & inst, const Ordering & ord, const vector<VertexMask> & lists) -> LpModel
    {
        ThresholdSpec spec;
        spec.source = &inst.source();
        spec.domains = ordered_domains(inst.source().size(), ord);
        spec.lists = lists;
        spec.costs = aligned_costs(inst, spec.domains, lists);
        spec.out_arcs = out_masks(inst.target());
        spec.in_arcs = in_masks(inst.target());
        return build_threshold_system(spec);
    }

    auto build_extended_system(const Instance & inst, const Completion & comp, const ListState & state,
            PairScope scope) -> LpModel
    {
        ThresholdSpec spec;
        spec.source = &inst.source();
        spec.domains = ordered_domains(inst.source().size(), comp.ordering);
        spec.lists = state.lists;
        spec.costs = aligned_costs(inst, spec.domains, state.lists);
        spec.out_arcs = comp.out_all;
        spec.in_arcs = comp.in_all;
        spec.completion = &comp;
        if (scope != PairScope::None && ! state.pairs.empty()) {
            spec.pairs = &state.pairs;
            spec.pair_scope = pair_scope(inst.source(), scope);
        }
        return build_threshold_system(spec);
    }

    auto build_kmin_system(const Instance & inst, const Completion & comp, const vector<int> & vertex_levels,
            const ListState & state, PairScope scope) -> LpModel
    {
        auto & ord = comp.ordering;
        if (! ord.has_levels())
            throw MinHomError(ErrorKind::NotKminOrdering, "ordering has no levels");

        ThresholdSpec spec;
        spec.source = &inst.source();
        for (int v = 0 ; v < inst.source().size() ; ++v) {
            vector<int> dom;
            for (int h : ord.perm)
                if (ord.levels[h] == vertex_levels.at(v))
                    dom.push_back(h);
            spec.domains.push_back(std::move(dom));
        }
        spec.lists = state.lists;
        for (int v = 0 ; v < inst.source().size() ; ++v)
            for (int h = 0 ; h < ord.size() ; ++h)
                if (has_bit(spec.lists[v], h) && ord.levels[h] != vertex_levels[v])
                    throw MinHomError(ErrorKind::Internal, "list leaves its level");
        spec.costs = aligned_costs(inst, spec.domains, state.lists);
        spec.out_arcs = comp.out_all;
        spec.in_arcs = comp.in_all;
        spec.completion = &comp;
        if (scope != PairScope::None && ! state.pairs.empty()) {
            spec.pairs = &state.pairs;
            spec.pair_scope = pair_scope(inst.source(), scope);
        }
        spec.family = family_names("A");
        auto model = build_threshold_system(spec);
        model.set_prefix("a");
        return model;
    }

    auto star_ordering(const Digraph & target) -> Ordering
    {
        auto star = star_digraph(target);
        auto ord = find_ordering(star, OrderingKind::Min, 0, 2 * default_ordering_bound);
        if (! ord)
            throw MinHomError(ErrorKind::NotBiarc, "H* admits no min ordering");
        return *ord;
    }

    namespace
    {
        auto doubled(const Digraph & source, const Digraph & target, const ListState & state,
                const Instance & inst, const string & prefix) -> Doubling
        {
            int n = source.size(), p = target.size();
            Doubling result{ Digraph(2 * n), star_digraph(target), Ordering{}, Completion{}, {}, {}, LpModel(vector<vector<int> >{}) };
            for (auto & [u, v] : source.arcs())
                result.source.add_arc(u, n + v);

            result.ordering = star_ordering(target);
            result.completion = build_completion(result.target, result.ordering);

            vector<int> side_a, side_b;
            for (int h : result.ordering.perm)
                (h < p ? side_a : side_b).push_back(h);
            vector<int> b_position(p, -1);
            for (int j = 0 ; j < p ; ++j)
                b_position[side_b[j] - p] = j;
            for (int i = 0 ; i < p ; ++i)
                result.pi.push_back(b_position[side_a[i]]);

            result.lists.resize(2 * n);
            for (int u = 0 ; u < n ; ++u) {
                result.lists[u] = state.lists[u];
                result.lists[n + u] = state.lists[u] << p;
            }

            ThresholdSpec spec;
            spec.source = &result.source;
            spec.lists = result.lists;
            for (int u = 0 ; u < 2 * n ; ++u) {
                spec.domains.push_back(u < n ? side_a : side_b);
                vector<Rational> costs;
                for (int h : spec.domains.back()) {
                    int x = h % p, orig = u % n;
                    costs.push_back(has_bit(state.lists[orig], x) ? inst.cost(orig, x).value() : Rational(0));
                }
                spec.costs.push_back(std::move(costs));
            }
            spec.out_arcs = result.completion.out_all;
            spec.in_arcs = result.completion.in_all;
            spec.completion = &result.completion;

            // E' rows come after the tie rows in the published numbering
            auto names = family_names(prefix);
            names[7] = prefix + "9";
            names[8] = prefix + "10";
            names[9] = prefix + "11";
            names[10] = prefix + "12";
            spec.family = names;

            result.model = build_threshold_system(spec);
            result.model.set_prefix(prefix == "CM" ? "m" : "d");
            return result;
        }

        auto add_ties(Doubling & result, int n, int p, const string & family) -> void
        {
            auto & model = result.model;
            for (int u = 0 ; u < n ; ++u)
                for (int i = 0 ; i < p ; ++i) {
                    int j = result.pi[i];
                    vector<LinearTerm> terms{
                        { model.threshold(u, i), 1 }, { model.threshold(u, i + 1), -1 },
                        { model.threshold(n + u, j), -1 }, { model.threshold(n + u, j + 1), 1 } };
                    model.add_constraint(family, terms, Sense::Equal, 0);
                }
        }
    }

    auto build_doubling(const Instance & inst, const ListState & state) -> Doubling
    {
        if (! inst.source().is_symmetric() || ! inst.target().is_symmetric())
            throw MinHomError(ErrorKind::BadArgument, "doubling needs symmetric digraphs");
        auto result = doubled(inst.source(), inst.target(), state, inst, "CM");
        add_ties(result, inst.source().size(), inst.target().size(), "CM8");
        return result;
    }

    auto build_cd_system(const Instance & inst, const ListState & state, PairScope scope) -> Doubling
    {
        const auto & h = inst.target();
        if (h.size() <= default_dat_bound && detect_dat(h))
            throw MinHomError(ErrorKind::NotDatFree, "target contains a DAT");
        Doubling result;
        try {
            result = doubled(inst.source(), h, state, inst, "CD");
        }
        catch (const MinHomError & e) {
            if (e.kind() == ErrorKind::NotBiarc)
                throw MinHomError(ErrorKind::NotBiarcStar, "H* admits no min ordering");
            throw;
        }

        int n = inst.source().size(), p = h.size();
        auto & model = result.model;

        if (scope != PairScope::None && ! state.pairs.empty())
            for (auto & [u, v] : pair_scope(inst.source(), scope))
                for (int from_side = 0 ; from_side < 2 ; ++from_side)
                    for (int to_side = 0 ; to_side < 2 ; ++to_side) {
                        int su = from_side * n + u, sv = to_side * n + v;
                        auto & du = model.domain(su);
                        auto & dv = model.domain(sv);
                        for (int i = 0 ; i < p ; ++i) {
                            int x = du[i] % p;
                            if (! has_bit(state.lists[u], x))
                                continue;
                            vector<LinearTerm> terms{ { model.threshold(su, i), 1 }, { model.threshold(su, i + 1), -1 } };
                            VertexMask allowed = state.pairs.row(u, v, x);
                            for (int j = 0 ; j < p ; ++j)
                                if (has_bit(allowed, dv[j] % p)) {
                                    terms.push_back(LinearTerm{ model.threshold(sv, j), -1 });
                                    terms.push_back(LinearTerm{ model.threshold(sv, j + 1), 1 });
                                }
                            model.add_constraint("CD12", terms, Sense::LessEqual, 0);
                        }
                    }

        add_ties(result, n, p, "CD13");
        return result;
    }
}
