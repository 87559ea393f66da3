/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/variants.hh>

#include <deque>
#include <random>

using std::optional;
using std::pair;
using std::string;
using std::to_string;
using std::vector;

namespace minhom
{
    auto parse_variant(const string & s) -> Variant
    {
        if (s == "minorder")
            return Variant::MinOrder;
        if (s == "kmin")
            return Variant::Kmin;
        if (s == "biarc-graph")
            return Variant::BiarcGraph;
        throw MinHomError(ErrorKind::BadArgument, "unknown variant '" + s + "'");
    }

    auto parse_mode(const string & s) -> Mode
    {
        if (s == "lp")
            return Mode::Lp;
        if (s == "ilp")
            return Mode::Ilp;
        if (s == "exact")
            return Mode::Exact;
        if (s == "approx")
            return Mode::Approx;
        if (s == "derand")
            return Mode::Derand;
        throw MinHomError(ErrorKind::BadArgument, "unknown mode '" + s + "'");
    }

    auto variant_name(Variant v) -> string
    {
        switch (v) {
            case Variant::MinOrder:   return "minorder";
            case Variant::Kmin:       return "kmin";
            case Variant::BiarcGraph: return "biarc-graph";
        }
        return "";
    }

    auto mode_name(Mode m) -> string
    {
        switch (m) {
            case Mode::Lp:     return "lp";
            case Mode::Ilp:    return "ilp";
            case Mode::Exact:  return "exact";
            case Mode::Approx: return "approx";
            case Mode::Derand: return "derand";
        }
        return "";
    }

    auto seeded_draws(std::uint64_t seed) -> pair<double, double>
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        double x = 1.0 - dist(rng);
        double y = 1.0 - dist(rng);
        return { x, y };
    }

    auto resolve_min_ordering(const Digraph & h, const optional<Ordering> & given) -> Ordering
    {
        if (given) {
            if (given->size() != h.size())
                throw MinHomError(ErrorKind::BadOrder, "ordering has the wrong length");
            Ordering plain = Ordering::from_permutation(given->perm);
            if (! verify_min_ordering(h, plain))
                throw MinHomError(ErrorKind::NotMinOrdering, "given order is not a min ordering");
            return plain;
        }
        auto found = find_ordering(h, OrderingKind::Min);
        if (! found)
            throw MinHomError(ErrorKind::NotMinOrdering, "target admits no min ordering");
        return *found;
    }

    auto resolve_kmin_ordering(const Digraph & h, const optional<Ordering> & given, int k) -> Ordering
    {
        if (given) {
            if (! given->has_levels())
                throw MinHomError(ErrorKind::BadOrder, "k-min ordering needs levels");
            if (! verify_kmin_ordering(h, *given))
                throw MinHomError(ErrorKind::NotKminOrdering, "given order is not a k-min ordering");
            return *given;
        }
        for (int kk = (k > 0 ? k : 2) ; kk <= (k > 0 ? k : std::max(2, h.size())) ; ++kk) {
            auto found = find_ordering(h, OrderingKind::KMin, kk);
            if (found)
                return *found;
        }
        throw MinHomError(ErrorKind::NotKminOrdering, "target admits no k-min ordering");
    }

    auto source_levels(const Digraph & d, int k) -> vector<int>
    {
        vector<int> level(d.size(), -1);
        for (auto & comp : weak_components(d)) {
            level[comp[0]] = 0;
            std::deque<int> queue{ comp[0] };
            while (! queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                for (int w : d.out_neighbours(v)) {
                    int want = (level[v] + 1) % k;
                    if (level[w] == -1) {
                        level[w] = want;
                        queue.push_back(w);
                    }
                    else if (level[w] != want)
                        throw MinHomError(ErrorKind::NotCyclic, "source has no homomorphism to the directed "
                                + to_string(k) + "-cycle");
                }
                for (int w : d.in_neighbours(v)) {
                    int want = (level[v] + k - 1) % k;
                    if (level[w] == -1) {
                        level[w] = want;
                        queue.push_back(w);
                    }
                    else if (level[w] != want)
                        throw MinHomError(ErrorKind::NotCyclic, "source has no homomorphism to the directed "
                                + to_string(k) + "-cycle");
                }
            }
        }
        return level;
    }

    auto level_restricted(const Instance & inst, const Ordering & ord, const vector<int> & vertex_levels) -> Instance
    {
        CostTable costs = inst.costs();
        for (int x = 0 ; x < inst.source().size() ; ++x)
            for (int a = 0 ; a < inst.target().size() ; ++a)
                if (ord.levels[a] != vertex_levels[x])
                    costs.set(x, a, Cost::infinite());
        return Instance(inst.source(), inst.target(), costs);
    }

    namespace
    {
        auto same_model(const LpModel & a, const LpModel & b) -> bool
        {
            if (a.variable_count() != b.variable_count() || a.domains() != b.domains()
                    || a.objective() != b.objective() || a.constraints().size() != b.constraints().size())
                return false;
            for (std::size_t k = 0 ; k < a.constraints().size() ; ++k) {
                auto & x = a.constraints()[k];
                auto & y = b.constraints()[k];
                if (x.sense != y.sense || x.rhs != y.rhs || x.family != y.family || x.terms.size() != y.terms.size())
                    return false;
                for (std::size_t t = 0 ; t < x.terms.size() ; ++t)
                    if (x.terms[t].var != y.terms[t].var || x.terms[t].coefficient != y.terms[t].coefficient)
                        return false;
            }
            return true;
        }
    }

    auto LpCache::find(const LpModel & model, SolveMode mode) const -> const FracSolution *
    {
        for (auto & [m, s] : _entries)
            if ((mode == SolveMode::Float || s.exact_values) && same_model(m, model))
                return &s;
        return nullptr;
    }

    auto LpCache::store(const LpModel & model, const FracSolution & solution) -> void
    {
        _entries.emplace_back(model, solution);
    }

    namespace
    {
        auto infeasible_result() -> VariantResult
        {
            VariantResult r;
            r.feasible = false;
            return r;
        }

        auto as_hom(const Instance & inst, const vector<int> & map) -> Homomorphism
        {
            auto check = validate_hom(inst, map);
            if (auto * v = std::get_if<Violation>(&check))
                throw MinHomError(ErrorKind::Internal, "produced map is invalid: " + describe(*v));
            return std::get<Homomorphism>(check);
        }

        // LP, then whatever the mode asks for on top of it.
        auto solve_frame(const Instance & inst, const LpModel & model, const Digraph & source,
                const Completion & comp, const vector<VertexMask> & lists, const RunOptions & opts,
                const ImageEvaluator & evaluate, const Rational & lp_scale) -> VariantResult
        {
            VariantResult result;
            const FracSolution * cached = opts.lp_cache ? opts.lp_cache->find(model, opts.lp_mode) : nullptr;
            auto lp = cached ? *cached : solve(model, opts.lp_mode);
            if (opts.lp_cache && ! cached)
                opts.lp_cache->store(model, lp);
            if (lp.status == LpStatus::Infeasible)
                return infeasible_result();

            result.feasible = true;
            result.lp_value = lp.objective * lp_scale.get_d();
            if (lp.exact_objective)
                result.exact_lp_value = *lp.exact_objective * lp_scale;
            result.diagnostics["lp_iterations"] = to_string(lp.iterations);
            result.diagnostics["added_arcs"] = to_string(comp.added.size());
            result.diagnostics["rows"] = to_string(model.constraints().size());

            switch (opts.mode) {
                case Mode::Lp:
                case Mode::Exact:
                    break;

                case Mode::Ilp: {
                    auto ir = solve_integer(model, IntegerOptions{ opts.lp_mode, opts.node_limit });
                    if (ir.status == LpStatus::Infeasible)
                        return infeasible_result();
                    auto [map, cost] = evaluate(ir.map);
                    result.hom = Homomorphism{ map, cost };
                    result.diagnostics["nodes"] = to_string(ir.nodes);
                    break;
                }

                case Mode::Approx: {
                    auto prob = make_repair_problem(source, comp, model, lists, lp);
                    auto [x, y] = seeded_draws(opts.seed);
                    auto state = repair_rounding(prob, x, YDraw{ y, false });
                    auto [map, cost] = evaluate(state.image(prob));
                    result.hom = Homomorphism{ map, cost };
                    result.trace = state.trace;
                    result.diagnostics["x"] = to_string(x);
                    result.diagnostics["y"] = to_string(y);
                    result.diagnostics["shifts"] = to_string(state.shifts);
                    result.diagnostics["deferrals"] = to_string(state.deferrals);
                    break;
                }

                case Mode::Derand: {
                    auto prob = make_repair_problem(source, comp, model, lists, lp);
                    auto best = derandomize(prob, evaluate);
                    result.hom = Homomorphism{ best.map, best.cost };
                    result.diagnostics["runs"] = to_string(best.runs);
                    break;
                }
            }

            (void) inst;
            return result;
        }

        auto run_exact(const Instance & inst, const RunOptions & opts) -> VariantResult
        {
            auto best = brute_force_min(inst, opts.brute_force_budget);
            if (! best)
                return infeasible_result();
            VariantResult r;
            r.feasible = true;
            r.hom = *best;
            return r;
        }

        auto run_min_order(const Instance & inst, const RunOptions & opts) -> VariantResult
        {
            auto ord = resolve_min_ordering(inst.target(), opts.ordering);
            if (opts.mode == Mode::Exact)
                return run_exact(inst, opts);
            auto comp = build_completion(inst.target(), ord);
            auto state = consistent_lists(inst);
            if (! state)
                return infeasible_result();
            auto model = build_extended_system(inst, comp, *state, opts.pairs);
            auto evaluate = [&] (const vector<int> & image) {
                auto hom = as_hom(inst, image);
                return pair{ hom.map, hom.cost };
            };
            return solve_frame(inst, model, inst.source(), comp, state->lists, opts, evaluate, 1);
        }

        auto run_kmin(const Instance & inst, const RunOptions & opts) -> VariantResult
        {
            auto ord = resolve_kmin_ordering(inst.target(), opts.ordering, opts.k);
            auto levels = source_levels(inst.source(), ord.k);
            if (opts.mode == Mode::Exact)
                return run_exact(inst, opts);
            auto comp = build_completion(inst.target(), ord);

            VariantResult total;
            total.feasible = true;
            double lp_sum = 0;
            Rational exact_sum = 0;
            bool all_exact = true;
            vector<int> map(inst.source().size(), -1);

            for (auto & vertices : weak_components(inst.source())) {
                Digraph sub = inst.source().induced(vertices);
                CostTable sub_costs(sub.size(), inst.target().size());
                for (int i = 0 ; i < sub.size() ; ++i)
                    for (int a = 0 ; a < inst.target().size() ; ++a)
                        sub_costs.set(i, a, inst.cost(vertices[i], a));
                Instance sub_inst(sub, inst.target(), sub_costs);

                optional<VariantResult> best_lp, best_hom;
                for (int rot = 0 ; rot < ord.k ; ++rot) {
                    vector<int> vl(sub.size());
                    for (int i = 0 ; i < sub.size() ; ++i)
                        vl[i] = (levels[vertices[i]] + rot) % ord.k;
                    auto restricted = level_restricted(sub_inst, ord, vl);
                    auto state = consistent_lists(restricted);
                    if (! state)
                        continue;
                    auto model = build_kmin_system(restricted, comp, vl, *state, opts.pairs);
                    auto evaluate = [&] (const vector<int> & image) {
                        auto hom = as_hom(restricted, image);
                        return pair{ hom.map, hom.cost };
                    };
                    auto r = solve_frame(restricted, model, restricted.source(), comp, state->lists, opts, evaluate, 1);
                    if (! r.feasible)
                        continue;
                    if (! best_lp || *r.lp_value < *best_lp->lp_value)
                        best_lp = r;
                    if (r.hom && (! best_hom || r.hom->cost < best_hom->hom->cost)) {
                        for (auto & step : r.trace)
                            step.vertex = vertices[step.vertex];
                        best_hom = r;
                    }
                }

                if (! best_lp)
                    return infeasible_result();
                lp_sum += *best_lp->lp_value;
                if (best_lp->exact_lp_value)
                    exact_sum += *best_lp->exact_lp_value;
                else
                    all_exact = false;
                if (opts.mode != Mode::Lp) {
                    if (! best_hom)
                        return infeasible_result();
                    for (int i = 0 ; i < sub.size() ; ++i)
                        map[vertices[i]] = best_hom->hom->map[i];
                    total.trace.insert(total.trace.end(), best_hom->trace.begin(), best_hom->trace.end());
                    for (auto & [key, value] : best_hom->diagnostics)
                        total.diagnostics[key] = value;
                }
            }

            total.lp_value = lp_sum;
            if (all_exact)
                total.exact_lp_value = exact_sum;
            if (opts.mode != Mode::Lp)
                total.hom = as_hom(inst, map);
            total.diagnostics["k"] = to_string(ord.k);
            return total;
        }

        auto run_biarc(const Instance & inst, const RunOptions & opts) -> VariantResult
        {
            if (! inst.source().is_symmetric() || ! inst.target().is_symmetric())
                throw MinHomError(ErrorKind::BadArgument, "bi-arc variant needs symmetric digraphs");
            auto star = star_ordering(inst.target());
            if (opts.mode == Mode::Exact)
                return run_exact(inst, opts);
            auto state = consistent_lists(inst);
            if (! state)
                return infeasible_result();
            auto dbl = build_doubling(inst, *state);
            long fallbacks = 0;
            auto evaluate = [&] (const vector<int> & image) {
                auto folded = fold_biarc_image(inst.source(), inst.target(), *state, dbl.ordering, image);
                if (folded.fallback)
                    ++fallbacks;
                auto hom = as_hom(inst, folded.map);
                return pair{ hom.map, hom.cost };
            };
            auto r = solve_frame(inst, dbl.model, dbl.source, dbl.completion, dbl.lists, opts, evaluate, Rational(1, 2));
            r.diagnostics["stage2_fallbacks"] = to_string(fallbacks);
            (void) star;
            return r;
        }
    }

    auto run_variant(const Instance & inst, Variant variant, const RunOptions & opts) -> VariantResult
    {
        switch (variant) {
            case Variant::MinOrder:   return run_min_order(inst, opts);
            case Variant::Kmin:       return run_kmin(inst, opts);
            case Variant::BiarcGraph: return run_biarc(inst, opts);
        }
        throw MinHomError(ErrorKind::Internal, "unknown variant");
    }
}
