/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "helpers.hh"

#include <minhom/approx.hh>
#include <minhom/consistency.hh>
#include <minhom/exact.hh>
#include <minhom/lp_build.hh>
#include <minhom/variants.hh>

#include <doctest.h>

using namespace minhom;

namespace
{
    auto arcs_digraph(int n, const std::vector<Arc> & arcs) -> Digraph
    {
        Digraph d(n);
        for (auto [a, b] : arcs)
            d.add_arc(a, b);
        return d;
    }

    // Thresholds of an integral point: 1 up to the given position, then 0.
    auto step_thresholds(int size, int position) -> std::vector<double>
    {
        std::vector<double> t(size + 1, 0.0);
        for (int i = 0 ; i <= position ; ++i)
            t[i] = 1.0;
        return t;
    }

    auto same_trace(const std::vector<ShiftStep> & got, const std::vector<ShiftStep> & want) -> bool
    {
        if (got.size() != want.size())
            return false;
        for (unsigned i = 0 ; i < got.size() ; ++i)
            if (got[i].vertex != want[i].vertex || got[i].from != want[i].from || got[i].to != want[i].to)
                return false;
        return true;
    }

    auto count_added(const Digraph & d, const Completion & comp, const std::vector<int> & image) -> int
    {
        int result = 0;
        for (auto & [x, y] : d.arcs())
            result += comp.in_added(image[x], image[y]);
        return result;
    }

    struct Solved
    {
        Instance inst;
        Ordering ord;
        Completion comp;
        ListState state;
        LpModel model;
        FracSolution frac;
        Rational lp;
    };

    auto random_solved(std::mt19937_64 & rng, int n, int p, double density = 0.35) -> std::optional<Solved>
    {
        auto found = test::random_min_ordered(p, 0.4, rng);
        if (! found)
            return std::nullopt;
        Instance inst(test::random_digraph(n, density, rng), found->first);
        test::random_costs(inst, rng, 9, 0.1);
        auto state = consistent_lists(inst);
        if (! state)
            return std::nullopt;
        auto ord = Ordering::from_permutation(found->second);
        auto comp = build_completion(inst.target(), ord);
        auto model = build_extended_system(inst, comp, *state);
        auto frac = solve(model, SolveMode::Exact);
        if (frac.status != LpStatus::Optimal)
            return std::nullopt;
        Rational lp = *frac.exact_objective;
        return Solved{ inst, ord, std::move(comp), *state, std::move(model), std::move(frac), lp };
    }
}

TEST_CASE("threshold rounding picks the last position at or above X")
{
    Digraph d(1);
    auto h = test::small_target();
    auto comp = build_completion(h, Ordering::identity(4));
    RepairProblem prob{ &d, &comp, { { 0, 1, 2, 3 } }, { all_bits(4) }, { { 1.0, 0.7, 0.3, 0.0, 0.0 } } };
    CHECK(round_threshold(prob, 0.5).position[0] == 1);
    CHECK(round_threshold(prob, 0.3).position[0] == 2);
    CHECK(round_threshold(prob, 0.9).position[0] == 0);
    CHECK(round_threshold(prob, 1.0).position[0] == 0);

    prob.lists[0] = bit(0) | bit(2);
    CHECK(round_threshold(prob, 0.5).position[0] == 0);
}

TEST_CASE("seven vertex example: only w moves")
{
    // Tails 0, 1, 2 and heads 3 .. 6; the ordering is the identity.
    auto h = arcs_digraph(7, { { 0, 3 }, { 1, 4 }, { 1, 5 }, { 2, 4 }, { 2, 6 } });
    auto comp = build_completion(h, Ordering::identity(7));
    REQUIRE(comp.added == std::vector<Arc>{ { 2, 5 } });

    // x -> w and y -> w, with x = 0, y = 1, w = 2.
    auto d = arcs_digraph(3, { { 0, 2 }, { 1, 2 } });
    std::vector<int> dom{ 0, 1, 2, 3, 4, 5, 6 };
    RepairProblem prob{ &d, &comp, { dom, dom, dom }, { all_bits(7), all_bits(7), all_bits(7) },
        { step_thresholds(7, 2), step_thresholds(7, 2), step_thresholds(7, 5) } };

    auto state = repair_rounding(prob, 0.5, YDraw{ 0.5 });
    CHECK(same_trace(state.trace, { { 2, 5, 4 } }));
    CHECK(state.image(prob) == std::vector<int>{ 2, 2, 4 });
    CHECK(is_valid_hom(d, h, state.image(prob)));
}

TEST_CASE("eight vertex example: y, w, z and u move, v stays")
{
    auto h = arcs_digraph(8, { { 0, 1 }, { 0, 2 }, { 0, 3 }, { 1, 1 }, { 1, 2 }, { 2, 1 }, { 2, 5 }, { 3, 1 },
            { 3, 6 }, { 3, 7 }, { 4, 1 }, { 4, 6 } });
    auto ord = Ordering::identity(8);
    REQUIRE(test::oracle_min_ordering(h, ord.perm));
    auto comp = build_completion(h, ord);
    REQUIRE(comp.in_added(1, 3));

    // u = 0, x = 1, y = 2, w = 3, z = 4, v = 5.
    enum { u, x, y, w, z, v };
    auto d = arcs_digraph(6, { { x, y }, { y, w }, { y, z }, { u, w }, { u, v } });
    std::vector<int> start(6);
    start[u] = 4;
    start[x] = 1;
    start[y] = 3;
    start[w] = 6;
    start[z] = 7;
    start[v] = 1;

    std::vector<int> dom{ 0, 1, 2, 3, 4, 5, 6, 7 };
    RepairProblem prob{ &d, &comp, std::vector<std::vector<int> >(6, dom), std::vector<VertexMask>(6, all_bits(8)), {} };
    for (int s : start)
        prob.thresholds.push_back(step_thresholds(8, s));

    auto state = repair_rounding(prob, 0.5, YDraw{ 1.0 });
    CHECK(same_trace(state.trace, { { y, 3, 2 }, { w, 6, 5 }, { z, 7, 5 }, { u, 4, 2 } }));
    auto image = state.image(prob);
    CHECK(image[v] == 1);
    CHECK(state.deferrals > 0);
    CHECK(is_valid_hom(d, h, image));
}

TEST_CASE("nine vertex k-min example: v then z move down one")
{
    auto h = arcs_digraph(9, { { 0, 3 }, { 0, 4 }, { 1, 3 }, { 2, 5 }, { 3, 6 }, { 4, 7 }, { 5, 8 },
            { 6, 0 }, { 7, 1 }, { 8, 2 } });
    auto ord = Ordering::identity(9).with_levels({ 0, 0, 0, 1, 1, 1, 2, 2, 2 }, 3);
    auto comp = build_completion(h, ord);
    REQUIRE(comp.added == std::vector<Arc>{ { 1, 4 } });

    // The path u -> v -> z, one vertex per level.
    auto d = arcs_digraph(3, { { 0, 1 }, { 1, 2 } });
    RepairProblem prob{ &d, &comp, { { 0, 1, 2 }, { 3, 4, 5 }, { 6, 7, 8 } }, std::vector<VertexMask>(3, all_bits(9)),
        { { 1.0, 0.6, 0.2, 0.0 }, { 1.0, 0.7, 0.1, 0.0 }, { 1.0, 0.6, 0.2, 0.0 } } };

    auto rounded = round_threshold(prob, 0.5);
    CHECK(rounded.image(prob) == std::vector<int>{ 1, 4, 7 });

    for (double y : { 0.01, 0.5, 1.0 }) {
        auto state = repair_rounding(prob, 0.5, YDraw{ y });
        CHECK(same_trace(state.trace, { { 1, 4, 3 }, { 2, 7, 6 } }));
        CHECK(state.image(prob) == std::vector<int>{ 1, 3, 6 });
        CHECK(is_valid_hom(d, h, state.image(prob)));
    }
}

TEST_CASE("no arc sent into E' leaves the rounding alone")
{
    Digraph d(2);
    d.add_arc(0, 1);
    auto h = test::small_target();
    auto comp = build_completion(h, Ordering::identity(4));
    std::vector<int> dom{ 0, 1, 2, 3 };
    RepairProblem prob{ &d, &comp, { dom, dom }, { all_bits(4), all_bits(4) },
        { step_thresholds(4, 1), step_thresholds(4, 2) } };
    auto state = repair_rounding(prob, 0.5, YDraw{ 0.3 });
    CHECK(state.trace.empty());
    CHECK(state.shifts == 0);
    CHECK(state.image(prob) == std::vector<int>{ 1, 2 });
}

TEST_CASE("Y selects among candidates by cumulative weight")
{
    // x at 1 and w at 3 puts the arc on 1 -> 3; w can drop to 1 or 2.
    auto h = arcs_digraph(5, { { 0, 1 }, { 0, 2 }, { 0, 3 }, { 0, 4 }, { 1, 1 }, { 1, 2 }, { 2, 4 } });
    auto ord = Ordering::identity(5);
    REQUIRE(test::oracle_min_ordering(h, ord.perm));
    auto comp = build_completion(h, ord);
    REQUIRE(comp.in_added(1, 3));

    Digraph d(2);
    d.add_arc(0, 1);
    std::vector<int> dom{ 0, 1, 2, 3, 4 };
    // w: positions 1 and 2 carry masses 0.25 and 0.5.
    RepairProblem prob{ &d, &comp, { dom, dom }, { all_bits(5), all_bits(5) },
        { step_thresholds(5, 1), { 1.0, 1.0, 0.75, 0.25, 0.0, 0.0 } } };
    CHECK(round_threshold(prob, 0.25).image(prob) == std::vector<int>{ 1, 3 });

    CHECK(repair_rounding(prob, 0.25, YDraw{ 0.2 }).image(prob)[1] == 1);
    CHECK(repair_rounding(prob, 0.25, YDraw{ 1.0 / 3 }).image(prob)[1] == 1);
    CHECK(repair_rounding(prob, 0.25, YDraw{ 0.34 }).image(prob)[1] == 2);
    CHECK(repair_rounding(prob, 0.25, YDraw{ 1.0 / 3, true }).image(prob)[1] == 2);
}

TEST_CASE("integral LP points round to the encoded homomorphism")
{
    std::mt19937_64 rng(41);
    int done = 0;
    for (int round = 0 ; round < 120 && done < 40 ; ++round) {
        auto s = random_solved(rng, 5, 2 + int(rng() % 4));
        if (! s)
            continue;
        auto best = brute_force_min(s->inst);
        REQUIRE(best);
        std::vector<int> positions;
        for (int v = 0 ; v < s->model.vertex_count() ; ++v) {
            auto & dom = s->model.domain(v);
            positions.push_back(int(std::find(dom.begin(), dom.end(), best->map[v]) - dom.begin()));
        }
        FracSolution frac;
        for (auto & value : s->model.encode(positions))
            frac.values.push_back(double(value));
        auto prob = make_repair_problem(s->inst.source(), s->comp, s->model, s->state.lists, frac);
        for (double x : { 0.01, 0.5, 1.0 }) {
            auto state = repair_rounding(prob, x, YDraw{ 0.5 });
            CHECK(state.trace.empty());
            CHECK(state.image(prob) == best->map);
        }
        ++done;
    }
    CHECK(done >= 20);
}

TEST_CASE("property: randomized runs end in valid homomorphisms within the shift budget")
{
    std::mt19937_64 rng(42);
    int done = 0, moved = 0;
    for (int round = 0 ; round < 400 && done < 150 ; ++round) {
        auto s = random_solved(rng, 3 + int(rng() % 5), 3 + int(rng() % 4), 0.4);
        if (! s)
            continue;
        ++done;
        auto prob = make_repair_problem(s->inst.source(), s->comp, s->model, s->state.lists, s->frac);
        auto opt = test::oracle_min_cost(s->inst);
        REQUIRE(opt);
        CHECK(s->lp <= *opt);
        long budget = long(s->comp.added.size()) * s->inst.target().size() * s->inst.source().size();
        for (int run = 0 ; run < 8 ; ++run) {
            auto [x, y] = seeded_draws(rng());
            auto state = repair_rounding(prob, x, YDraw{ y });
            auto image = state.image(prob);
            CHECK(count_added(s->inst.source(), s->comp, image) == 0);
            CHECK(state.shifts <= budget);
            moved += state.shifts > 0;
            auto check = validate_hom(s->inst, image);
            REQUIRE(std::holds_alternative<Homomorphism>(check));
            CHECK(std::get<Homomorphism>(check).cost >= *opt);
            for (auto & step : state.trace) {
                auto & dom = prob.domains[step.vertex];
                auto rank = [&] (int a) { return std::find(dom.begin(), dom.end(), a) - dom.begin(); };
                CHECK(rank(step.to) < rank(step.from));
            }
        }
    }
    CHECK(done >= 100);
    CHECK(moved > 0);
}

TEST_CASE("property: derandomized cost sits between the optimum and p^2 times the LP")
{
    std::mt19937_64 rng(43);
    int done = 0;
    for (int round = 0 ; round < 300 && done < 80 ; ++round) {
        auto s = random_solved(rng, 3 + int(rng() % 5), 3 + int(rng() % 4), 0.4);
        if (! s)
            continue;
        ++done;
        auto prob = make_repair_problem(s->inst.source(), s->comp, s->model, s->state.lists, s->frac);
        auto evaluate = [&] (const std::vector<int> & image) {
            return std::pair{ image, eval_cost(s->inst, image).value() };
        };
        auto best = derandomize(prob, evaluate);
        CHECK(is_valid_hom(s->inst.source(), s->inst.target(), best.map));
        auto opt = test::oracle_min_cost(s->inst);
        REQUIRE(opt);
        int p = s->inst.target().size();
        CHECK(s->lp <= *opt);
        CHECK(*opt <= best.cost);
        CHECK(best.cost <= Rational(p * p) * s->lp);

        // No single randomized run beats the sweep.
        for (int run = 0 ; run < 10 ; ++run) {
            auto [x, y] = seeded_draws(rng());
            auto image = repair_rounding(prob, x, YDraw{ y }).image(prob);
            CHECK(best.cost <= eval_cost(s->inst, image).value());
        }
    }
    CHECK(done >= 50);
}

TEST_CASE("min-max ordered targets need no shifts")
{
    std::mt19937_64 rng(44);
    int done = 0;
    for (int round = 0 ; round < 300 && done < 30 ; ++round) {
        auto h = test::random_digraph(2 + int(rng() % 4), 0.4, rng, true);
        auto ord = find_ordering(h, OrderingKind::MinMax);
        if (! ord || h.arc_count() == 0)
            continue;
        Instance inst(test::random_digraph(5, 0.35, rng), h);
        test::random_costs(inst, rng, 9);
        auto state = consistent_lists(inst);
        if (! state)
            continue;
        auto comp = build_completion(h, *ord);
        REQUIRE(comp.added.empty());
        auto model = build_extended_system(inst, comp, *state);
        auto frac = solve(model, SolveMode::Exact);
        REQUIRE(frac.status == LpStatus::Optimal);
        auto prob = make_repair_problem(inst.source(), comp, model, state->lists, frac);
        auto result = repair_rounding(prob, 0.5, YDraw{ 0.5 });
        CHECK(result.trace.empty());
        CHECK(is_valid_hom(inst.source(), h, result.image(prob)));
        ++done;
    }
    CHECK(done >= 20);
}

TEST_CASE("vertex cover through the bi-arc route")
{
    // Path a - b - c with weights 1, 5, 1: the cheapest cover is {a, c}.
    Digraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    Instance inst(g, test::vertex_cover_target());
    std::vector<long> weight{ 1, 5, 1 };
    for (int x = 0 ; x < 3 ; ++x) {
        inst.set_cost(x, 0, Cost(0));
        inst.set_cost(x, 1, Cost(weight[x]));
    }
    RunOptions opts;
    opts.mode = Mode::Derand;
    opts.lp_mode = SolveMode::Exact;
    auto r = run_variant(inst, Variant::BiarcGraph, opts);
    REQUIRE(r.hom);
    REQUIRE(r.exact_lp_value);
    CHECK(is_valid_hom(g, inst.target(), r.hom->map));
    CHECK(r.hom->cost <= Rational(4) * *r.exact_lp_value);
    CHECK(r.hom->cost == 2);

    std::mt19937_64 rng(45);
    for (int round = 0 ; round < 40 ; ++round) {
        auto gr = test::random_graph(6, 0.4, rng);
        Instance cover(gr, test::vertex_cover_target());
        for (int x = 0 ; x < 6 ; ++x) {
            cover.set_cost(x, 0, Cost(0));
            cover.set_cost(x, 1, Cost(long(1 + rng() % 20)));
        }
        auto out = run_variant(cover, Variant::BiarcGraph, opts);
        REQUIRE(out.hom);
        auto opt = test::oracle_min_cost(cover);
        REQUIRE(opt);
        CHECK(*out.exact_lp_value <= *opt);
        CHECK(*opt <= out.hom->cost);
        CHECK(out.hom->cost <= Rational(4) * *out.exact_lp_value);
    }
}
