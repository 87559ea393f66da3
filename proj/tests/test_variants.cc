/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "helpers.hh"

#include <minhom/variants.hh>

#include <doctest.h>

using namespace minhom;

namespace
{
    auto kind_of(const std::function<void ()> & f) -> std::optional<ErrorKind>
    {
        try {
            f();
        }
        catch (const MinHomError & e) {
            return e.kind();
        }
        return std::nullopt;
    }

    auto nine_vertex_target() -> Digraph
    {
        Digraph h(9);
        for (auto [a, b] : std::vector<Arc>{ { 0, 3 }, { 0, 4 }, { 1, 3 }, { 2, 5 }, { 3, 6 }, { 4, 7 }, { 5, 8 },
                { 6, 0 }, { 7, 1 }, { 8, 2 } })
            h.add_arc(a, b);
        return h;
    }

    // A bi-arc graph: the path 0 - 1 - 2 - 3 with a loop on 1.
    auto looped_path() -> Digraph
    {
        Digraph h(4);
        h.add_edge(0, 1);
        h.add_edge(1, 2);
        h.add_edge(2, 3);
        h.add_edge(1, 1);
        return h;
    }

    const std::vector<Mode> all_modes{ Mode::Lp, Mode::Ilp, Mode::Exact, Mode::Approx, Mode::Derand };
}

TEST_CASE("variant and mode names")
{
    for (auto v : { Variant::MinOrder, Variant::Kmin, Variant::BiarcGraph })
        CHECK(parse_variant(variant_name(v)) == v);
    for (auto m : all_modes)
        CHECK(parse_mode(mode_name(m)) == m);
    CHECK(variant_name(Variant::BiarcGraph) == "biarc-graph");
    CHECK(kind_of([] { parse_variant("maxorder"); }) == ErrorKind::BadArgument);
    CHECK(kind_of([] { parse_mode("fast"); }) == ErrorKind::BadArgument);
}

TEST_CASE("seeded draws are reproducible and inside (0, 1]")
{
    CHECK(seeded_draws(7) == seeded_draws(7));
    CHECK(seeded_draws(7) != seeded_draws(8));
    for (std::uint64_t s = 0 ; s < 1000 ; ++s) {
        auto [x, y] = seeded_draws(s);
        CHECK(x > 0);
        CHECK(x <= 1);
        CHECK(y > 0);
        CHECK(y <= 1);
    }
}

TEST_CASE("source levels follow the arcs")
{
    Digraph path(4);
    path.add_arc(0, 1);
    path.add_arc(2, 1);
    path.add_arc(2, 3);
    CHECK(source_levels(path, 3) == std::vector<int>{ 0, 1, 0, 1 });
    CHECK(source_levels(directed_cycle(6), 3) == std::vector<int>{ 0, 1, 2, 0, 1, 2 });
    CHECK(kind_of([] { source_levels(directed_cycle(4), 3); }) == ErrorKind::NotCyclic);
    CHECK(source_levels(Digraph(2), 3) == std::vector<int>{ 0, 0 });
}

TEST_CASE("property: every mode of the min-ordering variant agrees with the oracle")
{
    std::mt19937_64 rng(61);
    int done = 0;
    for (int round = 0 ; round < 200 && done < 40 ; ++round) {
        auto found = test::random_min_ordered(2 + int(rng() % 4), 0.4, rng);
        if (! found)
            continue;
        Instance inst(test::random_digraph(2 + int(rng() % 4), 0.35, rng), found->first);
        test::random_costs(inst, rng, 9, 0.1);
        auto opt = test::oracle_min_cost(inst);
        int p = inst.target().size();
        ++done;
        for (auto mode : all_modes) {
            RunOptions opts;
            opts.mode = mode;
            opts.lp_mode = SolveMode::Exact;
            opts.seed = rng();
            auto r = run_variant(inst, Variant::MinOrder, opts);
            REQUIRE(r.feasible == bool(opt));
            if (! opt)
                continue;
            if (mode == Mode::Lp) {
                CHECK(! r.hom);
                REQUIRE(r.exact_lp_value);
                CHECK(*r.exact_lp_value <= *opt);
                continue;
            }
            REQUIRE(r.hom);
            CHECK(is_valid_hom(inst.source(), inst.target(), r.hom->map));
            CHECK(r.hom->cost == test::cost_of(inst, r.hom->map));
            if (mode == Mode::Ilp || mode == Mode::Exact)
                CHECK(r.hom->cost == *opt);
            else {
                CHECK(r.hom->cost >= *opt);
                if (mode == Mode::Derand)
                    CHECK(r.hom->cost <= Rational(p * p) * *r.exact_lp_value);
            }
        }
    }
    CHECK(done >= 30);
}

TEST_CASE("min-ordering variant rejects targets without one")
{
    Instance inst(Digraph(1), directed_cycle(3));
    CHECK(kind_of([&] { run_variant(inst, Variant::MinOrder, RunOptions{}); }) == ErrorKind::NotMinOrdering);

    RunOptions bad;
    bad.ordering = Ordering::from_permutation({ 3, 1, 0, 2 });
    Instance small(Digraph(1), test::small_target());
    CHECK(kind_of([&] { run_variant(small, Variant::MinOrder, bad); }) == ErrorKind::NotMinOrdering);
    bad.ordering = Ordering::identity(4);
    CHECK(run_variant(small, Variant::MinOrder, bad).feasible);
}

TEST_CASE("k-min variant on the nine vertex target")
{
    auto h = nine_vertex_target();
    std::mt19937_64 rng(62);
    int done = 0;
    for (int round = 0 ; round < 200 && done < 25 ; ++round) {
        auto d = test::random_digraph(2 + int(rng() % 4), 0.35, rng);
        try {
            source_levels(d, 3);
        }
        catch (const MinHomError &) {
            continue;
        }
        Instance inst(d, h);
        test::random_costs(inst, rng, 9, 0.1);
        auto opt = test::oracle_min_cost(inst);
        ++done;
        for (auto mode : all_modes) {
            RunOptions opts;
            opts.mode = mode;
            opts.lp_mode = SolveMode::Exact;
            opts.seed = rng();
            auto r = run_variant(inst, Variant::Kmin, opts);
            REQUIRE(r.feasible == bool(opt));
            if (! opt)
                continue;
            REQUIRE(r.exact_lp_value.has_value() == (mode != Mode::Exact));
            if (mode != Mode::Exact) {
                CHECK(r.diagnostics.at("k") == "3");
                CHECK(*r.exact_lp_value <= *opt);
            }
            if (mode == Mode::Lp)
                continue;
            REQUIRE(r.hom);
            CHECK(is_valid_hom(d, h, r.hom->map));
            if (mode == Mode::Ilp || mode == Mode::Exact)
                CHECK(r.hom->cost == *opt);
            if (mode == Mode::Derand)
                CHECK(r.hom->cost <= Rational(81) * *r.exact_lp_value);
        }
    }
    CHECK(done >= 15);
}

TEST_CASE("k-min variant edge cases")
{
    Instance single(Digraph(1), nine_vertex_target());
    single.set_cost(0, 4, Cost(0));
    for (int a = 0 ; a < 9 ; ++a)
        if (a != 4)
            single.set_cost(0, a, Cost(long(1 + a)));
    auto r = run_variant(single, Variant::Kmin, RunOptions{});
    REQUIRE(r.hom);
    CHECK(r.hom->map == std::vector<int>{ 4 });
    CHECK(r.hom->cost == 0);

    Instance four(directed_cycle(4), nine_vertex_target());
    CHECK(kind_of([&] { run_variant(four, Variant::Kmin, RunOptions{}); }) == ErrorKind::NotCyclic);

    RunOptions no_levels;
    no_levels.ordering = Ordering::identity(9);
    CHECK(kind_of([&] { run_variant(single, Variant::Kmin, no_levels); }) == ErrorKind::BadOrder);

    Instance cyc(directed_cycle(6), directed_cycle(3));
    RunOptions opts;
    opts.mode = Mode::Derand;
    auto c = run_variant(cyc, Variant::Kmin, opts);
    REQUIRE(c.hom);
    CHECK(is_valid_hom(cyc.source(), cyc.target(), c.hom->map));
}

TEST_CASE("bi-arc variant")
{
    auto h = looped_path();
    REQUIRE(h.is_symmetric());
    std::mt19937_64 rng(63);
    int done = 0;
    for (int round = 0 ; round < 60 ; ++round) {
        auto g = test::random_graph(2 + int(rng() % 4), 0.4, rng);
        Instance inst(g, h);
        test::random_costs(inst, rng, 9, 0.1);
        auto opt = test::oracle_min_cost(inst);
        for (auto mode : { Mode::Lp, Mode::Ilp, Mode::Derand, Mode::Approx }) {
            RunOptions opts;
            opts.mode = mode;
            opts.lp_mode = SolveMode::Exact;
            opts.seed = rng();
            auto r = run_variant(inst, Variant::BiarcGraph, opts);
            REQUIRE(r.feasible == bool(opt));
            if (! opt)
                continue;
            ++done;
            CHECK(*r.exact_lp_value <= *opt);
            if (mode == Mode::Lp)
                continue;
            REQUIRE(r.hom);
            CHECK(is_valid_hom(g, h, r.hom->map));
            CHECK(r.hom->cost >= *opt);
            if (mode == Mode::Derand)
                CHECK(r.hom->cost <= Rational(8) * *r.exact_lp_value);
        }
    }
    CHECK(done > 100);

    Digraph arc(2);
    arc.add_arc(0, 1);
    Instance directed(arc, h);
    CHECK(kind_of([&] { run_variant(directed, Variant::BiarcGraph, RunOptions{}); }) == ErrorKind::BadArgument);
}

TEST_CASE("a shared LP cache gives the same results as fresh solves")
{
    std::mt19937_64 rng(64);
    int done = 0;
    for (int round = 0 ; round < 100 && done < 15 ; ++round) {
        auto found = test::random_min_ordered(3 + int(rng() % 3), 0.4, rng);
        if (! found)
            continue;
        Instance inst(test::random_digraph(3 + int(rng() % 4), 0.35, rng), found->first);
        test::random_costs(inst, rng, 9, 0.0);
        ++done;

        RunOptions shared;
        shared.lp_cache = std::make_shared<LpCache>();
        shared.lp_mode = SolveMode::Exact;
        shared.mode = Mode::Lp;
        auto first = run_variant(inst, Variant::MinOrder, shared);
        for (auto mode : { Mode::Lp, Mode::Derand }) {
            RunOptions fresh;
            fresh.mode = shared.mode = mode;
            fresh.lp_mode = shared.lp_mode = SolveMode::Exact;
            auto a = run_variant(inst, Variant::MinOrder, shared);
            auto b = run_variant(inst, Variant::MinOrder, fresh);
            REQUIRE(a.feasible == b.feasible);
            CHECK(a.exact_lp_value == b.exact_lp_value);
            CHECK(a.exact_lp_value == first.exact_lp_value);
            if (mode == Mode::Derand && a.feasible) {
                REQUIRE(a.hom);
                CHECK(a.hom->cost == b.hom->cost);
            }
        }
    }
    CHECK(done >= 10);

    auto found = test::random_min_ordered(4, 0.4, rng);
    REQUIRE(found);
    Instance inst(test::random_digraph(4, 0.4, rng), found->first);
    auto state = consistent_lists(inst);
    REQUIRE(state);
    auto ord = resolve_min_ordering(inst.target(), std::nullopt);
    auto model = build_extended_system(inst, build_completion(inst.target(), ord), *state);
    LpCache cache;
    CHECK(! cache.find(model, SolveMode::Float));
    cache.store(model, solve(model, SolveMode::Float));
    CHECK(cache.find(model, SolveMode::Float));
    CHECK(! cache.find(model, SolveMode::Exact));
    cache.store(model, solve(model, SolveMode::Exact));
    CHECK(cache.find(model, SolveMode::Exact));
}
