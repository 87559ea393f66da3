/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "helpers.hh"

#include <minhom/consistency.hh>

#include <doctest.h>

using namespace minhom;

TEST_CASE("arc consistency on a single arc")
{
    Digraph d(2);
    d.add_arc(0, 1);
    auto h = test::small_target();
    auto lists = arc_consistency(d, h, { all_bits(4), all_bits(4) });
    REQUIRE(lists);
    CHECK((*lists)[0] == (bit(0) | bit(1)));
    CHECK((*lists)[1] == (bit(2) | bit(3)));
    CHECK(is_arc_consistent(d, h, *lists));
}

TEST_CASE("arc consistency trivial cases")
{
    Digraph none(3);
    auto h = test::small_target();
    std::vector<VertexMask> lists{ bit(0), bit(1) | bit(3), all_bits(4) };
    CHECK(arc_consistency(none, h, lists) == lists);

    Digraph d(2);
    d.add_arc(0, 1);
    CHECK(! arc_consistency(d, Digraph(3), { all_bits(3), all_bits(3) }));
}

TEST_CASE("self loops in the source need loops in the target")
{
    Digraph d(1);
    d.add_arc(0, 0);
    Digraph h(3);
    h.add_arc(0, 1);
    h.add_arc(2, 2);
    auto lists = arc_consistency(d, h, { all_bits(3) });
    REQUIRE(lists);
    CHECK((*lists)[0] == bit(2));
}

TEST_CASE("pair consistency on a single arc")
{
    Digraph d(2), h(2);
    d.add_arc(0, 1);
    h.add_arc(0, 1);
    auto state = pair_consistency(d, h, { all_bits(2), all_bits(2) });
    REQUIRE(state);
    CHECK(state->pairs.row(0, 1, 0) == bit(1));
    CHECK(state->pairs.row(0, 1, 1) == 0);
    CHECK(state->pairs.row(1, 0, 1) == bit(0));
    CHECK(state->lists[0] == bit(0));
    CHECK(state->lists[1] == bit(1));
}

TEST_CASE("directed triangle into a target without closed 3-walks")
{
    auto d = directed_cycle(3);
    // 0 -> 1 -> 2 -> 3 -> 0: arc consistent for the triangle, no 3-cycle.
    auto h = directed_cycle(4);
    std::vector<VertexMask> full(3, all_bits(4));
    REQUIRE(arc_consistency(d, h, full));
    CHECK(! pair_consistency(d, h, full));
}

TEST_CASE("property: consistency is sound and idempotent")
{
    std::mt19937_64 rng(21);
    int empties = 0;
    for (int round = 0 ; round < 150 ; ++round) {
        auto d = test::random_digraph(5, 0.3, rng);
        auto h = test::random_digraph(4, 0.4, rng, true);
        Instance inst(d, h);
        test::random_costs(inst, rng, 5, 0.2);
        auto homs = test::all_homs(inst);
        auto state = consistent_lists(inst);
        if (! state) {
            ++empties;
            CHECK(homs.empty());
            continue;
        }
        for (auto & f : homs)
            for (int x = 0 ; x < 5 ; ++x) {
                CHECK(has_bit(state->lists[x], f[x]));
                for (int y = 0 ; y < 5 ; ++y)
                    if (x != y)
                        CHECK(state->pairs.contains(x, y, f[x], f[y]));
            }
        for (int x = 0 ; x < 5 ; ++x)
            CHECK((state->lists[x] & ~inst.list(x)) == 0);

        auto again = pair_consistency(d, h, state->lists);
        REQUIRE(again);
        CHECK(again->lists == state->lists);
    }
    CHECK(empties > 0);
}

TEST_CASE("property: relabelling the source permutes the lists")
{
    std::mt19937_64 rng(22);
    for (int round = 0 ; round < 60 ; ++round) {
        auto d = test::random_digraph(5, 0.35, rng);
        auto h = test::random_digraph(4, 0.45, rng, true);
        std::vector<int> relabel{ 0, 1, 2, 3, 4 };
        std::shuffle(relabel.begin(), relabel.end(), rng);
        Digraph e(5);
        for (auto & [x, y] : d.arcs())
            e.add_arc(relabel[x], relabel[y]);
        std::vector<VertexMask> full(5, all_bits(4));
        auto a = pair_consistency(d, h, full);
        auto b = pair_consistency(e, h, full);
        REQUIRE(bool(a) == bool(b));
        if (! a)
            continue;
        for (int x = 0 ; x < 5 ; ++x) {
            CHECK(a->lists[x] == b->lists[relabel[x]]);
            for (int y = 0 ; y < 5 ; ++y)
                for (int c = 0 ; c < 4 ; ++c)
                    if (x != y)
                        CHECK(a->pairs.row(x, y, c) == b->pairs.row(relabel[x], relabel[y], c));
        }
    }
}
