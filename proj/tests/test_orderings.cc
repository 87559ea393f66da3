/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "helpers.hh"

#include <minhom/orderings.hh>

#include <doctest.h>

using namespace minhom;

namespace
{
    auto identity(int p) -> Ordering
    {
        return Ordering::identity(p);
    }

    // The digraph of the k-min example: levels {0,1,2}, {3,4,5}, {6,7,8}.
    auto nine_vertex_target() -> Digraph
    {
        Digraph h(9);
        for (auto [a, b] : std::vector<Arc>{ { 0, 3 }, { 0, 4 }, { 1, 3 }, { 2, 5 }, { 3, 6 }, { 4, 7 }, { 5, 8 },
                { 6, 0 }, { 7, 1 }, { 8, 2 } })
            h.add_arc(a, b);
        return h;
    }

    auto nine_vertex_ordering() -> Ordering
    {
        return identity(9).with_levels({ 0, 0, 0, 1, 1, 1, 2, 2, 2 }, 3);
    }

    auto naive_polymorphism2(const Digraph & h, const std::vector<int> & f) -> bool
    {
        int p = h.size();
        for (auto & [a, b] : h.arcs())
            for (auto & [c, d] : h.arcs())
                if (! test::arc_in(h, f[a * p + c], f[b * p + d]))
                    return false;
        return true;
    }

    auto naive_polymorphism3(const Digraph & h, const std::vector<int> & g) -> bool
    {
        int p = h.size();
        for (auto & [a, b] : h.arcs())
            for (auto & [c, d] : h.arcs())
                for (auto & [e, f] : h.arcs())
                    if (! test::arc_in(h, g[(a * p + c) * p + e], g[(b * p + d) * p + f]))
                        return false;
        return true;
    }
}

TEST_CASE("verify min orderings on the small examples")
{
    Digraph one(2);
    one.add_arc(0, 1);
    CHECK(verify_min_ordering(one, identity(2)));
    CHECK(verify_min_ordering(one, Ordering::from_permutation({ 1, 0 })));

    Digraph crossing(4);
    crossing.add_arc(0, 3);
    crossing.add_arc(1, 2);
    CHECK(! verify_min_ordering(crossing, identity(4)));

    CHECK(verify_min_ordering(test::small_target(), identity(4)));
    CHECK_THROWS_AS(Ordering::from_permutation({ 0, 0, 1 }), MinHomError);
}

TEST_CASE("ordering search on cycles")
{
    auto c3 = directed_cycle(3);
    CHECK(! find_ordering(c3, OrderingKind::Min));
    auto k3 = find_ordering(c3, OrderingKind::KMin, 3);
    REQUIRE(k3);
    CHECK(k3->perm == std::vector<int>{ 0, 1, 2 });
    CHECK(k3->levels == std::vector<int>{ 0, 1, 2 });
    CHECK(k3->k == 3);

    auto small = find_ordering(test::small_target(), OrderingKind::Min);
    REQUIRE(small);
    CHECK(test::oracle_min_ordering(test::small_target(), small->perm));

    CHECK_THROWS_AS(find_ordering(Digraph(13), OrderingKind::Min), MinHomError);
}

TEST_CASE("property: ordering search agrees with exhaustive permutations")
{
    std::mt19937_64 rng(31);
    int found_min = 0, found_minmax = 0, none = 0;
    for (int round = 0 ; round < 250 ; ++round) {
        int p = 2 + int(rng() % 5);
        auto h = test::random_digraph(p, 0.35, rng, true);

        auto oracle = test::oracle_first_ordering(h, false);
        auto got = find_ordering(h, OrderingKind::Min);
        REQUIRE(bool(oracle) == bool(got));
        if (got) {
            ++found_min;
            CHECK(test::oracle_min_ordering(h, got->perm));
            bool split = true;
            for (int v = 0 ; v < p ; ++v)
                if (! h.out_neighbours(v).empty() && ! h.in_neighbours(v).empty())
                    split = false;
            if (! split)
                CHECK(got->perm == *oracle);
        }
        else
            ++none;

        auto oracle_mm = test::oracle_first_ordering(h, true);
        auto got_mm = find_ordering(h, OrderingKind::MinMax);
        REQUIRE(bool(oracle_mm) == bool(got_mm));
        if (got_mm) {
            ++found_minmax;
            CHECK(got_mm->perm == *oracle_mm);
        }
    }
    CHECK(found_min > 20);
    CHECK(found_minmax > 10);
    CHECK(none > 20);
}

TEST_CASE("completion of the small target")
{
    auto comp = build_completion(test::small_target(), identity(4));
    CHECK(comp.added == std::vector<Arc>{ { 1, 3 } });
    CHECK(comp.in_added(1, 3));
    CHECK(comp.completed.has_arc(1, 3));

    Digraph path(3);
    path.add_arc(0, 1);
    path.add_arc(1, 2);
    CHECK(build_completion(path, identity(3)).added.empty());

    Digraph crossing(4);
    crossing.add_arc(0, 3);
    crossing.add_arc(1, 2);
    CHECK_THROWS_AS(build_completion(crossing, identity(4)), MinHomError);
}

TEST_CASE("property: completed arcs keep the neighbour conditions")
{
    std::mt19937_64 rng(32);
    int nonempty = 0;
    for (int round = 0 ; round < 200 ; ++round) {
        auto found = test::random_min_ordered(2 + int(rng() % 5), 0.4, rng);
        if (! found)
            continue;
        auto & [h, perm] = *found;
        auto ord = Ordering::from_permutation(perm);
        auto comp = build_completion(h, ord);
        nonempty += ! comp.added.empty();

        CHECK(test::oracle_min_ordering(comp.completed, perm));
        CHECK(test::oracle_max_ordering(comp.completed, perm));
        for (auto & [a, b] : comp.added) {
            CHECK(! h.has_arc(a, b));
            bool tail_free = true, head_free = true;
            for (int c : h.out_neighbours(a))
                if (ord.rank[c] > ord.rank[b])
                    tail_free = false;
            for (int c : h.in_neighbours(b))
                if (ord.rank[c] > ord.rank[a])
                    head_free = false;
            CHECK((tail_free || head_free));
        }
        // E' is exactly the missing arcs ab with a later arc ab' where b' < b
        // and an arc a'b with a' < a.
        for (int a = 0 ; a < h.size() ; ++a)
            for (int b = 0 ; b < h.size() ; ++b) {
                if (h.has_arc(a, b))
                    continue;
                bool left = false, below = false;
                for (int c : h.out_neighbours(a))
                    if (ord.rank[c] < ord.rank[b])
                        below = true;
                for (int c : h.in_neighbours(b))
                    if (ord.rank[c] < ord.rank[a])
                        left = true;
                CHECK(comp.completed.has_arc(a, b) == (left && below));
            }
    }
    CHECK(nonempty > 5);
}

TEST_CASE("k-min ordering of the nine vertex example")
{
    auto h = nine_vertex_target();
    auto ord = nine_vertex_ordering();
    CHECK(verify_kmin_ordering(h, ord));
    CHECK(valid_levels(h, ord.levels, 3));
    auto comp = build_completion(h, ord);
    CHECK(comp.added == std::vector<Arc>{ { 1, 4 } });
}

TEST_CASE("k-min polymorphisms")
{
    auto h = nine_vertex_target();
    auto ord = nine_vertex_ordering();
    auto poly = build_kmin_polymorphisms(h, ord);
    CHECK(poly.f(0, 2) == 0);
    CHECK(poly.f(2, 0) == 0);
    for (int x = 0 ; x < 9 ; ++x)
        CHECK(poly.f(x, x) == x);
    for (int x = 0 ; x < 9 ; ++x)
        for (int y = 0 ; y < 9 ; ++y)
            if (ord.levels[x] != ord.levels[y]) {
                CHECK(poly.g(x, x, y) == x);
                CHECK(poly.g(x, y, x) == x);
                CHECK(poly.g(y, x, x) == x);
            }
    CHECK(naive_polymorphism2(h, poly.binary));
    CHECK(naive_polymorphism3(h, poly.ternary));
    CHECK(is_binary_polymorphism(h, poly.binary));
    CHECK(is_ternary_polymorphism(h, poly.ternary));

    auto c3 = directed_cycle(3);
    CHECK_THROWS_AS(build_kmin_polymorphisms(c3, identity(3)), MinHomError);
}

TEST_CASE("invertible pairs")
{
    Digraph one(2);
    one.add_arc(0, 1);
    CHECK(invertible_pairs(one).empty());
    CHECK(invertible_pairs(directed_cycle(3)).empty());

    std::mt19937_64 rng(33);
    int with_pairs = 0;
    for (int round = 0 ; round < 100 ; ++round) {
        auto h = test::random_digraph(2 + int(rng() % 5), 0.35, rng, true);
        auto inv = invertible_pairs(h);
        with_pairs += ! inv.empty();
        if (find_ordering(h, OrderingKind::Min))
            CHECK(inv.empty());
        for (auto & [a, b] : inv)
            CHECK(std::find(inv.begin(), inv.end(), Arc{ b, a }) != inv.end());
    }
    CHECK(with_pairs > 0);
}

TEST_CASE("DAT detection")
{
    Digraph loop(1);
    loop.add_arc(0, 0);
    CHECK(! detect_dat(loop));
    CHECK(! detect_dat(test::small_target()));
    CHECK(! detect_dat(nine_vertex_target(), 9));

    std::mt19937_64 rng(34);
    for (int round = 0 ; round < 40 ; ++round) {
        auto found = test::random_min_ordered(2 + int(rng() % 4), 0.4, rng);
        if (found)
            CHECK(! detect_dat(found->first));
    }
    CHECK_THROWS_AS(detect_dat(Digraph(9)), MinHomError);
}

TEST_CASE("star digraph doubles the edges")
{
    auto h = test::vertex_cover_target();
    auto star = star_digraph(h);
    CHECK(star.size() == 4);
    CHECK(star.has_arc(0, 3));
    CHECK(star.has_arc(1, 2));
    CHECK(star.has_arc(1, 3));
    CHECK(! star.has_arc(0, 2));
    CHECK(star.arc_count() == 3);
}
