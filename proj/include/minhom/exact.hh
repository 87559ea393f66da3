/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_INCLUDE_MINHOM_EXACT_HH
#define MINHOM_GUARD_INCLUDE_MINHOM_EXACT_HH 1

#include <minhom/instance.hh>
#include <minhom/lp_model.hh>
#include <minhom/orderings.hh>

#include <optional>
#include <vector>

namespace minhom
{
    constexpr long default_brute_force_budget = 10000000;
    constexpr int default_enumeration_cap = 24;

    // Minimum-cost homomorphism by backtracking. Throws SizeLimit when the
    // product of the arc-consistent list sizes exceeds the budget.
    auto brute_force_min(const Instance &, long budget = default_brute_force_budget) -> std::optional<Homomorphism>;

    // Every homomorphism of finite cost, in lexicographic order.
    auto all_homomorphisms(const Instance &, long budget = default_brute_force_budget) -> std::vector<std::vector<int> >;

    struct IntegerPoint
    {
        std::vector<int> values;
        std::vector<int> map;
        Rational objective;
    };

    // Every 0/1 point of the model; throws SizeLimit when the domains hold
    // more than cap entries in total.
    auto enumerate_integer_solutions(const LpModel &, int cap = default_enumeration_cap) -> std::vector<IntegerPoint>;

    // Each vertex goes to the first member of its list (within its level,
    // when levels are given).
    auto greedy_list_hom(const Digraph & source, const Digraph & target, const Ordering &,
            const std::vector<VertexMask> & lists, const std::vector<int> * vertex_levels = nullptr) -> std::vector<int>;
}

#endif
