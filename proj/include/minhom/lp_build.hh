/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_INCLUDE_MINHOM_LP_BUILD_HH
#define MINHOM_GUARD_INCLUDE_MINHOM_LP_BUILD_HH 1

#include <minhom/consistency.hh>
#include <minhom/instance.hh>
#include <minhom/lp_model.hh>
#include <minhom/orderings.hh>

#include <array>
#include <string>
#include <vector>

namespace minhom
{
    // Which pairs of source vertices get pair constraints.
    enum class PairScope
    {
        None,
        Close,      // joined by a path of length at most two
        All
    };

    using FamilyNames = std::array<std::string, 12>;

    auto family_names(const std::string & prefix) -> FamilyNames;

    struct ThresholdSpec
    {
        const Digraph * source = nullptr;
        std::vector<std::vector<int> > domains;
        std::vector<VertexMask> lists;
        std::vector<std::vector<Rational> > costs;     // aligned with domains
        std::vector<VertexMask> out_arcs, in_arcs;      // arcs used by the adjacency rows
        const Completion * completion = nullptr;        // enables the added-arc rows
        const PairLists * pairs = nullptr;              // enables the pair rows
        std::vector<Arc> pair_scope;
        FamilyNames family = family_names("C");
    };

    auto build_threshold_system(const ThresholdSpec &) -> LpModel;

    auto ordered_domains(int vertices, const Ordering &) -> std::vector<std::vector<int> >;
    auto pair_scope(const Digraph &, PairScope) -> std::vector<Arc>;

    // Rows C1 to C7 over the arcs of the target itself.
    auto build_base_system(const Instance &, const Ordering &, const std::vector<VertexMask> & lists) -> LpModel;

    // Rows C1 to C12 over the completed target.
    auto build_extended_system(const Instance &, const Completion &, const ListState &,
            PairScope = PairScope::Close) -> LpModel;

    // Rows A1 to A12 for a source whose vertices carry levels; the lists in
    // the state must already be restricted to the matching target level.
    auto build_kmin_system(const Instance &, const Completion &, const std::vector<int> & vertex_levels,
            const ListState &, PairScope = PairScope::Close) -> LpModel;

    struct Doubling
    {
        Digraph source;             // G*: u and u' = n + u
        Digraph target;             // H*: a_x = x and b_x = p + x
        Ordering ordering;
        Completion completion;
        std::vector<int> pi;        // position of b_x in I' for the x at each position of I
        std::vector<VertexMask> lists;
        LpModel model;
    };

    // Requires H* to admit a min ordering; throws NotBiarc otherwise.
    auto star_ordering(const Digraph & target) -> Ordering;

    auto build_doubling(const Instance &, const ListState &) -> Doubling;
    auto build_cd_system(const Instance &, const ListState &, PairScope = PairScope::Close) -> Doubling;
}

#endif
