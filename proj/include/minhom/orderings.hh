/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_INCLUDE_MINHOM_ORDERINGS_HH
#define MINHOM_GUARD_INCLUDE_MINHOM_ORDERINGS_HH 1

#include <minhom/digraph.hh>

#include <array>
#include <optional>
#include <vector>

namespace minhom
{
    enum class OrderingKind
    {
        Min,
        Max,
        MinMax,
        KMin,
        KMinMax
    };

    // A linear order of the target's vertices, optionally with levels
    // (a homomorphism to the directed k-cycle).
    struct Ordering
    {
        std::vector<int> perm;      // perm[position] = vertex
        std::vector<int> rank;      // rank[vertex] = position
        std::vector<int> levels;    // empty unless k > 0
        int k = 0;

        static auto from_permutation(std::vector<int> perm) -> Ordering;
        static auto identity(int size) -> Ordering;

        auto with_levels(std::vector<int> levels, int k) const -> Ordering;
        auto size() const -> int;
        auto has_levels() const -> bool;
        auto before(int a, int b) const -> bool;
    };

    constexpr int default_ordering_bound = 12;
    constexpr int default_dat_bound = 8;

    auto verify_ordering(const Digraph &, const Ordering &, OrderingKind) -> bool;
    auto verify_min_ordering(const Digraph &, const Ordering &) -> bool;
    auto verify_kmin_ordering(const Digraph &, const Ordering &) -> bool;

    // Levels form a homomorphism to the directed k-cycle.
    auto valid_levels(const Digraph &, const std::vector<int> & levels, int k) -> bool;

    // Lexicographically smallest ordering of the requested kind, if any.
    // Throws SizeLimit above the bound.
    auto find_ordering(const Digraph &, OrderingKind, int k = 0, int bound = default_ordering_bound)
        -> std::optional<Ordering>;

    // E' and everything the LP builders and the repair procedure need to know
    // about the ordered target.
    struct Completion
    {
        Digraph base{ 0 };
        Digraph completed{ 0 };
        std::vector<Arc> added;
        Ordering ordering;
        std::vector<VertexMask> out_base, in_base, out_all, in_all, out_added;
        std::vector<VertexMask> later;    // vertices strictly after a

        auto in_added(int a, int b) const -> bool;
    };

    auto build_completion(const Digraph &, const Ordering &) -> Completion;

    struct KminPolymorphisms
    {
        int size = 0;
        std::vector<int> binary;        // f, size^2
        std::vector<int> ternary;       // g, size^3

        auto f(int x, int y) const -> int;
        auto g(int x, int y, int z) const -> int;
    };

    auto build_kmin_polymorphisms(const Digraph &, const Ordering &) -> KminPolymorphisms;

    auto is_binary_polymorphism(const Digraph &, const std::vector<int> & table) -> bool;
    auto is_ternary_polymorphism(const Digraph &, const std::vector<int> & table) -> bool;

    // Pairs (x, y), x != y, with (x, y) and (y, x) strongly connected in the
    // pair digraph. Both orientations are reported.
    auto invertible_pairs(const Digraph &, int bound = default_ordering_bound) -> std::vector<Arc>;

    using Triple = std::array<int, 3>;

    struct DatWitness
    {
        int a, b, c;
        int alpha, beta;
        std::array<std::vector<Triple>, 3> paths;
    };

    auto detect_dat(const Digraph &, int bound = default_dat_bound) -> std::optional<DatWitness>;

    // H* : a_x = x, b_x = p + x, with a_x -> b_y iff x -> y in H.
    auto star_digraph(const Digraph &) -> Digraph;
}

#endif
