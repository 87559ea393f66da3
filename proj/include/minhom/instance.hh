/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_INCLUDE_MINHOM_INSTANCE_HH
#define MINHOM_GUARD_INCLUDE_MINHOM_INSTANCE_HH 1

#include <minhom/digraph.hh>
#include <minhom/types.hh>

#include <span>
#include <variant>
#include <vector>

namespace minhom
{
    class CostTable
    {
        private:
            int _rows = 0, _columns = 0;
            std::vector<Cost> _data;

        public:
            CostTable() = default;
            CostTable(int rows, int columns);

            auto rows() const -> int;
            auto columns() const -> int;
            auto at(int x, int a) const -> const Cost &;
            auto set(int x, int a, const Cost &) -> void;
    };

    // A MinHOM instance: source D, target H, and costs c(x, a). The list of x
    // is exactly the set of a with finite cost.
    class Instance
    {
        private:
            Digraph _source, _target;
            CostTable _costs;
            std::vector<VertexMask> _lists;

        public:
            Instance(Digraph source, Digraph target);
            Instance(Digraph source, Digraph target, CostTable costs);

            auto source() const -> const Digraph &;
            auto target() const -> const Digraph &;
            auto costs() const -> const CostTable &;
            auto cost(int x, int a) const -> const Cost &;
            auto set_cost(int x, int a, const Cost &) -> void;
            auto lists() const -> const std::vector<VertexMask> &;
            auto list(int x) const -> VertexMask;
    };

    struct Homomorphism
    {
        std::vector<int> map;
        Rational cost;
    };

    struct Violation
    {
        enum class Kind { WrongSize, OutOfRange, MissingArc, InfiniteCost };
        Kind kind;
        int x = -1, y = -1;
    };

    using HomCheck = std::variant<Homomorphism, Violation>;

    auto validate_hom(const Instance &, std::span<const int> map) -> HomCheck;

    // Cost of an arbitrary map, +infinity if some image is outside its list.
    auto eval_cost(const Instance &, std::span<const int> map) -> Cost;

    auto is_valid_hom(const Digraph & source, const Digraph & target, std::span<const int> map) -> bool;

    auto describe(const Violation &) -> std::string;
}

#endif
