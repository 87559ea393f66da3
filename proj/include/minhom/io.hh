/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_INCLUDE_MINHOM_IO_HH
#define MINHOM_GUARD_INCLUDE_MINHOM_IO_HH 1

#include <minhom/instance.hh>
#include <minhom/orderings.hh>
#include <minhom/variants.hh>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace minhom
{
    struct ParsedInstance
    {
        Instance instance;
        std::optional<Ordering> ordering;
        bool symmetric = false;
    };

    /**
     * Line format, '#' starts a comment:
     *
     *   h <p>, ha <i> <j>, order <i0> ..., levels <l0> ..., d <n>, da <x> <y>,
     *   c <x> <i> <value|inf>, sym
     *
     * A supplied ordering is verified here: with levels it must be a k-min
     * ordering, otherwise a min ordering.
     */
    auto parse_instance(std::istream &) -> ParsedInstance;
    auto parse_instance_file(const std::string & path) -> ParsedInstance;

    // Reads h, ha, order, levels and sym lines; source lines are skipped.
    auto parse_target(std::istream &) -> ParsedInstance;
    auto parse_target_file(const std::string & path) -> ParsedInstance;

    auto write_instance(std::ostream &, const Instance &, const std::optional<Ordering> & = std::nullopt,
            bool symmetric = false) -> void;

    struct GeneratorConfig
    {
        Variant variant = Variant::MinOrder;
        int size = 20;
        std::optional<double> density;      // default 2 ln n / n
        long cost_low = 5, cost_high = 100000;
        bool bipartite = false;             // arcs only from the first half to the second
    };

    auto default_density(int n) -> double;

    // D is built around a planted homomorphism to H, so instances are
    // always feasible; for biarc-graph D is symmetric.
    auto generate_instance(const Digraph & target, const GeneratorConfig &, std::uint64_t seed) -> Instance;
}

#endif
