/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_INCLUDE_MINHOM_VARIANTS_HH
#define MINHOM_GUARD_INCLUDE_MINHOM_VARIANTS_HH 1

#include <minhom/approx.hh>
#include <minhom/exact.hh>
#include <minhom/instance.hh>
#include <minhom/lp_build.hh>
#include <minhom/lp_solve.hh>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace minhom
{
    enum class Variant
    {
        MinOrder,
        Kmin,
        BiarcGraph
    };

    enum class Mode
    {
        Lp,
        Ilp,
        Exact,
        Approx,
        Derand
    };

    auto parse_variant(const std::string &) -> Variant;
    auto parse_mode(const std::string &) -> Mode;
    auto variant_name(Variant) -> std::string;
    auto mode_name(Mode) -> std::string;

    // Solved models kept across runs on one instance. Not thread safe.
    class LpCache
    {
        private:
            std::vector<std::pair<LpModel, FracSolution> > _entries;

        public:
            auto find(const LpModel &, SolveMode) const -> const FracSolution *;
            auto store(const LpModel &, const FracSolution &) -> void;
    };

    struct RunOptions
    {
        Mode mode = Mode::Derand;
        std::uint64_t seed = 0;
        PairScope pairs = PairScope::Close;
        SolveMode lp_mode = SolveMode::Float;
        std::optional<Ordering> ordering;
        int k = 0;                              // 0: smallest k that works
        long brute_force_budget = default_brute_force_budget;
        long node_limit = 200000;
        std::shared_ptr<LpCache> lp_cache;
    };

    struct VariantResult
    {
        bool feasible = false;
        std::optional<Homomorphism> hom;
        std::optional<double> lp_value;
        std::optional<Rational> exact_lp_value;
        std::vector<ShiftStep> trace;
        std::map<std::string, std::string> diagnostics;
    };

    auto run_variant(const Instance &, Variant, const RunOptions &) -> VariantResult;

    // X and Y for a seeded randomized run, both in (0, 1].
    auto seeded_draws(std::uint64_t seed) -> std::pair<double, double>;

    auto resolve_min_ordering(const Digraph &, const std::optional<Ordering> &) -> Ordering;
    auto resolve_kmin_ordering(const Digraph &, const std::optional<Ordering> &, int k) -> Ordering;

    // Levels of each source vertex given by walking arcs from the smallest
    // vertex of each weak component; throws NotCyclic if impossible.
    auto source_levels(const Digraph &, int k) -> std::vector<int>;

    // Costs made infinite outside the given target level of each vertex.
    auto level_restricted(const Instance &, const Ordering &, const std::vector<int> & vertex_levels) -> Instance;
}

#endif
