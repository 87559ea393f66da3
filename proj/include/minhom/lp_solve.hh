/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_INCLUDE_MINHOM_LP_SOLVE_HH
#define MINHOM_GUARD_INCLUDE_MINHOM_LP_SOLVE_HH 1

#include <minhom/lp_model.hh>

#include <optional>
#include <vector>

namespace minhom
{
    enum class SolveMode
    {
        Float,
        Exact
    };

    enum class LpStatus
    {
        Optimal,
        Infeasible
    };

    constexpr double feasibility_tolerance = 1e-9;
    constexpr double objective_tolerance = 1e-7;

    struct FracSolution
    {
        LpStatus status = LpStatus::Optimal;
        std::vector<double> values;                     // one per model variable
        double objective = 0.0;
        std::optional<std::vector<Rational> > exact_values;
        std::optional<Rational> exact_objective;
        bool certified = false;                         // exact answer came from a float basis
        long iterations = 0;
        double repaired = 0.0;                          // largest monotonicity repair applied
    };

    auto solve(const LpModel &, SolveMode = SolveMode::Float) -> FracSolution;

    struct IntegerOptions
    {
        SolveMode mode = SolveMode::Float;
        long node_limit = 200000;
    };

    struct IntegerSolution
    {
        LpStatus status = LpStatus::Infeasible;
        std::vector<int> values;
        std::vector<int> map;           // decoded image of each model vertex
        Rational objective;
        long nodes = 0;
    };

    auto solve_integer(const LpModel &, const IntegerOptions & = IntegerOptions{}) -> IntegerSolution;

    // Largest violation of any row by the given values.
    auto max_violation(const LpModel &, const std::vector<double> & values) -> double;
}

#endif
