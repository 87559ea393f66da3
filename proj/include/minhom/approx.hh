/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_INCLUDE_MINHOM_APPROX_HH
#define MINHOM_GUARD_INCLUDE_MINHOM_APPROX_HH 1

#include <minhom/consistency.hh>
#include <minhom/lp_model.hh>
#include <minhom/lp_solve.hh>
#include <minhom/orderings.hh>

#include <functional>
#include <optional>
#include <vector>

namespace minhom
{
    constexpr double rounding_tolerance = 1e-9;

    // A fractional point laid out per source vertex, ready for rounding.
    struct RepairProblem
    {
        const Digraph * source = nullptr;
        const Completion * completion = nullptr;
        std::vector<std::vector<int> > domains;
        std::vector<VertexMask> lists;
        std::vector<std::vector<double> > thresholds;   // domain size + 1 entries each
    };

    auto make_repair_problem(const Digraph & source, const Completion &, const LpModel &,
            const std::vector<VertexMask> & lists, const FracSolution &) -> RepairProblem;

    struct ShiftStep
    {
        int vertex, from, to;
    };

    struct RoundingState
    {
        std::vector<int> position;      // domain index of each image
        std::vector<ShiftStep> trace;
        long shifts = 0;
        long deferrals = 0;

        auto image(const RepairProblem &) const -> std::vector<int>;
        auto rounded(int v, int i) const -> int;
    };

    // A draw of Y, or the point just above it when just_above is set.
    struct YDraw
    {
        double value = 1.0;
        bool just_above = false;
    };

    // Least selection breakpoint above the draw seen during a run.
    struct YWindow
    {
        double upper = 1.0;
    };

    auto round_threshold(const RepairProblem &, double x) -> RoundingState;

    // Repairs the arcs at start and everything they disturb, FIFO.
    auto shift(const RepairProblem &, RoundingState &, int start, const YDraw &, YWindow * = nullptr) -> void;

    // Rounding at X followed by repair of every arc sent into E'.
    auto repair_rounding(const RepairProblem &, double x, const YDraw &, YWindow * = nullptr) -> RoundingState;

    auto x_candidates(const RepairProblem &) -> std::vector<double>;

    struct Derandomized
    {
        std::vector<int> image;         // best stage-one image
        std::vector<int> map;           // what the evaluator turned it into
        Rational cost;
        double x = 0, y = 0;
        long runs = 0;
    };

    // The evaluator maps a repaired image to a final map and its cost.
    using ImageEvaluator = std::function<std::pair<std::vector<int>, Rational> (const std::vector<int> &)>;

    auto derandomize(const RepairProblem &, const ImageEvaluator &) -> Derandomized;

    struct Stage2Result
    {
        std::vector<int> map;
        bool fallback = false;
        long unstable = 0;
    };

    // Folds an image on G* (a side 0 .. n-1, b side n .. 2n-1) back to G.
    auto fold_biarc_image(const Digraph & g, const Digraph & h, const ListState &, const Ordering & star,
            const std::vector<int> & image) -> Stage2Result;
}

#endif
