/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef MINHOM_GUARD_INCLUDE_MINHOM_EXPERIMENT_HH
#define MINHOM_GUARD_INCLUDE_MINHOM_EXPERIMENT_HH 1

#include <minhom/io.hh>
#include <minhom/variants.hh>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace minhom
{
    struct ExperimentConfig
    {
        std::string target;                     // target file
        std::vector<int> sizes{ 100, 500, 1000, 2000, 3000 };
        int repetitions = 100;
        std::uint64_t seed = 1;
        long cost_low = 5, cost_high = 100000;
        Variant variant = Variant::MinOrder;
        std::string output;                     // empty: stdout
        std::string summary;                    // empty: no summary file
        std::optional<double> density;
        int approx_runs = 1;
        int workers = 1;
        bool timings = false;
        bool bipartite = false;
    };

    auto desk_scale_sizes() -> std::vector<int>;

    // JSON object whose keys mirror the struct fields.
    auto parse_experiment_config(std::istream &) -> ExperimentConfig;
    auto parse_experiment_config_file(const std::string & path) -> ExperimentConfig;

    struct ExperimentRow
    {
        std::uint64_t seed = 0;
        int source_size = 0, target_size = 0;
        Variant variant = Variant::MinOrder;
        std::optional<double> lp, ilp, approx, derand, gap, ratio;
        std::string error;
        double lp_ms = 0, ilp_ms = 0, approx_ms = 0, derand_ms = 0;
    };

    struct ExperimentReport
    {
        std::vector<ExperimentRow> rows;
        double density_used = -1;               // -1 when it varies with size
    };

    auto run_experiment(const ExperimentConfig &, const ParsedInstance & target) -> ExperimentReport;

    // Seed of the instance in row r.
    auto row_seed(std::uint64_t base, int row) -> std::uint64_t;

    auto format_number(double) -> std::string;
    auto write_csv(std::ostream &, const ExperimentConfig &, const ExperimentReport &) -> void;
    auto write_summary_csv(std::ostream &, const ExperimentReport &) -> void;
}

#endif
