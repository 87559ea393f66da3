/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/experiment.hh>

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <thread>

using std::optional;
using std::string;
using std::vector;

namespace minhom
{
    auto desk_scale_sizes() -> vector<int>
    {
        return { 20, 50, 100, 200 };
    }

    auto parse_experiment_config(std::istream & in) -> ExperimentConfig
    {
        nlohmann::json j;
        try {
            in >> j;
        }
        catch (const nlohmann::json::exception & e) {
            throw MinHomError(ErrorKind::ParseError, string("bad experiment config: ") + e.what());
        }

        ExperimentConfig cfg;
        try {
            for (auto & [key, value] : j.items()) {
                if (key == "target") cfg.target = value.get<string>();
                else if (key == "sizes") {
                    if (value.is_string() && value.get<string>() == "desk")
                        cfg.sizes = desk_scale_sizes();
                    else
                        cfg.sizes = value.get<vector<int> >();
                }
                else if (key == "repetitions") cfg.repetitions = value.get<int>();
                else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
                else if (key == "cost_low") cfg.cost_low = value.get<long>();
                else if (key == "cost_high") cfg.cost_high = value.get<long>();
                else if (key == "variant") cfg.variant = parse_variant(value.get<string>());
                else if (key == "output") cfg.output = value.get<string>();
                else if (key == "summary") cfg.summary = value.get<string>();
                else if (key == "density") cfg.density = value.get<double>();
                else if (key == "approx_runs") cfg.approx_runs = value.get<int>();
                else if (key == "workers") cfg.workers = value.get<int>();
                else if (key == "timings") cfg.timings = value.get<bool>();
                else if (key == "bipartite") cfg.bipartite = value.get<bool>();
                else
                    throw MinHomError(ErrorKind::ParseError, "unknown experiment key '" + key + "'");
            }
        }
        catch (const nlohmann::json::exception & e) {
            throw MinHomError(ErrorKind::ParseError, string("bad experiment config: ") + e.what());
        }
        if (cfg.repetitions < 0 || cfg.approx_runs < 1 || cfg.workers < 1)
            throw MinHomError(ErrorKind::ParseError, "experiment counts must be positive");
        return cfg;
    }

    auto parse_experiment_config_file(const string & path) -> ExperimentConfig
    {
        std::ifstream in(path);
        if (! in)
            throw MinHomError(ErrorKind::ParseError, "cannot open '" + path + "'");
        return parse_experiment_config(in);
    }

    auto row_seed(std::uint64_t base, int row) -> std::uint64_t
    {
        // splitmix64 step
        std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * std::uint64_t(row + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    namespace
    {
        using Clock = std::chrono::steady_clock;

        auto ms_since(Clock::time_point start) -> double
        {
            return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        }

        auto tag(const std::exception & e) -> string
        {
            if (auto m = dynamic_cast<const MinHomError *>(&e))
                return error_kind_name(m->kind());
            return "INTERNAL";
        }

        auto run_row(const ExperimentConfig & cfg, const ParsedInstance & target, int size, std::uint64_t seed)
            -> ExperimentRow
        {
            ExperimentRow row;
            row.seed = seed;
            row.source_size = size;
            row.target_size = target.instance.target().size();
            row.variant = cfg.variant;

            GeneratorConfig gen{ cfg.variant, size, cfg.density, cfg.cost_low, cfg.cost_high, cfg.bipartite };
            auto inst = generate_instance(target.instance.target(), gen, seed);

            RunOptions opts;
            opts.seed = seed;
            opts.ordering = target.ordering;
            opts.lp_mode = SolveMode::Exact;
            opts.lp_cache = std::make_shared<LpCache>();

            auto attempt = [&] (auto && body) {
                try {
                    body();
                }
                catch (const std::exception & e) {
                    if (row.error.empty())
                        row.error = tag(e);
                }
            };

            optional<Rational> lp_exact;
            attempt([&] {
                auto start = Clock::now();
                opts.mode = Mode::Lp;
                auto r = run_variant(inst, cfg.variant, opts);
                row.lp_ms = ms_since(start);
                if (! r.feasible)
                    throw MinHomError(ErrorKind::Infeasible, "generated instance is infeasible");
                row.lp = r.exact_lp_value ? rational_to_double(*r.exact_lp_value) : *r.lp_value;
                lp_exact = r.exact_lp_value;
            });

            opts.lp_mode = SolveMode::Float;
            optional<Rational> ilp_exact;
            attempt([&] {
                auto start = Clock::now();
                opts.mode = Mode::Ilp;
                auto r = run_variant(inst, cfg.variant, opts);
                row.ilp_ms = ms_since(start);
                if (! r.hom)
                    throw MinHomError(ErrorKind::Infeasible, "no integer solution");
                row.ilp = rational_to_double(r.hom->cost);
                ilp_exact = r.hom->cost;
            });

            attempt([&] {
                auto start = Clock::now();
                opts.mode = Mode::Approx;
                Rational total = 0;
                for (int j = 0 ; j < cfg.approx_runs ; ++j) {
                    opts.seed = row_seed(seed, j);
                    auto r = run_variant(inst, cfg.variant, opts);
                    if (! r.hom)
                        throw MinHomError(ErrorKind::Infeasible, "no rounded solution");
                    total += r.hom->cost;
                }
                opts.seed = seed;
                row.approx_ms = ms_since(start);
                row.approx = rational_to_double(total / cfg.approx_runs);
            });

            optional<Rational> derand_exact;
            attempt([&] {
                auto start = Clock::now();
                opts.mode = Mode::Derand;
                auto r = run_variant(inst, cfg.variant, opts);
                row.derand_ms = ms_since(start);
                if (! r.hom)
                    throw MinHomError(ErrorKind::Infeasible, "no derandomized solution");
                row.derand = rational_to_double(r.hom->cost);
                derand_exact = r.hom->cost;
            });

            auto quotient = [&] (const optional<Rational> & num) -> optional<double> {
                if (! num || ! lp_exact)
                    return std::nullopt;
                if (*lp_exact == 0)
                    return *num == 0 ? optional<double>(1.0) : std::nullopt;
                return rational_to_double(*num / *lp_exact);
            };
            row.gap = quotient(ilp_exact);
            row.ratio = quotient(derand_exact);
            return row;
        }
    }

    auto run_experiment(const ExperimentConfig & cfg, const ParsedInstance & target) -> ExperimentReport
    {
        struct Job
        {
            int size;
            std::uint64_t seed;
        };
        vector<Job> jobs;
        for (int size : cfg.sizes)
            for (int r = 0 ; r < cfg.repetitions ; ++r)
                jobs.push_back(Job{ size, row_seed(cfg.seed, int(jobs.size())) });

        ExperimentReport report;
        report.rows.resize(jobs.size());
        if (cfg.density)
            report.density_used = *cfg.density;

        std::atomic<std::size_t> next{ 0 };
        auto worker = [&] {
            for (std::size_t i = next++ ; i < jobs.size() ; i = next++)
                report.rows[i] = run_row(cfg, target, jobs[i].size, jobs[i].seed);
        };

        int threads = std::min<int>(cfg.workers, std::max<int>(1, int(jobs.size())));
        if (threads <= 1)
            worker();
        else {
            vector<std::thread> pool;
            for (int t = 0 ; t < threads ; ++t)
                pool.emplace_back(worker);
            for (auto & t : pool)
                t.join();
        }
        return report;
    }

    auto format_number(double v) -> string
    {
        char buffer[64];
        std::snprintf(buffer, sizeof(buffer), "%.9g", v);
        return buffer;
    }

    namespace
    {
        auto cell(const optional<double> & v) -> string
        {
            return v ? format_number(*v) : string();
        }
    }

    auto write_csv(std::ostream & out, const ExperimentConfig & cfg, const ExperimentReport & report) -> void
    {
        out << "# density=" << (cfg.density ? format_number(*cfg.density) : string("2ln(n)/n"))
            << " cost_range=" << cfg.cost_low << ".." << cfg.cost_high
            << " seed=" << cfg.seed << " approx_runs=" << cfg.approx_runs << "\n";
        out << "seed,source_size,target_size,variant,lp_value,ilp_value,approx_value,derand_value,gap,ratio,error";
        if (cfg.timings)
            out << ",lp_ms,ilp_ms,approx_ms,derand_ms";
        out << "\n";
        for (auto & r : report.rows) {
            out << r.seed << "," << r.source_size << "," << r.target_size << "," << variant_name(r.variant) << ","
                << cell(r.lp) << "," << cell(r.ilp) << "," << cell(r.approx) << "," << cell(r.derand) << ","
                << cell(r.gap) << "," << cell(r.ratio) << "," << r.error;
            if (cfg.timings)
                out << "," << format_number(r.lp_ms) << "," << format_number(r.ilp_ms) << ","
                    << format_number(r.approx_ms) << "," << format_number(r.derand_ms);
            out << "\n";
        }
    }

    auto write_summary_csv(std::ostream & out, const ExperimentReport & report) -> void
    {
        struct Totals
        {
            int rows = 0, ok = 0, errors = 0;
            double lp = 0, ilp = 0, approx = 0, derand = 0, gap = 0, ratio = 0, max_gap = 0;
        };
        std::map<int, Totals> by_size;
        for (auto & r : report.rows) {
            auto & t = by_size[r.source_size];
            ++t.rows;
            if (! r.error.empty() || ! r.gap || ! r.ratio || ! r.approx) {
                ++t.errors;
                continue;
            }
            ++t.ok;
            t.lp += *r.lp;
            t.ilp += *r.ilp;
            t.approx += *r.approx;
            t.derand += *r.derand;
            t.gap += *r.gap;
            t.ratio += *r.ratio;
            t.max_gap = std::max(t.max_gap, *r.gap);
        }

        out << "source_size,rows,errors,mean_lp,mean_ilp,mean_approx,mean_derand,mean_gap,max_gap,mean_ratio\n";
        for (auto & [size, t] : by_size) {
            out << size << "," << t.rows << "," << t.errors;
            if (t.ok == 0)
                out << ",,,,,,,\n";
            else
                out << "," << format_number(t.lp / t.ok) << "," << format_number(t.ilp / t.ok)
                    << "," << format_number(t.approx / t.ok) << "," << format_number(t.derand / t.ok)
                    << "," << format_number(t.gap / t.ok) << "," << format_number(t.max_gap)
                    << "," << format_number(t.ratio / t.ok) << "\n";
        }
    }
}
