/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <minhom/experiment.hh>
#include <minhom/io.hh>
#include <minhom/lp_build.hh>
#include <minhom/orderings.hh>
#include <minhom/variants.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using nlohmann::json;
using std::string;

using namespace minhom;

namespace
{
    auto exit_code(ErrorKind kind) -> int
    {
        switch (kind) {
            case ErrorKind::SizeLimit:
                return 4;
            case ErrorKind::Infeasible:
            case ErrorKind::EmptyList:
                return 2;
            case ErrorKind::Internal:
            case ErrorKind::EmptyCandidates:
                return 1;
            default:
                return 3;
        }
    }

    auto emit(const json & j, const string & out_path) -> void
    {
        if (out_path.empty())
            std::cout << j.dump(2) << "\n";
        else {
            std::ofstream out(out_path);
            if (! out)
                throw MinHomError(ErrorKind::BadArgument, "cannot write '" + out_path + "'");
            out << j.dump(2) << "\n";
        }
    }

    auto parse_pairs(const string & s) -> PairScope
    {
        if (s == "none")
            return PairScope::None;
        if (s == "close")
            return PairScope::Close;
        if (s == "all")
            return PairScope::All;
        throw MinHomError(ErrorKind::BadArgument, "unknown pair scope '" + s + "'");
    }

    struct SolveArgs
    {
        string variant = "minorder", mode = "derand", instance, out, pairs = "close", lp = "float", trace, dump_lp;
        std::uint64_t seed = 0;
        int k = 0;
    };

    auto run_solve(const SolveArgs & args) -> int
    {
        auto parsed = parse_instance_file(args.instance);
        RunOptions opts;
        opts.mode = parse_mode(args.mode);
        opts.seed = args.seed;
        opts.pairs = parse_pairs(args.pairs);
        if (args.lp != "float" && args.lp != "exact")
            throw MinHomError(ErrorKind::BadArgument, "unknown lp mode '" + args.lp + "'");
        opts.lp_mode = args.lp == "exact" ? SolveMode::Exact : SolveMode::Float;
        opts.ordering = parsed.ordering;
        opts.k = args.k;
        auto variant = parse_variant(args.variant);

        if (! args.dump_lp.empty()) {
            if (variant != Variant::MinOrder)
                throw MinHomError(ErrorKind::BadArgument, "--dump-lp supports the minorder variant only");
            auto ord = resolve_min_ordering(parsed.instance.target(), parsed.ordering);
            auto comp = build_completion(parsed.instance.target(), ord);
            auto state = consistent_lists(parsed.instance);
            if (state) {
                std::ofstream out(args.dump_lp);
                write_lp_format(out, build_extended_system(parsed.instance, comp, *state, opts.pairs));
            }
        }

        auto result = run_variant(parsed.instance, variant, opts);

        json j;
        j["variant"] = variant_name(variant);
        j["mode"] = mode_name(opts.mode);
        j["status"] = result.feasible ? "ok" : "infeasible";
        j["diagnostics"] = result.diagnostics;
        if (result.lp_value)
            j["lp_value"] = *result.lp_value;
        if (result.exact_lp_value)
            j["lp_value_exact"] = rational_to_string(*result.exact_lp_value);
        if (result.hom) {
            j["value"] = rational_to_string(result.hom->cost);
            j["map"] = result.hom->map;
        }
        else if (result.lp_value)
            j["value"] = result.exact_lp_value ? json(rational_to_string(*result.exact_lp_value)) : json(*result.lp_value);
        else
            j["value"] = nullptr;

        if (! args.trace.empty()) {
            std::ofstream out(args.trace);
            for (auto & step : result.trace)
                out << "shift " << step.vertex << " " << step.from << " " << step.to << "\n";
        }

        emit(j, args.out);
        return result.feasible ? 0 : 2;
    }

    auto run_check(const string & what, const string & path, int k) -> int
    {
        auto parsed = parse_target_file(path);
        auto & h = parsed.instance.target();
        json j;
        j["what"] = what;

        auto report = [&] (const std::optional<Ordering> & ord) {
            j["found"] = bool(ord);
            if (ord) {
                j["order"] = ord->perm;
                if (ord->has_levels()) {
                    j["levels"] = ord->levels;
                    j["k"] = ord->k;
                }
            }
        };

        if (what == "minorder")
            report(find_ordering(h, OrderingKind::Min));
        else if (what == "minmax")
            report(find_ordering(h, OrderingKind::MinMax));
        else if (what == "kmin") {
            std::optional<Ordering> found;
            try {
                found = resolve_kmin_ordering(h, std::nullopt, k);
            }
            catch (const MinHomError & e) {
                if (e.kind() != ErrorKind::NotKminOrdering)
                    throw;
            }
            report(found);
        }
        else if (what == "dat") {
            auto w = detect_dat(h);
            j["found"] = bool(w);
            if (w) {
                j["triple"] = { w->a, w->b, w->c };
                j["alpha"] = w->alpha;
                j["beta"] = w->beta;
                json paths = json::array();
                for (auto & p : w->paths)
                    paths.push_back(p);
                j["paths"] = paths;
            }
        }
        else if (what == "invpairs") {
            json pairs = json::array();
            for (auto & [a, b] : invertible_pairs(h))
                pairs.push_back({ a, b });
            j["pairs"] = pairs;
            j["found"] = ! pairs.empty();
        }
        else
            throw MinHomError(ErrorKind::BadArgument, "unknown check '" + what + "'");

        std::cout << j.dump(2) << "\n";
        return 0;
    }

    struct GenArgs
    {
        string target, variant = "minorder", out;
        int size = 20;
        std::uint64_t seed = 0;
        double density = -1;
        long cost_low = 5, cost_high = 100000;
        bool bipartite = false;
    };

    auto run_gen(const GenArgs & args) -> int
    {
        auto parsed = parse_target_file(args.target);
        GeneratorConfig cfg;
        cfg.variant = parse_variant(args.variant);
        cfg.size = args.size;
        if (args.density >= 0)
            cfg.density = args.density;
        cfg.cost_low = args.cost_low;
        cfg.cost_high = args.cost_high;
        cfg.bipartite = args.bipartite;
        auto inst = generate_instance(parsed.instance.target(), cfg, args.seed);
        bool sym = cfg.variant == Variant::BiarcGraph;
        if (args.out.empty())
            write_instance(std::cout, inst, parsed.ordering, sym);
        else {
            std::ofstream out(args.out);
            write_instance(out, inst, parsed.ordering, sym);
        }
        return 0;
    }

    auto run_experiment_command(const string & config, const string & out_path, const string & summary, int workers)
        -> int
    {
        auto cfg = parse_experiment_config_file(config);
        if (! out_path.empty())
            cfg.output = out_path;
        if (! summary.empty())
            cfg.summary = summary;
        if (workers > 0)
            cfg.workers = workers;
        auto target = parse_target_file(cfg.target);
        auto report = run_experiment(cfg, target);

        if (cfg.output.empty())
            write_csv(std::cout, cfg, report);
        else {
            std::ofstream out(cfg.output);
            write_csv(out, cfg, report);
        }
        if (! cfg.summary.empty()) {
            std::ofstream out(cfg.summary);
            write_summary_csv(out, report);
        }
        return 0;
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{ "Minimum cost homomorphism solver" };
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto solve = app.add_subcommand("solve", "Solve an instance");
    solve->add_option("--variant", solve_args.variant, "minorder, kmin or biarc-graph");
    solve->add_option("--mode", solve_args.mode, "lp, ilp, exact, approx or derand");
    solve->add_option("--seed", solve_args.seed, "Seed for approx mode");
    solve->add_option("--instance", solve_args.instance, "Instance file")->required();
    solve->add_option("--out", solve_args.out, "Write JSON here instead of stdout");
    solve->add_option("--pairs", solve_args.pairs, "Pair constraints: none, close or all");
    solve->add_option("--lp", solve_args.lp, "LP arithmetic: float or exact");
    solve->add_option("--k", solve_args.k, "Number of levels for kmin");
    solve->add_option("--trace", solve_args.trace, "Write the shift trace here");
    solve->add_option("--dump-lp", solve_args.dump_lp, "Write the LP model in LP file format");

    string check_what, check_target;
    int check_k = 0;
    auto check = app.add_subcommand("check", "Check target structure");
    check->add_option("--what", check_what, "minorder, minmax, kmin, dat or invpairs")->required();
    check->add_option("--target", check_target, "Target or instance file")->required();
    check->add_option("--k", check_k, "Number of levels for kmin");

    GenArgs gen_args;
    auto gen = app.add_subcommand("gen", "Generate a random instance");
    gen->add_option("--target", gen_args.target, "Target file")->required();
    gen->add_option("--variant", gen_args.variant, "minorder, kmin or biarc-graph");
    gen->add_option("--size", gen_args.size, "Source size");
    gen->add_option("--seed", gen_args.seed, "Seed");
    gen->add_option("--density", gen_args.density, "Arc probability (default 2 ln n / n)");
    gen->add_option("--cost-low", gen_args.cost_low, "Lowest cost");
    gen->add_option("--cost-high", gen_args.cost_high, "Highest cost");
    gen->add_flag("--bipartite", gen_args.bipartite, "Arcs only from the first half to the second");
    gen->add_option("--out", gen_args.out, "Output file");

    string exp_config, exp_out, exp_summary;
    int exp_workers = 0;
    auto experiment = app.add_subcommand("experiment", "Run the integrality gap experiment");
    experiment->add_option("--config", exp_config, "JSON config file")->required();
    experiment->add_option("--out", exp_out, "CSV output (overrides config)");
    experiment->add_option("--summary", exp_summary, "Per-size summary CSV (overrides config)");
    experiment->add_option("--workers", exp_workers, "Worker threads (overrides config)");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (*solve)
            return run_solve(solve_args);
        if (*check)
            return run_check(check_what, check_target, check_k);
        if (*gen)
            return run_gen(gen_args);
        if (*experiment)
            return run_experiment_command(exp_config, exp_out, exp_summary, exp_workers);
    }
    catch (const MinHomError & e) {
        json j;
        j["status"] = "error";
        j["error"] = error_kind_name(e.kind());
        j["message"] = e.what();
        if (e.line() >= 0)
            j["line"] = e.line();
        std::cout << j.dump(2) << "\n";
        return exit_code(e.kind());
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
