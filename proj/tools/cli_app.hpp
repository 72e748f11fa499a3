#pragma once

// Command-line front end: solve, sweep, exact, info.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 I/O or parse error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tspga/tspga.hpp"

namespace tspga::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;

namespace detail {

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path, "cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Instance load_instance(const std::string& path, const std::string& metric) {
    Instance inst = load_tsplib(path);
    if (metric.empty()) {
        return inst;
    }
    auto m = metric_from_string(metric);
    if (!m) {
        throw ConfigError("unknown metric \"" + metric + "\" (expected real or rounded)");
    }
    return inst.with_metric(*m);
}

inline std::string join_tour(const Tour& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        out += (i ? " " : "") + std::to_string(t[i]);
    }
    return out;
}

} // namespace detail

/// Runs the CLI with explicit output streams. argv[0] is the program name.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Genetic-algorithm toolkit for the Euclidean TSP"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Run the GA once and print the best tour");
    std::string solve_instance;
    std::string solve_config;
    std::string solve_metric;
    std::size_t pop_size = 0;
    std::size_t generations = 0;
    double px = 0.0;
    double pm = 0.0;
    std::string mutation;
    std::string init;
    std::size_t elite = 0;
    std::uint64_t seed = 0;
    solve->add_option("--instance", solve_instance, "TSPLIB file")->required();
    solve->add_option("--config", solve_config, "key=value GA config file; flags override it");
    auto* o_pop = solve->add_option("--pop-size", pop_size, "population size");
    auto* o_gen = solve->add_option("--generations", generations, "number of generations");
    auto* o_px = solve->add_option("--px", px, "crossover probability");
    auto* o_pm = solve->add_option("--pm", pm, "mutation probability");
    auto* o_mut = solve->add_option("--mutation", mutation, "twors|cim|rsm|throas|thrors|psm");
    auto* o_init = solve->add_option("--init", init, "random|mutate_random|mutate_nn");
    auto* o_elite = solve->add_option("--elite", elite, "elite count");
    auto* o_seed = solve->add_option("--seed", seed, "random seed");
    solve->add_option("--metric", solve_metric, "override metric: real|rounded");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Multi-seed operator/probability sweep with CSV output");
    std::string sweep_spec_file;
    std::string sweep_instance;
    std::string mutations;
    std::string px_list;
    std::string pm_list;
    std::size_t runs = 0;
    std::uint64_t sweep_seed = 0;
    std::string csv_out;
    std::size_t sweep_pop = 0;
    std::size_t sweep_gen = 0;
    std::string sweep_init;
    std::size_t sweep_elite = 0;
    std::size_t threads = 1;
    sweep->add_option("--spec", sweep_spec_file, "key=value sweep file; flags override it");
    auto* s_inst = sweep->add_option("--instance", sweep_instance, "TSPLIB file");
    auto* s_mut = sweep->add_option("--mutations", mutations, "comma-separated operators or 'all'");
    auto* s_px = sweep->add_option("--px-list", px_list, "comma-separated crossover probabilities");
    auto* s_pm = sweep->add_option("--pm-list", pm_list, "comma-separated mutation probabilities");
    auto* s_runs = sweep->add_option("--runs", runs, "runs per cell");
    auto* s_seed = sweep->add_option("--seed", sweep_seed, "base seed; run i uses seed + i");
    sweep->add_option("--out", csv_out, "CSV output path")->required();
    auto* s_pop = sweep->add_option("--pop-size", sweep_pop, "population size");
    auto* s_gen = sweep->add_option("--generations", sweep_gen, "number of generations");
    auto* s_init = sweep->add_option("--init", sweep_init, "random|mutate_random|mutate_nn");
    auto* s_elite = sweep->add_option("--elite", sweep_elite, "elite count");
    auto* s_threads = sweep->add_option("--threads", threads, "worker threads");

    // exact
    auto* exact = app.add_subcommand("exact", "Exact optimum for small instances");
    std::string exact_instance;
    std::string exact_metric;
    std::string method = "auto";
    exact->add_option("--instance", exact_instance, "TSPLIB file")->required();
    exact->add_option("--method", method, "auto|brute|held-karp")
        ->check(CLI::IsMember({"auto", "brute", "held-karp"}));
    exact->add_option("--metric", exact_metric, "override metric: real|rounded");

    // info
    auto* info = app.add_subcommand("info", "Print instance size and search-space size");
    std::string info_instance;
    info->add_option("--instance", info_instance, "TSPLIB file")->required();

    std::vector<std::string> args(argv.rbegin(), argv.rend() - (argv.empty() ? 0 : 1));
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        err << app.help();
        return kExitConfig;
    }

    try {
        if (solve->parsed()) {
            GaConfig cfg = solve_config.empty() ? GaConfig{} : parse_ga_config(detail::read_text_file(solve_config));
            if (o_pop->count()) cfg.pop_size = pop_size;
            if (o_gen->count()) cfg.generations = generations;
            if (o_px->count()) cfg.crossover_prob = px;
            if (o_pm->count()) cfg.mutation_prob = pm;
            if (o_mut->count()) set_config_value(cfg, "mutation", mutation);
            if (o_init->count()) set_config_value(cfg, "init", init);
            if (o_elite->count()) cfg.elite_count = elite;
            if (o_seed->count()) cfg.seed = seed;
            cfg.validate();
            const Instance inst = detail::load_instance(solve_instance, solve_metric);
            const RunResult r = run_ga(inst, cfg);
            out << "instance: " << inst.name() << " (n=" << inst.size() << ", metric=" << to_string(inst.metric())
                << ")\n";
            out << to_key_values(cfg);
            out << "best_cost: " << format_number(r.best_cost) << "\n";
            out << "tour: " << detail::join_tour(r.best_tour) << "\n";
            out << "evaluations: " << r.evaluations << "\n";
            return kExitOk;
        }

        if (sweep->parsed()) {
            SweepSpec spec = sweep_spec_file.empty() ? SweepSpec{}
                                                     : parse_sweep_spec(detail::read_text_file(sweep_spec_file));
            if (s_inst->count()) spec.instance_path = sweep_instance;
            if (s_mut->count()) spec.operators = parse_mutation_list(mutations);
            if (s_px->count()) spec.crossover_probs = parse_number_list(px_list);
            if (s_pm->count()) spec.mutation_probs = parse_number_list(pm_list);
            if (s_runs->count()) spec.runs = runs;
            if (s_seed->count()) spec.base_seed = sweep_seed;
            if (s_pop->count()) spec.base.pop_size = sweep_pop;
            if (s_gen->count()) spec.base.generations = sweep_gen;
            if (s_init->count()) set_config_value(spec.base, "init", sweep_init);
            if (s_elite->count()) spec.base.elite_count = sweep_elite;
            if (s_threads->count()) spec.threads = threads;
            if (spec.instance_path.empty()) {
                throw ConfigError("sweep needs --instance or an instance key in --spec");
            }
            spec.validate();
            const auto stats = run_sweep(spec);
            emit_csv(stats, csv_out);
            out << stats_csv(stats);
            return kExitOk;
        }

        if (exact->parsed()) {
            const Instance inst = detail::load_instance(exact_instance, exact_metric);
            const bool brute = method == "brute" || (method == "auto" && inst.size() <= kBruteForceMaxCities);
            const ExactResult r = brute ? brute_force_optimal(inst) : held_karp_optimal(inst);
            out << "method: " << (brute ? "brute" : "held-karp") << "\n";
            out << "cost: " << format_number(r.cost) << "\n";
            out << "tour: " << detail::join_tour(r.tour) << "\n";
            out << "nodes_explored: " << r.nodes_explored << "\n";
            return kExitOk;
        }

        if (info->parsed()) {
            const Instance inst = load_tsplib(info_instance);
            out << "name: " << inst.name() << "\n";
            out << "n=" << inst.size() << "\n";
            out << "metric: " << to_string(inst.metric()) << "\n";
            if (inst.size() >= 3 && inst.size() <= 20) {
                out << "tour_space_size: " << tour_space_size(inst.size()) << "\n";
            }
            return kExitOk;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitIo;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SizeError& e) {
        err << "size error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}

} // namespace tspga::cli
