#pragma once

/// @file bench.hpp
/// @brief Multi-seed operator/probability sweeps, summary statistics and CSV output.
///
/// Run i of every cell uses seed base_seed + i, so all operators and
/// probability settings start from the same initial populations.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "format.hpp"
#include "ga_engine.hpp"
#include "operators.hpp"
#include "tsp_core.hpp"
#include "tsplib.hpp"

namespace tspga {

struct SweepSpec {
    std::string instance_path;
    std::vector<MutationKind> operators;
    std::vector<double> crossover_probs{0.9};
    std::vector<double> mutation_probs{0.1};
    std::size_t runs = 50;
    std::uint64_t base_seed = 1;
    /// pop_size, generations, init and elite are taken from here; the swept
    /// fields and the seed are overwritten per run.
    GaConfig base;
    std::size_t threads = 1;

    void validate() const {
        if (operators.empty()) {
            throw ConfigError("sweep needs at least one mutation operator");
        }
        if (crossover_probs.empty() || mutation_probs.empty()) {
            throw ConfigError("sweep needs at least one crossover and one mutation probability");
        }
        if (runs < 1) {
            throw ConfigError("runs must be at least 1");
        }
        for (double p : crossover_probs) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw ConfigError("crossover probability " + format_number(p) + " outside [0, 1]");
            }
        }
        for (double p : mutation_probs) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw ConfigError("mutation probability " + format_number(p) + " outside [0, 1]");
            }
        }
        base.validate();
    }
};

struct Summary {
    double min = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0; ///< sample standard deviation (n - 1); 0 for a single value
};

inline Summary summarize(std::vector<double> values) {
    if (values.empty()) {
        throw DomainError("summarize: no values");
    }
    const std::size_t n = values.size();
    std::sort(values.begin(), values.end());
    Summary s;
    s.min = values.front();
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(n);
    s.median = n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    if (n > 1) {
        double sq = 0.0;
        for (double v : values) {
            sq += (v - s.mean) * (v - s.mean);
        }
        s.stddev = std::sqrt(sq / static_cast<double>(n - 1));
    }
    return s;
}

struct CellStats {
    MutationKind op = MutationKind::Rsm;
    double px = 0.0;
    double pm = 0.0;
    std::size_t runs = 0;
    double best = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
    std::vector<double> mean_history; ///< per generation, mean over runs of the best-so-far cost
    std::vector<double> final_costs;  ///< per run, in run order; not written to CSV

    friend bool operator==(const CellStats&, const CellStats&) = default;
};

/// GaConfig for run `run` of the cell (op, px, pm).
inline GaConfig cell_config(const SweepSpec& spec, MutationKind op, double px, double pm, std::size_t run) {
    GaConfig cfg = spec.base;
    cfg.mutation = op;
    cfg.crossover_prob = px;
    cfg.mutation_prob = pm;
    cfg.seed = spec.base_seed + run;
    return cfg;
}

/// Runs every (operator, P_x, P_m) cell, in that nesting order.
inline std::vector<CellStats> run_sweep(const Instance& inst, const SweepSpec& spec) {
    spec.validate();

    struct Job {
        std::size_t cell;
        std::size_t run;
        GaConfig cfg;
    };
    std::vector<CellStats> cells;
    std::vector<Job> jobs;
    for (MutationKind op : spec.operators) {
        for (double px : spec.crossover_probs) {
            for (double pm : spec.mutation_probs) {
                CellStats c;
                c.op = op;
                c.px = px;
                c.pm = pm;
                c.runs = spec.runs;
                for (std::size_t r = 0; r < spec.runs; ++r) {
                    jobs.push_back({cells.size(), r, cell_config(spec, op, px, pm, r)});
                }
                cells.push_back(std::move(c));
            }
        }
    }

    // results[cell][run]; each slot is written by exactly one worker
    std::vector<std::vector<RunResult>> results(cells.size(), std::vector<RunResult>(spec.runs));
    const std::size_t workers = std::max<std::size_t>(1, std::min(spec.threads, jobs.size()));
    if (workers == 1) {
        for (const Job& job : jobs) {
            results[job.cell][job.run] = run_ga(inst, job.cfg);
        }
    } else {
        std::mutex mu;
        std::size_t next = 0;
        std::exception_ptr failure;
        auto worker = [&] {
            while (true) {
                std::size_t k;
                {
                    std::lock_guard lock(mu);
                    if (next >= jobs.size() || failure) {
                        return;
                    }
                    k = next++;
                }
                try {
                    results[jobs[k].cell][jobs[k].run] = run_ga(inst, jobs[k].cfg);
                } catch (...) {
                    std::lock_guard lock(mu);
                    failure = std::current_exception();
                }
            }
        };
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        pool.clear();
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    for (std::size_t c = 0; c < cells.size(); ++c) {
        CellStats& cell = cells[c];
        for (const RunResult& r : results[c]) {
            cell.final_costs.push_back(r.best_cost);
        }
        const Summary s = summarize(cell.final_costs);
        cell.best = s.min;
        cell.mean = s.mean;
        cell.median = s.median;
        cell.stddev = s.stddev;
        const std::size_t gens = results[c].front().history.size();
        cell.mean_history.assign(gens, 0.0);
        for (std::size_t g = 0; g < gens; ++g) {
            double sum = 0.0;
            for (const RunResult& r : results[c]) {
                sum += r.history[g];
            }
            cell.mean_history[g] = sum / static_cast<double>(results[c].size());
        }
    }
    return cells;
}

inline std::vector<CellStats> run_sweep(const SweepSpec& spec) {
    return run_sweep(load_tsplib(spec.instance_path), spec);
}

inline constexpr std::string_view kStatsCsvHeader = "operator,px,pm,runs,best,mean,median,std";
inline constexpr std::string_view kHistoryCsvHeader = "operator,px,pm,generation,mean_best";

inline std::filesystem::path history_path(const std::filesystem::path& path) {
    return std::filesystem::path(path.string() + ".history.csv");
}

inline std::string stats_csv(const std::vector<CellStats>& stats) {
    std::string out(kStatsCsvHeader);
    out += '\n';
    for (const CellStats& c : stats) {
        out += std::string(to_string(c.op)) + ',' + format_number(c.px) + ',' + format_number(c.pm) + ',' +
               std::to_string(c.runs) + ',' + format_number(c.best) + ',' + format_number(c.mean) + ',' +
               format_number(c.median) + ',' + format_number(c.stddev) + '\n';
    }
    return out;
}

inline std::string history_csv(const std::vector<CellStats>& stats) {
    std::string out(kHistoryCsvHeader);
    out += '\n';
    for (const CellStats& c : stats) {
        const std::string prefix =
            std::string(to_string(c.op)) + ',' + format_number(c.px) + ',' + format_number(c.pm) + ',';
        for (std::size_t g = 0; g < c.mean_history.size(); ++g) {
            out += prefix + std::to_string(g) + ',' + format_number(c.mean_history[g]) + '\n';
        }
    }
    return out;
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path.string(), "cannot open for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError(path.string(), "write failed");
    }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(s);
    while (std::getline(in, field, sep)) {
        out.push_back(field);
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

inline double csv_number(const std::string& s, const std::string& where) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw IoError(where, "bad number \"" + s + "\"");
    }
    return v;
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path.string(), "cannot open file");
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    return lines;
}

} // namespace detail

/// Writes `path` (one row per cell) and `path`.history.csv (one row per cell and generation).
inline void emit_csv(const std::vector<CellStats>& stats, const std::filesystem::path& path) {
    detail::write_file(path, stats_csv(stats));
    detail::write_file(history_path(path), history_csv(stats));
}

/// Reads back files written by emit_csv. The history file is optional.
inline std::vector<CellStats> read_csv(const std::filesystem::path& path) {
    const auto lines = detail::read_lines(path);
    if (lines.empty() || lines.front() != kStatsCsvHeader) {
        throw IoError(path.string(), "missing stats header");
    }
    std::vector<CellStats> stats;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = path.string() + ":" + std::to_string(i + 1);
        const auto f = detail::split(lines[i], ',');
        if (f.size() != 8) {
            throw IoError(where, "expected 8 fields");
        }
        CellStats c;
        auto op = mutation_from_string(f[0]);
        if (!op) {
            throw IoError(where, "unknown operator \"" + f[0] + "\"");
        }
        c.op = *op;
        c.px = detail::csv_number(f[1], where);
        c.pm = detail::csv_number(f[2], where);
        c.runs = static_cast<std::size_t>(detail::csv_number(f[3], where));
        c.best = detail::csv_number(f[4], where);
        c.mean = detail::csv_number(f[5], where);
        c.median = detail::csv_number(f[6], where);
        c.stddev = detail::csv_number(f[7], where);
        stats.push_back(std::move(c));
    }

    const auto hpath = history_path(path);
    if (!std::filesystem::exists(hpath)) {
        return stats;
    }
    const auto hlines = detail::read_lines(hpath);
    if (hlines.empty() || hlines.front() != kHistoryCsvHeader) {
        throw IoError(hpath.string(), "missing history header");
    }
    for (std::size_t i = 1; i < hlines.size(); ++i) {
        const std::string where = hpath.string() + ":" + std::to_string(i + 1);
        const auto f = detail::split(hlines[i], ',');
        if (f.size() != 5) {
            throw IoError(where, "expected 5 fields");
        }
        const auto op = mutation_from_string(f[0]);
        const double px = detail::csv_number(f[1], where);
        const double pm = detail::csv_number(f[2], where);
        auto cell = std::find_if(stats.begin(), stats.end(), [&](const CellStats& c) {
            return op && c.op == *op && c.px == px && c.pm == pm;
        });
        if (cell == stats.end()) {
            throw IoError(where, "history row for unknown cell");
        }
        const auto g = static_cast<std::size_t>(detail::csv_number(f[3], where));
        if (g != cell->mean_history.size()) {
            throw IoError(where, "generations out of order");
        }
        cell->mean_history.push_back(detail::csv_number(f[4], where));
    }
    return stats;
}

/// Comma-separated list of numbers ("0.1,0.5,0.9").
inline std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : detail::split(text, ',')) {
        const auto a = item.find_first_not_of(' ');
        const auto b = item.find_last_not_of(' ');
        if (a == std::string::npos) {
            throw ConfigError("empty entry in list \"" + text + "\"");
        }
        const std::string s = item.substr(a, b - a + 1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw ConfigError("invalid number \"" + s + "\"");
        }
        out.push_back(v);
    }
    return out;
}

/// Comma-separated operator names; "all" selects all six.
inline std::vector<MutationKind> parse_mutation_list(const std::string& text) {
    if (text == "all") {
        return {kAllMutations.begin(), kAllMutations.end()};
    }
    std::vector<MutationKind> out;
    for (const auto& item : detail::split(text, ',')) {
        auto k = mutation_from_string(item);
        if (!k) {
            throw ConfigError("unknown mutation \"" + item + "\"");
        }
        out.push_back(*k);
    }
    return out;
}

/// Applies one sweep-file setting. Accepts instance, mutations, px_list,
/// pm_list, runs, seed, threads, and the GaConfig keys pop_size,
/// generations, init and elite.
inline void set_sweep_value(SweepSpec& spec, const std::string& key, const std::string& value) {
    if (key == "instance") {
        spec.instance_path = value;
    } else if (key == "mutations") {
        spec.operators = parse_mutation_list(value);
    } else if (key == "px_list") {
        spec.crossover_probs = parse_number_list(value);
    } else if (key == "pm_list") {
        spec.mutation_probs = parse_number_list(value);
    } else if (key == "runs") {
        spec.runs = detail::parse_config_number<std::size_t>(key, value);
    } else if (key == "seed") {
        spec.base_seed = detail::parse_config_number<std::uint64_t>(key, value);
    } else if (key == "threads") {
        spec.threads = detail::parse_config_number<std::size_t>(key, value);
    } else if (key == "pop_size" || key == "generations" || key == "init" || key == "elite") {
        set_config_value(spec.base, key, value);
    } else {
        throw ConfigError("unknown sweep key \"" + key + "\"");
    }
}

inline SweepSpec parse_sweep_spec(std::string_view text) {
    SweepSpec spec;
    for (const auto& [key, value] : parse_key_values(text)) {
        set_sweep_value(spec, key, value);
    }
    return spec;
}

} // namespace tspga
