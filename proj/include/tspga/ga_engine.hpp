#pragma once

/// @file ga_engine.hpp
/// @brief Generational GA for the TSP: population initialization, variation
/// (roulette parents, OX, mutation) and elitist insertion over parents+offspring.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "format.hpp"
#include "operators.hpp"
#include "random.hpp"
#include "tsp_core.hpp"

namespace tspga {

enum class InitMethod {
    Random,           ///< independent uniform permutations
    MutateFromRandom, ///< one random tour plus mutants of it
    MutateFromNearest ///< nearest-neighbour tour from city 1 plus mutants of it
};

inline std::string_view to_string(InitMethod m) {
    switch (m) {
    case InitMethod::Random:
        return "random";
    case InitMethod::MutateFromRandom:
        return "mutate_random";
    case InitMethod::MutateFromNearest:
        return "mutate_nn";
    }
    return "?";
}

inline std::optional<InitMethod> init_method_from_string(std::string_view s) {
    for (InitMethod m : {InitMethod::Random, InitMethod::MutateFromRandom, InitMethod::MutateFromNearest}) {
        if (to_string(m) == s) {
            return m;
        }
    }
    return std::nullopt;
}

struct GaConfig {
    std::size_t pop_size = 100;
    std::size_t generations = 2000;
    double crossover_prob = 0.9;
    double mutation_prob = 0.1;
    MutationKind mutation = MutationKind::Rsm;
    InitMethod init = InitMethod::Random;
    std::size_t elite_count = 1;
    std::uint64_t seed = 1;

    /// Throws ConfigError describing the first violated constraint.
    void validate() const {
        if (pop_size < 2) {
            throw ConfigError("pop_size must be at least 2");
        }
        if (elite_count < 1 || elite_count >= pop_size) {
            throw ConfigError("elite must satisfy 1 <= elite < pop_size");
        }
        if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) {
            throw ConfigError("crossover_prob must lie in [0, 1]");
        }
        if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
            throw ConfigError("mutation_prob must lie in [0, 1]");
        }
    }

    friend bool operator==(const GaConfig&, const GaConfig&) = default;
};

/// Keys understood by GaConfig's key=value form.
inline constexpr std::string_view kGaConfigKeys[] = {"pop_size", "generations", "crossover_prob", "mutation_prob",
                                                      "mutation", "init",        "elite",          "seed"};

namespace detail {

template <typename T>
T parse_config_number(const std::string& key, const std::string& value) {
    T out{};
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("invalid value for " + key + ": \"" + value + "\"");
    }
    return out;
}

} // namespace detail

/// Applies one key=value setting. Returns false when the key is not a GaConfig key.
inline bool set_config_value(GaConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "pop_size") {
        cfg.pop_size = detail::parse_config_number<std::size_t>(key, value);
    } else if (key == "generations") {
        cfg.generations = detail::parse_config_number<std::size_t>(key, value);
    } else if (key == "crossover_prob") {
        cfg.crossover_prob = detail::parse_config_number<double>(key, value);
    } else if (key == "mutation_prob") {
        cfg.mutation_prob = detail::parse_config_number<double>(key, value);
    } else if (key == "mutation") {
        auto k = mutation_from_string(value);
        if (!k) {
            throw ConfigError("unknown mutation \"" + value + "\"");
        }
        cfg.mutation = *k;
    } else if (key == "init") {
        auto m = init_method_from_string(value);
        if (!m) {
            throw ConfigError("unknown init method \"" + value + "\"");
        }
        cfg.init = *m;
    } else if (key == "elite") {
        cfg.elite_count = detail::parse_config_number<std::size_t>(key, value);
    } else if (key == "seed") {
        cfg.seed = detail::parse_config_number<std::uint64_t>(key, value);
    } else {
        return false;
    }
    return true;
}

/// Parses "key=value" lines. Blank lines and lines starting with '#' are ignored.
/// Keys absent from the text keep their defaults.
inline std::map<std::string, std::string> parse_key_values(std::string_view text) {
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        }
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        out[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return out;
}

inline GaConfig parse_ga_config(std::string_view text) {
    GaConfig cfg;
    for (const auto& [key, value] : parse_key_values(text)) {
        if (!set_config_value(cfg, key, value)) {
            throw ConfigError("unknown config key \"" + key + "\"");
        }
    }
    cfg.validate();
    return cfg;
}

inline std::string to_key_values(const GaConfig& cfg) {
    std::string out;
    out += "pop_size=" + std::to_string(cfg.pop_size) + "\n";
    out += "generations=" + std::to_string(cfg.generations) + "\n";
    out += "crossover_prob=" + format_number(cfg.crossover_prob) + "\n";
    out += "mutation_prob=" + format_number(cfg.mutation_prob) + "\n";
    out += "mutation=" + std::string(to_string(cfg.mutation)) + "\n";
    out += "init=" + std::string(to_string(cfg.init)) + "\n";
    out += "elite=" + std::to_string(cfg.elite_count) + "\n";
    out += "seed=" + std::to_string(cfg.seed) + "\n";
    return out;
}

struct Population {
    std::vector<Tour> tours;
    std::vector<Length> costs;

    std::size_t size() const noexcept { return tours.size(); }

    /// Index of the lowest cost, earliest index on ties.
    std::size_t best_index() const {
        if (costs.empty()) {
            throw DomainError("empty population");
        }
        return static_cast<std::size_t>(std::min_element(costs.begin(), costs.end()) - costs.begin());
    }

    friend bool operator==(const Population&, const Population&) = default;
};

struct RunResult {
    Tour best_tour;
    Length best_cost = 0.0;
    std::vector<Length> history; ///< best cost per generation, generation 0 included
    std::uint64_t evaluations = 0;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Text form of a run result, used for byte-level reproducibility checks.
inline std::string to_string(const RunResult& r) {
    std::string out = "best_cost=" + format_number(r.best_cost) + "\nevaluations=" + std::to_string(r.evaluations) +
                      "\ntour=";
    for (std::size_t i = 0; i < r.best_tour.size(); ++i) {
        out += (i ? " " : "") + std::to_string(r.best_tour[i]);
    }
    out += "\nhistory=";
    for (std::size_t i = 0; i < r.history.size(); ++i) {
        out += (i ? " " : "") + format_number(r.history[i]);
    }
    out += "\n";
    return out;
}

/// Greedy nearest-neighbour tour from city 1; ties go to the lowest city id.
inline Tour nearest_neighbor_tour(const Instance& inst) {
    const std::size_t n = inst.size();
    std::vector<bool> visited(n + 1, false);
    Tour t;
    t.order.reserve(n);
    CityId current = 1;
    visited[1] = true;
    t.order.push_back(current);
    for (std::size_t step = 1; step < n; ++step) {
        CityId next = 0;
        Length best = std::numeric_limits<Length>::infinity();
        for (CityId c = 1; c <= static_cast<CityId>(n); ++c) {
            if (visited[static_cast<std::size_t>(c)]) {
                continue;
            }
            const Length d = inst.distance_unchecked(current, c);
            if (d < best) {
                best = d;
                next = c;
            }
        }
        visited[static_cast<std::size_t>(next)] = true;
        t.order.push_back(next);
        current = next;
    }
    return t;
}

namespace detail {

inline Tour random_tour(std::size_t n, RandomStream& rng) {
    Tour t = Tour::identity(n);
    rng.shuffle(std::span<CityId>(t.order));
    return t;
}

// Mutation that always changes structure once. PSM has no single-move form,
// so it scans with its configured per-gene rate, floored at one expected swap.
inline Tour forced_mutation(const GaConfig& cfg, const Tour& seed, RandomStream& rng) {
    const double psm_rate = std::max(cfg.mutation_prob, 1.0 / static_cast<double>(seed.size()));
    return mutate_once(cfg.mutation, seed, rng, psm_rate);
}

} // namespace detail

/// Builds cfg.pop_size tours with their costs.
inline Population init_population(const Instance& inst, const GaConfig& cfg, RandomStream& rng) {
    cfg.validate();
    const std::size_t n = inst.size();
    if (n < 3) {
        throw DomainError("init_population: need at least 3 cities");
    }
    Population pop;
    pop.tours.reserve(cfg.pop_size);
    if (cfg.init == InitMethod::Random) {
        for (std::size_t k = 0; k < cfg.pop_size; ++k) {
            pop.tours.push_back(detail::random_tour(n, rng));
        }
    } else {
        const Tour seed =
            cfg.init == InitMethod::MutateFromRandom ? detail::random_tour(n, rng) : nearest_neighbor_tour(inst);
        pop.tours.push_back(seed);
        for (std::size_t k = 1; k < cfg.pop_size; ++k) {
            pop.tours.push_back(detail::forced_mutation(cfg, seed, rng));
        }
    }
    pop.costs.reserve(cfg.pop_size);
    for (const Tour& t : pop.tours) {
        pop.costs.push_back(tour_cost(inst, t));
    }
    return pop;
}

/// One generation: cfg.pop_size offspring from roulette-picked parents (OX
/// with probability P_x, then mutation with P_m), followed by insertion. The
/// next population holds the elite_count best of parents+offspring plus
/// roulette picks without replacement over the rest of that union.
///
/// `evaluations`, when given, is incremented once per offspring cost evaluation.
inline Population evolve_generation(const Population& pop, const Instance& inst, const GaConfig& cfg,
                                    RandomStream& rng, std::uint64_t* evaluations = nullptr) {
    cfg.validate();
    const std::size_t n_pop = pop.size();
    if (n_pop != cfg.pop_size || pop.costs.size() != n_pop) {
        throw DomainError("evolve_generation: population size does not match the config");
    }

    // Variation
    const std::vector<double> weights = selection_weights(pop.costs);
    std::vector<Tour> offspring;
    offspring.reserve(n_pop + 1);
    while (offspring.size() < n_pop) {
        const Tour& a = pop.tours[roulette_pick(weights, rng.uniform_real())];
        const Tour& b = pop.tours[roulette_pick(weights, rng.uniform_real())];
        Tour c1;
        Tour c2;
        if (rng.uniform_real() < cfg.crossover_prob) {
            std::tie(c1, c2) = ox_crossover(a, b, random_cuts(inst.size(), rng));
        } else {
            c1 = a;
            c2 = b;
        }
        offspring.push_back(apply_mutation(cfg.mutation, std::move(c1), cfg.mutation_prob, rng));
        if (offspring.size() < n_pop) {
            offspring.push_back(apply_mutation(cfg.mutation, std::move(c2), cfg.mutation_prob, rng));
        }
    }

    // Union: parents first, then offspring.
    std::vector<const Tour*> pool_tours;
    std::vector<Length> pool_costs;
    pool_tours.reserve(2 * n_pop);
    pool_costs.reserve(2 * n_pop);
    for (std::size_t i = 0; i < n_pop; ++i) {
        pool_tours.push_back(&pop.tours[i]);
        pool_costs.push_back(pop.costs[i]);
    }
    for (const Tour& t : offspring) {
        pool_tours.push_back(&t);
        pool_costs.push_back(tour_cost(inst, t));
        if (evaluations) {
            ++*evaluations;
        }
    }

    // Insertion: elites by (cost, position), then roulette without replacement.
    std::vector<std::size_t> order(pool_costs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return pool_costs[x] < pool_costs[y]; });

    Population next;
    next.tours.reserve(n_pop);
    next.costs.reserve(n_pop);
    std::vector<bool> taken(pool_costs.size(), false);
    for (std::size_t e = 0; e < cfg.elite_count; ++e) {
        next.tours.push_back(*pool_tours[order[e]]);
        next.costs.push_back(pool_costs[order[e]]);
        taken[order[e]] = true;
    }

    std::vector<std::size_t> remaining;
    remaining.reserve(pool_costs.size());
    for (std::size_t i = 0; i < pool_costs.size(); ++i) {
        if (!taken[i]) {
            remaining.push_back(i);
        }
    }
    std::vector<Length> remaining_costs;
    while (next.size() < n_pop) {
        std::size_t slot = 0;
        if (remaining.size() > 1) {
            remaining_costs.clear();
            for (std::size_t i : remaining) {
                remaining_costs.push_back(pool_costs[i]);
            }
            slot = roulette_pick(selection_weights(remaining_costs), rng.uniform_real());
        }
        const std::size_t pick = remaining[slot];
        next.tours.push_back(*pool_tours[pick]);
        next.costs.push_back(pool_costs[pick]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(slot));
    }
    return next;
}

/// Full seeded run: initialization, then cfg.generations calls of evolve_generation.
inline RunResult run_ga(const Instance& inst, const GaConfig& cfg) {
    cfg.validate();
    RandomStream rng(cfg.seed);
    Population pop = init_population(inst, cfg, rng);

    RunResult result;
    result.evaluations = pop.size();
    result.history.reserve(cfg.generations + 1);
    std::size_t best = pop.best_index();
    result.best_tour = pop.tours[best];
    result.best_cost = pop.costs[best];
    result.history.push_back(result.best_cost);

    for (std::size_t g = 0; g < cfg.generations; ++g) {
        pop = evolve_generation(pop, inst, cfg, rng, &result.evaluations);
        best = pop.best_index();
        if (pop.costs[best] < result.best_cost) {
            result.best_cost = pop.costs[best];
            result.best_tour = pop.tours[best];
        }
        result.history.push_back(result.best_cost);
    }
    return result;
}

} // namespace tspga
