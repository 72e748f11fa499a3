#pragma once

/// @file exact_oracle.hpp
/// @brief Exact optima for small instances: exhaustive enumeration and Held-Karp.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "tsp_core.hpp"

namespace tspga {

struct ExactResult {
    Tour tour;
    Length cost = 0.0;
    std::uint64_t nodes_explored = 0;
};

inline constexpr std::size_t kBruteForceMaxCities = 12;
inline constexpr std::size_t kHeldKarpMaxCities = 18;

/// Enumerates every undirected tour once (city 1 first, second city id below
/// the last city id) and returns the cheapest, lexicographically smallest on
/// ties. nodes_explored counts the tours evaluated.
inline ExactResult brute_force_optimal(const Instance& inst) {
    const std::size_t n = inst.size();
    if (n < 3 || n > kBruteForceMaxCities) {
        throw SizeError("brute_force_optimal: supports 3.." + std::to_string(kBruteForceMaxCities) +
                        " cities, got " + std::to_string(n));
    }
    Tour current = Tour::identity(n);
    ExactResult best;
    best.cost = std::numeric_limits<Length>::infinity();
    // next_permutation walks the tail in lexicographic order, so the first
    // strict improvement seen is also the lexicographically smallest optimum.
    do {
        if (current[1] > current[n - 1]) {
            continue;
        }
        ++best.nodes_explored;
        Length cost = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            cost += inst.distance_unchecked(current[i], current[i + 1]);
        }
        cost += inst.distance_unchecked(current[n - 1], current[0]);
        if (cost < best.cost) {
            best.cost = cost;
            best.tour = current;
        }
    } while (std::next_permutation(current.order.begin() + 1, current.order.end()));
    return best;
}

/// Subset dynamic program, O(n^2 2^n) time and O(n 2^n) memory. The returned
/// tour starts at city 1 and is oriented so its second city id is below its last.
/// nodes_explored counts DP state transitions.
inline ExactResult held_karp_optimal(const Instance& inst) {
    const std::size_t n = inst.size();
    if (n < 3 || n > kHeldKarpMaxCities) {
        throw SizeError("held_karp_optimal: supports 3.." + std::to_string(kHeldKarpMaxCities) +
                        " cities, got " + std::to_string(n));
    }
    // Cities 2..n become bits 0..m-1; city 1 is the fixed start.
    const std::size_t m = n - 1;
    const std::size_t full = (std::size_t{1} << m) - 1;
    constexpr Length inf = std::numeric_limits<Length>::infinity();
    auto city = [](std::size_t bit) { return static_cast<CityId>(bit + 2); };

    // cost[mask * m + last]: cheapest path from city 1 through `mask`, ending at `last`
    std::vector<Length> cost((full + 1) * m, inf);
    std::vector<std::uint8_t> parent((full + 1) * m, 0xff);
    ExactResult result;

    for (std::size_t k = 0; k < m; ++k) {
        cost[(std::size_t{1} << k) * m + k] = inst.distance_unchecked(1, city(k));
    }
    for (std::size_t mask = 1; mask <= full; ++mask) {
        for (std::size_t last = 0; last < m; ++last) {
            if (!(mask & (std::size_t{1} << last))) {
                continue;
            }
            const Length base = cost[mask * m + last];
            if (base == inf) {
                continue;
            }
            for (std::size_t next = 0; next < m; ++next) {
                if (mask & (std::size_t{1} << next)) {
                    continue;
                }
                ++result.nodes_explored;
                const std::size_t grown = mask | (std::size_t{1} << next);
                const Length c = base + inst.distance_unchecked(city(last), city(next));
                if (c < cost[grown * m + next]) {
                    cost[grown * m + next] = c;
                    parent[grown * m + next] = static_cast<std::uint8_t>(last);
                }
            }
        }
    }

    result.cost = inf;
    std::size_t last = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const Length c = cost[full * m + k] + inst.distance_unchecked(city(k), 1);
        if (c < result.cost) {
            result.cost = c;
            last = k;
        }
    }

    std::vector<CityId> reversed;
    reversed.reserve(n);
    std::size_t mask = full;
    while (true) {
        reversed.push_back(city(last));
        const std::uint8_t p = parent[mask * m + last];
        mask &= ~(std::size_t{1} << last);
        if (p == 0xff) {
            break;
        }
        last = p;
    }
    reversed.push_back(1);
    std::reverse(reversed.begin(), reversed.end());
    result.tour = Tour(std::move(reversed));
    if (result.tour[1] > result.tour[n - 1]) {
        std::reverse(result.tour.order.begin() + 1, result.tour.order.end());
    }
    // same summation order as tour_cost and brute_force_optimal
    result.cost = tour_cost(inst, result.tour);
    return result;
}

} // namespace tspga
