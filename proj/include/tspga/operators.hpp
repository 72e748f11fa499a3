#pragma once

/// @file operators.hpp
/// @brief Roulette selection, ordered crossover and the six permutation mutations.
///
/// Every operator has a deterministic core taking explicit positions and a
/// randomized wrapper drawing those positions from a RandomStream. Positions
/// are 0-based throughout; tours hold 1-based city ids.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "random.hpp"
#include "tsp_core.hpp"

namespace tspga {

enum class MutationKind { Twors, Cim, Rsm, Throas, Thrors, Psm };

inline constexpr std::array<MutationKind, 6> kAllMutations = {
    MutationKind::Twors, MutationKind::Cim,    MutationKind::Rsm,
    MutationKind::Throas, MutationKind::Thrors, MutationKind::Psm,
};

/// Stable lowercase identifier used on the command line and in config files.
inline std::string_view to_string(MutationKind k) {
    switch (k) {
    case MutationKind::Twors:
        return "twors";
    case MutationKind::Cim:
        return "cim";
    case MutationKind::Rsm:
        return "rsm";
    case MutationKind::Throas:
        return "throas";
    case MutationKind::Thrors:
        return "thrors";
    case MutationKind::Psm:
        return "psm";
    }
    return "?";
}

inline std::optional<MutationKind> mutation_from_string(std::string_view s) {
    for (MutationKind k : kAllMutations) {
        if (to_string(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Selection
// ---------------------------------------------------------------------------

/// Roulette probabilities for a minimization population:
/// P_i = (1 - f_i / sum f) / (N - 1). Lower cost gets a strictly higher weight
/// and the weights sum to one.
inline std::vector<double> selection_weights(std::span<const Length> costs) {
    const std::size_t n = costs.size();
    if (n < 2) {
        throw DomainError("selection_weights: need at least 2 individuals, got " + std::to_string(n));
    }
    double total = 0.0;
    for (const Length c : costs) {
        if (!(c > 0.0)) {
            throw DomainError("selection_weights: costs must be positive");
        }
        total += c;
    }
    std::vector<double> w(n);
    const double scale = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = (1.0 - costs[i] / total) * scale;
    }
    return w;
}

/// Smallest index whose cumulative weight strictly exceeds r, r in [0, 1).
inline std::size_t roulette_pick(std::span<const double> weights, double r) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw DomainError("roulette_pick: draw must lie in [0, 1)");
    }
    if (weights.empty()) {
        throw DomainError("roulette_pick: no weights");
    }
    double cumulative = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cumulative += weights[i];
        if (cumulative > r) {
            return i;
        }
    }
    // rounding left the total just below r; fall back to the last weighted slot
    for (std::size_t i = weights.size(); i-- > 0;) {
        if (weights[i] > 0.0) {
            return i;
        }
    }
    return weights.size() - 1;
}

// ---------------------------------------------------------------------------
// Ordered crossover
// ---------------------------------------------------------------------------

/// Inclusive 0-based cut positions, first <= second < n.
struct CutPoints {
    std::size_t first = 0;
    std::size_t second = 0;
};

namespace detail {

// Child keeps `donor`'s segment at [cuts.first, cuts.second]; the other
// positions receive `base`'s remaining cities in base's cyclic order starting
// after cuts.second, written from cuts.second + 1 onwards with wrap-around.
inline Tour ox_child(const Tour& base, const Tour& donor, CutPoints cuts) {
    const std::size_t n = base.size();
    Tour child;
    child.order.assign(n, 0);
    std::vector<bool> in_segment(n + 1, false);
    for (std::size_t p = cuts.first; p <= cuts.second; ++p) {
        child[p] = donor[p];
        in_segment[static_cast<std::size_t>(donor[p])] = true;
    }
    const std::size_t segment = cuts.second - cuts.first + 1;
    std::size_t write = (cuts.second + 1) % n;
    for (std::size_t k = 0; k < n && segment < n; ++k) {
        const CityId c = base[(cuts.second + 1 + k) % n];
        if (in_segment[static_cast<std::size_t>(c)]) {
            continue;
        }
        child[write] = c;
        write = (write + 1) % n;
    }
    return child;
}

} // namespace detail

/// Ordered crossover (OX). child1 carries p2's segment, child2 carries p1's.
inline std::pair<Tour, Tour> ox_crossover(const Tour& p1, const Tour& p2, CutPoints cuts) {
    const std::size_t n = p1.size();
    if (p2.size() != n) {
        throw DomainError("ox_crossover: parents differ in length");
    }
    if (cuts.first > cuts.second || cuts.second >= n) {
        throw DomainError("ox_crossover: invalid cut points");
    }
    if (validate_tour(p1, n) || validate_tour(p2, n)) {
        throw DomainError("ox_crossover: parents must be permutations of the same city set");
    }
    return {detail::ox_child(p1, p2, cuts), detail::ox_child(p2, p1, cuts)};
}

/// Cut points drawn uniformly over all pairs first <= second.
inline CutPoints random_cuts(std::size_t n, RandomStream& rng) {
    // two distinct boundaries among the n + 1 gaps around the genes
    std::size_t u = rng.index(n + 1);
    std::size_t v = rng.index(n);
    if (v >= u) {
        ++v;
    }
    if (u > v) {
        std::swap(u, v);
    }
    return {u, v - 1};
}

// ---------------------------------------------------------------------------
// Mutation cores
// ---------------------------------------------------------------------------

namespace detail {

inline void require_position(std::size_t pos, std::size_t n, const char* op) {
    if (pos >= n) {
        throw DomainError(std::string(op) + ": position " + std::to_string(pos) + " out of range for " +
                          std::to_string(n) + " genes");
    }
}

} // namespace detail

/// Twors: swap the genes at positions i and j.
inline Tour mutate_twors(Tour t, std::size_t i, std::size_t j) {
    detail::require_position(i, t.size(), "twors");
    detail::require_position(j, t.size(), "twors");
    std::swap(t[i], t[j]);
    return t;
}

/// CIM: split after position `cut` (first section is [0, cut), second is
/// [cut, n)) and reverse both sections in place. 1 <= cut <= n - 1.
inline Tour mutate_cim(Tour t, std::size_t cut) {
    if (cut < 1 || cut >= t.size()) {
        throw DomainError("cim: cut must lie in 1.." + std::to_string(t.size() == 0 ? 0 : t.size() - 1));
    }
    std::reverse(t.order.begin(), t.order.begin() + static_cast<std::ptrdiff_t>(cut));
    std::reverse(t.order.begin() + static_cast<std::ptrdiff_t>(cut), t.order.end());
    return t;
}

/// RSM: reverse positions i..j inclusive, i < j.
inline Tour mutate_rsm(Tour t, std::size_t i, std::size_t j) {
    detail::require_position(j, t.size(), "rsm");
    if (i >= j) {
        throw DomainError("rsm: need i < j");
    }
    std::reverse(t.order.begin() + static_cast<std::ptrdiff_t>(i),
                 t.order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    return t;
}

/// Throas: genes (a, b, c) at positions i, i+1, i+2 become (c, a, b).
inline Tour mutate_throas(Tour t, std::size_t i) {
    if (t.size() < 3) {
        throw DomainError("throas: need at least 3 genes");
    }
    if (i + 2 >= t.size()) {
        throw DomainError("throas: start " + std::to_string(i) + " leaves fewer than 3 genes");
    }
    std::rotate(t.order.begin() + static_cast<std::ptrdiff_t>(i), t.order.begin() + static_cast<std::ptrdiff_t>(i) + 2,
                t.order.begin() + static_cast<std::ptrdiff_t>(i) + 3);
    return t;
}

/// Thrors: for i < j < l, the gene at i moves to j, the gene at j moves to l
/// and the gene at l moves to i.
inline Tour mutate_thrors(Tour t, std::size_t i, std::size_t j, std::size_t l) {
    if (t.size() < 3) {
        throw DomainError("thrors: need at least 3 genes");
    }
    detail::require_position(l, t.size(), "thrors");
    if (!(i < j && j < l)) {
        throw DomainError("thrors: need i < j < l");
    }
    const CityId at_i = t[i];
    const CityId at_j = t[j];
    t[j] = at_i;
    t[i] = t[l];
    t[l] = at_j;
    return t;
}

/// One step of the partial shuffle scan: whether gene i is swapped, and with which position.
struct PsmDecision {
    bool apply = false;
    std::size_t partner = 0;
};

/// PSM: scanning i = 0..n-1, swap positions i and decisions[i].partner
/// whenever decisions[i].apply is set. Swaps compound in scan order.
inline Tour mutate_psm(Tour t, std::span<const PsmDecision> decisions) {
    if (decisions.size() != t.size()) {
        throw DomainError("psm: need one decision per gene");
    }
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        if (!decisions[i].apply) {
            continue;
        }
        detail::require_position(decisions[i].partner, t.size(), "psm");
        std::swap(t[i], t[decisions[i].partner]);
    }
    return t;
}

// ---------------------------------------------------------------------------
// Randomized wrappers
// ---------------------------------------------------------------------------

namespace detail {

inline void require_mutable(MutationKind kind, std::size_t n) {
    const std::size_t need = (kind == MutationKind::Throas || kind == MutationKind::Thrors) ? 3
                             : (kind == MutationKind::Cim || kind == MutationKind::Rsm) ? 2
                                                                                         : 1;
    if (n < need) {
        throw DomainError(std::string(to_string(kind)) + ": need at least " + std::to_string(need) + " genes, got " +
                          std::to_string(n));
    }
}

inline std::vector<PsmDecision> draw_psm(std::size_t n, double gene_prob, RandomStream& rng) {
    std::vector<PsmDecision> decisions(n);
    for (auto& d : decisions) {
        if (rng.uniform_real() < gene_prob) {
            d.apply = true;
            d.partner = rng.index(n);
        }
    }
    return decisions;
}

} // namespace detail

/// Applies one structural move of `kind` with parameters drawn uniformly from
/// the operator's domain. For PSM, `psm_gene_prob` is the per-gene swap
/// probability of the scan.
inline Tour mutate_once(MutationKind kind, Tour t, RandomStream& rng, double psm_gene_prob) {
    const std::size_t n = t.size();
    detail::require_mutable(kind, n);
    switch (kind) {
    case MutationKind::Twors: {
        const std::size_t i = rng.index(n);
        const std::size_t j = rng.index(n);
        return mutate_twors(std::move(t), i, j);
    }
    case MutationKind::Cim:
        return mutate_cim(std::move(t), 1 + rng.index(n - 1));
    case MutationKind::Rsm: {
        std::size_t i = rng.index(n);
        std::size_t j = rng.index(n - 1);
        if (j >= i) {
            ++j;
        }
        if (i > j) {
            std::swap(i, j);
        }
        return mutate_rsm(std::move(t), i, j);
    }
    case MutationKind::Throas:
        return mutate_throas(std::move(t), rng.index(n - 2));
    case MutationKind::Thrors: {
        std::array<std::size_t, 3> p{};
        do {
            p = {rng.index(n), rng.index(n), rng.index(n)};
        } while (p[0] == p[1] || p[1] == p[2] || p[0] == p[2]);
        std::sort(p.begin(), p.end());
        return mutate_thrors(std::move(t), p[0], p[1], p[2]);
    }
    case MutationKind::Psm: {
        const auto decisions = detail::draw_psm(n, psm_gene_prob, rng);
        return mutate_psm(std::move(t), decisions);
    }
    }
    return t;
}

/// Mutation as used inside the generational loop. PSM runs its per-gene scan
/// with probability p_m per gene; every other kind is applied once with
/// probability p_m and otherwise leaves the tour unchanged.
inline Tour apply_mutation(MutationKind kind, Tour t, double p_m, RandomStream& rng) {
    if (!(p_m >= 0.0 && p_m <= 1.0)) {
        throw DomainError("apply_mutation: probability must lie in [0, 1]");
    }
    detail::require_mutable(kind, t.size());
    if (kind == MutationKind::Psm) {
        return mutate_once(kind, std::move(t), rng, p_m);
    }
    if (rng.uniform_real() < p_m) {
        return mutate_once(kind, std::move(t), rng, p_m);
    }
    return t;
}

} // namespace tspga
