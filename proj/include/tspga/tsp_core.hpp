#pragma once

/// @file tsp_core.hpp
/// @brief Planar TSP instances, distance metrics, tours and their cost.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace tspga {

/// 1-based city identifier, as used in TSPLIB files and tour listings.
using CityId = std::int32_t;

/// Tour length. Under EuclideanRounded every edge is an integer, so sums are
/// exact in a double for any realistic instance.
using Length = double;

enum class Metric {
    EuclideanReal,    ///< plain Euclidean distance
    EuclideanRounded, ///< Euclidean distance rounded to nearest integer, ties away from zero (TSPLIB EUC_2D)
};

inline const char* to_string(Metric m) {
    return m == Metric::EuclideanReal ? "real" : "rounded";
}

inline std::optional<Metric> metric_from_string(const std::string& s) {
    if (s == "real") {
        return Metric::EuclideanReal;
    }
    if (s == "rounded") {
        return Metric::EuclideanRounded;
    }
    return std::nullopt;
}

struct City {
    CityId id = 0;
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const City&, const City&) = default;
};

/// A tour in path representation: the visiting order of city ids 1..n.
/// The closing edge from the last city back to the first is implicit.
struct Tour {
    std::vector<CityId> order;

    Tour() = default;
    explicit Tour(std::vector<CityId> o) : order(std::move(o)) {}

    /// The identity tour 1, 2, ..., n.
    static Tour identity(std::size_t n) {
        Tour t;
        t.order.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            t.order[i] = static_cast<CityId>(i + 1);
        }
        return t;
    }

    std::size_t size() const noexcept { return order.size(); }
    CityId operator[](std::size_t pos) const { return order[pos]; }
    CityId& operator[](std::size_t pos) { return order[pos]; }

    friend bool operator==(const Tour&, const Tour&) = default;
    friend auto operator<=>(const Tour&, const Tour&) = default;
};

/// Returns std::nullopt when `t` is a permutation of 1..n, otherwise a short
/// description of the first problem found ("duplicate 1", "missing 3", ...).
inline std::optional<std::string> validate_tour(const Tour& t, std::size_t n) {
    std::vector<bool> seen(n + 1, false);
    for (const CityId c : t.order) {
        if (c < 1 || static_cast<std::size_t>(c) > n) {
            return "out of range " + std::to_string(c);
        }
        if (seen[static_cast<std::size_t>(c)]) {
            return "duplicate " + std::to_string(c);
        }
        seen[static_cast<std::size_t>(c)] = true;
    }
    for (std::size_t c = 1; c <= n; ++c) {
        if (!seen[c]) {
            return "missing " + std::to_string(c);
        }
    }
    return std::nullopt;
}

/// Number of distinct undirected closed tours through n cities, (n-1)!/2.
inline std::uint64_t tour_space_size(std::size_t n) {
    if (n < 3) {
        throw DomainError("tour_space_size: need at least 3 cities, got " + std::to_string(n));
    }
    // (n-1)!/2 = 3 * 4 * ... * (n-1)
    std::uint64_t count = 1;
    for (std::uint64_t k = 3; k < n; ++k) {
        if (count > UINT64_MAX / k) {
            throw DomainError("tour_space_size: overflow for n = " + std::to_string(n));
        }
        count *= k;
    }
    return count;
}

/// Immutable set of planar cities with a fixed distance metric.
///
/// For n <= kTableLimit the full distance matrix is built at construction;
/// larger instances compute distances on demand.
class Instance {
  public:
    static constexpr std::size_t kTableLimit = 2048;

    /// Cities must carry ids 1..n in order.
    Instance(std::string name, std::vector<City> cities, Metric metric)
        : name_(std::move(name)), cities_(std::move(cities)), metric_(metric) {
        if (cities_.empty()) {
            throw DomainError("instance must contain at least one city");
        }
        for (std::size_t i = 0; i < cities_.size(); ++i) {
            if (cities_[i].id != static_cast<CityId>(i + 1)) {
                throw DomainError("city ids must be 1..n in order; position " + std::to_string(i + 1) +
                                  " has id " + std::to_string(cities_[i].id));
            }
            if (!std::isfinite(cities_[i].x) || !std::isfinite(cities_[i].y)) {
                throw DomainError("city " + std::to_string(i + 1) + " has a non-finite coordinate");
            }
        }
        build_table();
    }

    /// Convenience constructor assigning ids 1..n to the points in order.
    static Instance from_points(std::string name, const std::vector<std::pair<double, double>>& points,
                                Metric metric = Metric::EuclideanReal) {
        std::vector<City> cities;
        cities.reserve(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            cities.push_back({static_cast<CityId>(i + 1), points[i].first, points[i].second});
        }
        return Instance(std::move(name), std::move(cities), metric);
    }

    /// Same cities under another metric.
    Instance with_metric(Metric metric) const { return Instance(name_, cities_, metric); }

    const std::string& name() const noexcept { return name_; }
    const std::vector<City>& cities() const noexcept { return cities_; }
    Metric metric() const noexcept { return metric_; }
    std::size_t size() const noexcept { return cities_.size(); }

    const City& city(CityId id) const {
        check_id(id);
        return cities_[static_cast<std::size_t>(id - 1)];
    }

    /// Distance between cities i and j (1-based ids).
    Length distance(CityId i, CityId j) const {
        check_id(i);
        check_id(j);
        return distance_unchecked(i, j);
    }

    /// Distance without the range check; callers guarantee valid ids.
    Length distance_unchecked(CityId i, CityId j) const noexcept {
        const auto a = static_cast<std::size_t>(i - 1);
        const auto b = static_cast<std::size_t>(j - 1);
        if (!table_.empty()) {
            return table_[a * cities_.size() + b];
        }
        return compute(a, b);
    }

    friend bool operator==(const Instance& lhs, const Instance& rhs) {
        return lhs.name_ == rhs.name_ && lhs.metric_ == rhs.metric_ && lhs.cities_ == rhs.cities_;
    }

  private:
    void check_id(CityId id) const {
        if (id < 1 || static_cast<std::size_t>(id) > cities_.size()) {
            throw DomainError("city index " + std::to_string(id) + " out of range 1.." +
                              std::to_string(cities_.size()));
        }
    }

    Length compute(std::size_t a, std::size_t b) const noexcept {
        if (a == b) {
            return 0.0;
        }
        const double dx = cities_[a].x - cities_[b].x;
        const double dy = cities_[a].y - cities_[b].y;
        const double d = std::sqrt(dx * dx + dy * dy);
        return metric_ == Metric::EuclideanRounded ? std::round(d) : d;
    }

    void build_table() {
        const std::size_t n = cities_.size();
        if (n > kTableLimit) {
            return;
        }
        table_.assign(n * n, 0.0);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                table_[a * n + b] = table_[b * n + a] = compute(a, b);
            }
        }
    }

    std::string name_;
    std::vector<City> cities_;
    Metric metric_;
    std::vector<Length> table_; // row-major n*n, empty when n > kTableLimit
};

/// Closed-tour length: consecutive edges plus the edge from the last city back to the first.
inline Length tour_cost(const Instance& inst, const Tour& t) {
    if (auto violation = validate_tour(t, inst.size())) {
        throw DomainError("invalid tour: " + *violation);
    }
    const std::size_t n = t.size();
    Length total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        total += inst.distance_unchecked(t[i], t[i + 1]);
    }
    total += inst.distance_unchecked(t[n - 1], t[0]);
    return total;
}

} // namespace tspga
