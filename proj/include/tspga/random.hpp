#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

#include "errors.hpp"

namespace tspga {

/// Seeded pseudo-random stream used by every randomized operation.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The standard distributions are implementation-defined, so the
/// integer and real draws are derived from raw engine output here to keep
/// results identical across standard libraries.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) {
            throw DomainError("uniform_int: empty range");
        }
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo);
        if (span == UINT64_MAX) {
            return static_cast<std::int64_t>(engine_());
        }
        const std::uint64_t range = span + 1;
        // reject the top partial bucket so every value is equally likely
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range + 1) % range;
        std::uint64_t x = engine_();
        while (x > limit) {
            x = engine_();
        }
        return lo + static_cast<std::int64_t>(x % range);
    }

    /// Uniform index in [0, n).
    std::size_t index(std::size_t n) {
        if (n == 0) {
            throw DomainError("index: empty range");
        }
        return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
    }

    /// Uniform real in [0, 1) with 53 bits of resolution.
    double uniform_real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::span<T> values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::swap(values[i - 1], values[index(i)]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace tspga
