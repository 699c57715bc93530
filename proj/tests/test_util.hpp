#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "hdr/mass_function.hpp"
#include "hdr/numeric.hpp"

namespace testutil {

// Thin deterministic wrapper: mt19937_64 output is pinned by the standard,
// and the bounded draw avoids the library-specific distribution adaptors.
struct Rng {
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    std::mt19937_64 gen;

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : gen() % n; }
    std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
};

// Random normalized table with up to `max_support` atoms. Integer numerators
// keep mathematically distinct subset sums well separated; the total is
// nudged away from multiples of 2 and 5 so the test cover probabilities
// never land exactly on a subset sum.
inline std::map<std::int64_t, double> random_table(Rng& rng, std::size_t max_support) {
    const std::size_t size = 1 + rng.below(max_support);
    std::map<std::int64_t, std::int64_t> numerators;
    while (numerators.size() < size) {
        numerators.emplace(rng.range(-100, 100), 1 + static_cast<std::int64_t>(rng.below(1000)));
    }
    std::int64_t total = 0;
    for (const auto& [x, n] : numerators) total += n;
    while (total % 2 == 0 || total % 5 == 0) {
        ++numerators.begin()->second;
        ++total;
    }
    std::map<std::int64_t, double> table;
    for (const auto& [x, n] : numerators) {
        table.emplace(x, static_cast<double>(n) / static_cast<double>(total));
    }
    return table;
}

inline double region_coverage(const hdr::MassFunction& mf,
                              std::span<const std::int64_t> region) {
    hdr::KahanSum sum;
    for (std::int64_t x : region) sum.add(mf(x));
    return sum.value();
}

}  // namespace testutil
