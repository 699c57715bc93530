#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hdr/mass_function.hpp"

namespace hdr {

/// Certificate for the covering-region characterisation: minimum coverage,
/// moderation, and the highest density condition established through
/// inner/outer boundedness of a finite search set.
struct ConditionReport {
    bool min_coverage_ok = false;
    bool moderation_ok = false;
    bool inner_ok = false;
    bool outer_ok = false;
    bool highest_density_ok = false;  // inner_ok && outer_ok

    double coverage = 0.0;
    double nabla_region = 0.0;      // smallest mass in the region; +inf if empty
    double delta_complement = 0.0;  // largest mass among visited non-region elements
    double outside_mass = 0.0;      // 1 - P(search set)

    bool all_ok() const {
        return min_coverage_ok && moderation_ok && highest_density_ok;
    }
};

// Evaluates the certificate conditions for `region` against the finite
// `search_set`. The region must be a subset of the search set.
ConditionReport check_theorem1(const MassFunction& mf, std::span<const std::int64_t> region,
                               double cover_prob, std::span<const std::int64_t> search_set);

// Finite-support shortcut: sort all positive-mass support elements by
// descending mass (ties by element ascending) and take the shortest prefix
// reaching cover_prob. Requires finite declared bounds.
std::vector<std::int64_t> oracle_greedy(const MassFunction& mf, double cover_prob);

struct ExhaustiveResult {
    std::uint64_t optimal_size = 0;
    double max_coverage = 0.0;
    std::vector<std::vector<std::int64_t>> solutions;  // lexicographically sorted
};

// Literal subset enumeration of the dual problem: the minimal region size
// meeting cover_prob, the maximal coverage at that size, and every region
// achieving both. Requires at most 22 positive-mass support elements.
ExhaustiveResult oracle_exhaustive(const MassFunction& mf, double cover_prob);

// Randomized spot-check of the two size-comparison properties: subsets of
// the search set strictly smaller than the region must fall short of
// cover_prob, and subsets no larger must not exceed the region's coverage.
// Deterministic for a given seed. Returns true iff no violation was found.
bool check_lemmas(const MassFunction& mf, std::span<const std::int64_t> region,
                  double cover_prob, std::span<const std::int64_t> search_set,
                  std::uint64_t trials, std::uint64_t seed);

}  // namespace hdr
