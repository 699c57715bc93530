#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hdr/mass_function.hpp"
#include "hdr/numeric.hpp"
#include "hdr/sequence.hpp"

namespace hdr {

struct CandidateEntry {
    std::int64_t element;
    double mass;
};

/// Working region during the search: (element, mass) pairs in descending
/// mass order, ties broken by earlier sequence index. Holds the shortest
/// prefix of the sorted visited elements whose mass sum reaches the
/// required coverage.
struct CandidateRegion {
    std::vector<CandidateEntry> entries;

    double mass_sum() const {
        KahanSum s;
        for (const auto& e : entries) s.add(e.mass);
        return s.value();
    }
    // Smallest mass in the region; +inf for an empty region.
    double min_mass() const {
        return entries.empty() ? std::numeric_limits<double>::infinity()
                               : entries.back().mass;
    }
};

struct SolverOptions {
    std::uint64_t iter_cap = 10'000'000;  // max visited elements
    bool debug_invariants = false;        // per-step invariant checks
};

struct SolverState {
    CandidateRegion candidate;
    double cover_prob = 0.0;
    double min_prob = std::numeric_limits<double>::infinity();
    double out_prob = 1.0;          // mass outside the visited set, clamped >= 0
    std::uint64_t initial_size = 0;  // K
    std::uint64_t iter = 0;          // iterations beyond K
    std::uint64_t next_index = 1;    // = K + iter + 1
    bool exhausted = false;          // finite sequence ran out

    KahanSum visited_mass;           // compensated sum over the search set
    double max_outside_mass = 0.0;   // largest visited mass not in the candidate

    std::uint64_t visited_count() const { return initial_size + iter; }
    bool done() const { return !(min_prob < out_prob); }
};

struct HdrResult {
    std::vector<std::int64_t> region;        // sorted ascending
    double coverage = 0.0;
    double cover_prob = 0.0;
    std::uint64_t region_size = 0;
    std::uint64_t search_set_size = 0;       // K + final ITER
    std::vector<std::int64_t> variation_set; // visited elements tied with the region minimum
    std::uint64_t required_from_variation = 0;
    std::uint64_t iterations = 0;            // final ITER
    std::optional<std::string> warning;
    std::string label;
};

// Visits sequence elements until their cumulative mass reaches cover_prob,
// then keeps the positive-mass ones, sorted descending and pruned to the
// shortest covering prefix. Requires cover_prob < 1.
SolverState initial_candidate(const MassFunction& mf, const SequenceFunction& seq,
                              double cover_prob, const SolverOptions& options = {});

// One iteration: visit the next sequence element, subtract its mass from
// out_prob, and insert it into the candidate (displacing and pruning) when
// it strictly beats the current minimum.
void step(SolverState& state, const MassFunction& mf, const SequenceFunction& seq,
          const SolverOptions& options = {});

// Full computation of the canonical smallest covering region.
HdrResult compute_cscr(const MassFunction& mf, double cover_prob,
                       const std::optional<SequenceFunction>& seq = std::nullopt,
                       const SolverOptions& options = {});

// Recomputes the variation set of a solver result: every element of the
// visited search set whose mass ties with the smallest in-region mass.
// Requires a non-empty region.
std::vector<std::int64_t> variation_set(const HdrResult& result, const MassFunction& mf,
                                        const SequenceFunction& seq);

// All canonical solutions, generated by swapping r-subsets of the variation
// set into the fixed part of the region. Throws EnumerationTooLargeError
// when C(n, r) exceeds the cap.
std::vector<std::vector<std::int64_t>> enumerate_canonical(const HdrResult& result,
                                                           std::uint64_t cap = 10'000);

}  // namespace hdr
