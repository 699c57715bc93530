#include "hdr/solver.hpp"

#include <algorithm>
#include <cmath>

#include "hdr/errors.hpp"

namespace hdr {
namespace {

constexpr std::uint64_t kOutProbRefreshPeriod = 10'000;

// Truncate to the shortest prefix whose mass sum reaches cover_prob,
// feeding the dropped masses into max_outside_mass.
void prune_to_cover(CandidateRegion& candidate, double cover_prob, double& max_outside_mass) {
    auto& entries = candidate.entries;
    KahanSum prefix;
    std::size_t keep = entries.size();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        prefix.add(entries[i].mass);
        if (prefix.value() >= cover_prob) {
            keep = i + 1;
            break;
        }
    }
    for (std::size_t j = keep; j < entries.size(); ++j) {
        max_outside_mass = std::max(max_outside_mass, entries[j].mass);
    }
    entries.resize(keep);
}

void check_invariants(const SolverState& state) {
    const double sum = state.candidate.mass_sum();
    if (sum < state.cover_prob) {
        throw Error("solver invariant violated: candidate coverage " + std::to_string(sum) +
                    " below cover_prob " + std::to_string(state.cover_prob));
    }
    if (!state.candidate.entries.empty() &&
        sum - state.candidate.min_mass() >= state.cover_prob) {
        throw Error("solver invariant violated: candidate is not moderate");
    }
    if (state.min_prob < state.max_outside_mass) {
        throw Error("solver invariant violated: inner-boundedness does not hold");
    }
}

std::vector<std::int64_t> ties_with_min(const MassFunction& mf, const SequenceFunction& seq,
                                        std::uint64_t search_set_size, double min_prob,
                                        const std::vector<std::int64_t>& sorted_region) {
    std::vector<std::int64_t> ties;
    if (sorted_region.empty()) return ties;
    for (std::uint64_t i = 1; i <= search_set_size; ++i) {
        const auto elem = seq.at(i);
        if (!elem) break;
        if (masses_tie(mf(*elem), min_prob)) ties.push_back(*elem);
    }
    std::sort(ties.begin(), ties.end());
    return ties;
}

HdrResult finalize(const SolverState& state, const MassFunction& mf,
                   const SequenceFunction& seq) {
    HdrResult result;
    result.cover_prob = state.cover_prob;
    result.coverage = state.candidate.mass_sum();
    result.region.reserve(state.candidate.entries.size());
    for (const auto& e : state.candidate.entries) result.region.push_back(e.element);
    std::sort(result.region.begin(), result.region.end());
    result.region_size = result.region.size();
    result.search_set_size = state.visited_count();
    result.iterations = state.iter;
    result.label = mf.label();

    result.variation_set =
        ties_with_min(mf, seq, state.visited_count(), state.min_prob, result.region);
    for (std::int64_t x : result.variation_set) {
        if (std::binary_search(result.region.begin(), result.region.end(), x)) {
            ++result.required_from_variation;
        }
    }
    return result;
}

// Coverage probability one cannot be confirmed by a finite search; the
// region is the positive-mass part of the visited prefix, with a warning
// whenever the prefix may not cover the whole support.
HdrResult full_support_region(const MassFunction& mf, const SequenceFunction& seq,
                              const SolverOptions& options) {
    const auto support_size = seq.size();
    const bool complete = support_size && *support_size <= options.iter_cap;
    const std::uint64_t walk =
        complete ? *support_size : options.iter_cap;

    HdrResult result;
    result.cover_prob = 1.0;
    result.label = mf.label();
    KahanSum coverage;
    double min_mass = std::numeric_limits<double>::infinity();
    std::uint64_t visited = 0;
    for (std::uint64_t i = 1; i <= walk; ++i) {
        const auto elem = seq.at(i);
        if (!elem) break;
        ++visited;
        const double m = mf(*elem);
        if (m > 0.0) {
            result.region.push_back(*elem);
            coverage.add(m);
            min_mass = std::min(min_mass, m);
        }
    }
    std::sort(result.region.begin(), result.region.end());
    result.coverage = coverage.value();
    result.region_size = result.region.size();
    result.search_set_size = visited;
    if (!complete) {
        result.warning =
            "cover_prob = 1 with unbounded search: returned the positive-mass elements "
            "among the first " +
            std::to_string(visited) +
            " sequence elements, which might not be the smallest covering region";
    }
    // Every visited zero-mass element is outside the region, so ties with
    // the minimum can only come from the region itself.
    for (std::int64_t x : result.region) {
        if (masses_tie(mf(x), min_mass)) result.variation_set.push_back(x);
    }
    result.required_from_variation = result.variation_set.size();
    return result;
}

}  // namespace

SolverState initial_candidate(const MassFunction& mf, const SequenceFunction& seq,
                              double cover_prob, const SolverOptions& options) {
    if (!(cover_prob >= 0.0 && cover_prob < 1.0)) {
        throw PreconditionError("initial_candidate: cover_prob must lie in [0, 1)");
    }
    SolverState state;
    state.cover_prob = cover_prob;

    // K-scan: visit elements until the cumulative mass reaches cover_prob.
    while (state.visited_mass.value() < cover_prob) {
        const std::uint64_t i = state.initial_size + 1;
        if (i > options.iter_cap) {
            throw TerminationError(options.iter_cap,
                                   std::max(0.0, 1.0 - state.visited_mass.value()),
                                   std::numeric_limits<double>::infinity());
        }
        const auto elem = seq.at(i);
        if (!elem) {
            throw ImproperPmfError(
                "sequence exhausted at cumulative mass " +
                std::to_string(state.visited_mass.value()) + " before reaching cover_prob " +
                std::to_string(cover_prob));
        }
        state.initial_size = i;
        const double m = mf(*elem);
        state.visited_mass.add(m);
        if (m > 0.0) state.candidate.entries.push_back({*elem, m});
    }

    std::stable_sort(state.candidate.entries.begin(), state.candidate.entries.end(),
                     [](const CandidateEntry& a, const CandidateEntry& b) {
                         return a.mass > b.mass;
                     });
    prune_to_cover(state.candidate, cover_prob, state.max_outside_mass);
    state.min_prob = state.candidate.min_mass();
    state.out_prob = std::max(0.0, 1.0 - state.visited_mass.value());
    state.iter = 0;
    state.next_index = state.initial_size + 1;
    if (options.debug_invariants) check_invariants(state);
    return state;
}

void step(SolverState& state, const MassFunction& mf, const SequenceFunction& seq,
          const SolverOptions& options) {
    if (state.exhausted) return;
    const auto elem = seq.at(state.next_index);
    if (!elem) {
        // Past the end of a finite support nothing remains outside.
        state.exhausted = true;
        state.out_prob = 0.0;
        return;
    }
    const double new_prob = mf(*elem);
    state.visited_mass.add(new_prob);
    state.out_prob = std::max(0.0, state.out_prob - new_prob);
    ++state.iter;
    ++state.next_index;

    if (new_prob > state.min_prob) {
        auto& entries = state.candidate.entries;
        auto pos = std::upper_bound(entries.begin(), entries.end(), new_prob,
                                    [](double p, const CandidateEntry& e) {
                                        return p > e.mass;
                                    });
        entries.insert(pos, {*elem, new_prob});
        prune_to_cover(state.candidate, state.cover_prob, state.max_outside_mass);
        state.min_prob = state.candidate.min_mass();
    } else {
        state.max_outside_mass = std::max(state.max_outside_mass, new_prob);
    }

    if (options.debug_invariants) {
        check_invariants(state);
        if (state.iter % kOutProbRefreshPeriod == 0) {
            state.out_prob = std::max(0.0, 1.0 - state.visited_mass.value());
        }
    }
}

HdrResult compute_cscr(const MassFunction& mf, double cover_prob,
                       const std::optional<SequenceFunction>& seq,
                       const SolverOptions& options) {
    if (!(cover_prob >= 0.0 && cover_prob <= 1.0)) {
        throw PreconditionError("compute_cscr: cover_prob must lie in [0, 1]");
    }
    const SequenceFunction sequence = seq ? *seq : make_sequence(mf.bounds());
    if (cover_prob == 1.0) return full_support_region(mf, sequence, options);

    SolverState state = initial_candidate(mf, sequence, cover_prob, options);
    while (!state.done()) {
        if (state.visited_count() >= options.iter_cap) {
            throw TerminationError(options.iter_cap, state.out_prob, state.min_prob);
        }
        step(state, mf, sequence, options);
    }
    // The loop can stop with the unvisited mass still equal to the region
    // minimum, in which case one tie may hide just beyond the search set.
    // Walk on until the remainder drops strictly below the minimum so the
    // variation set is complete.
    while (!state.exhausted && state.out_prob > 0.0 &&
           state.out_prob >=
               state.min_prob - kMassTieTol * std::max(1.0, state.min_prob) &&
           state.visited_count() < options.iter_cap) {
        step(state, mf, sequence, options);
    }
    return finalize(state, mf, sequence);
}

std::vector<std::int64_t> variation_set(const HdrResult& result, const MassFunction& mf,
                                        const SequenceFunction& seq) {
    if (result.region.empty()) {
        throw PreconditionError("variation_set: region must be non-empty");
    }
    double min_mass = std::numeric_limits<double>::infinity();
    for (std::int64_t x : result.region) min_mass = std::min(min_mass, mf(x));
    return ties_with_min(mf, seq, result.search_set_size, min_mass, result.region);
}

std::vector<std::vector<std::int64_t>> enumerate_canonical(const HdrResult& result,
                                                           std::uint64_t cap) {
    const std::uint64_t n = result.variation_set.size();
    const std::uint64_t r = result.required_from_variation;

    // C(n, r), bailing out as soon as the cap is exceeded.
    std::uint64_t count = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        count = count * (n - r + i) / i;
        if (count > cap) {
            throw EnumerationTooLargeError("number of canonical solutions exceeds cap " +
                                           std::to_string(cap));
        }
    }

    std::vector<std::int64_t> base;
    for (std::int64_t x : result.region) {
        if (!std::binary_search(result.variation_set.begin(), result.variation_set.end(), x)) {
            base.push_back(x);
        }
    }

    std::vector<std::vector<std::int64_t>> solutions;
    solutions.reserve(count);
    std::vector<std::uint64_t> combo(r);
    for (std::uint64_t i = 0; i < r; ++i) combo[i] = i;
    while (true) {
        std::vector<std::int64_t> region = base;
        for (std::uint64_t idx : combo) region.push_back(result.variation_set[idx]);
        std::sort(region.begin(), region.end());
        solutions.push_back(std::move(region));

        // Next lexicographic r-combination of {0, ..., n-1}.
        std::uint64_t k = r;
        while (k > 0 && combo[k - 1] == n - r + k - 1) --k;
        if (k == 0) break;
        ++combo[k - 1];
        for (std::uint64_t j = k; j < r; ++j) combo[j] = combo[j - 1] + 1;
    }
    return solutions;
}

}  // namespace hdr
