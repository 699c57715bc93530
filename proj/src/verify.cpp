#include "hdr/verify.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <limits>
#include <random>
#include <unordered_set>

#include "hdr/errors.hpp"
#include "hdr/numeric.hpp"

namespace hdr {
namespace {

constexpr std::size_t kExhaustiveSupportCap = 22;
constexpr std::size_t kGreedyRangeCap = 100'000'000;

// Positive-mass support of a finite-bounds mass function, ascending.
std::vector<std::pair<std::int64_t, double>> finite_support(const MassFunction& mf,
                                                            std::size_t range_cap) {
    const auto& bounds = mf.bounds();
    if (!bounds.finite()) {
        throw PreconditionError("finite declared support bounds required");
    }
    const auto range =
        static_cast<std::uint64_t>(*bounds.max - *bounds.min) + 1;
    if (range > range_cap) {
        throw PreconditionError("declared support range too large to enumerate");
    }
    std::vector<std::pair<std::int64_t, double>> support;
    for (std::int64_t x = *bounds.min;; ++x) {
        const double m = mf(x);
        if (m > 0.0) support.emplace_back(x, m);
        if (x == *bounds.max) break;
    }
    return support;
}

// Deterministic bounded draw; the engine is standard-pinned, so results
// reproduce across platforms.
std::uint64_t draw_below(std::mt19937_64& gen, std::uint64_t n) {
    return n == 0 ? 0 : gen() % n;
}

}  // namespace

ConditionReport check_theorem1(const MassFunction& mf, std::span<const std::int64_t> region,
                               double cover_prob, std::span<const std::int64_t> search_set) {
    std::unordered_set<std::int64_t> in_search(search_set.begin(), search_set.end());
    std::unordered_set<std::int64_t> in_region(region.begin(), region.end());
    for (std::int64_t x : region) {
        if (!in_search.count(x)) {
            throw PreconditionError("check_theorem1: region element " + std::to_string(x) +
                                    " is not in the search set");
        }
    }

    ConditionReport report;
    KahanSum coverage;
    report.nabla_region = std::numeric_limits<double>::infinity();
    for (std::int64_t x : region) {
        const double m = mf(x);
        coverage.add(m);
        report.nabla_region = std::min(report.nabla_region, m);
    }
    report.coverage = coverage.value();

    KahanSum search_mass;
    report.delta_complement = 0.0;
    for (std::int64_t x : search_set) {
        const double m = mf(x);
        search_mass.add(m);
        if (!in_region.count(x)) {
            report.delta_complement = std::max(report.delta_complement, m);
        }
    }
    report.outside_mass = 1.0 - search_mass.value();

    report.min_coverage_ok = report.coverage >= cover_prob;
    report.moderation_ok =
        region.empty() || (report.coverage - report.nabla_region < cover_prob);
    report.inner_ok = report.nabla_region >= report.delta_complement;
    report.outer_ok = report.outside_mass <= report.nabla_region;
    report.highest_density_ok = report.inner_ok && report.outer_ok;
    return report;
}

std::vector<std::int64_t> oracle_greedy(const MassFunction& mf, double cover_prob) {
    auto support = finite_support(mf, kGreedyRangeCap);
    std::sort(support.begin(), support.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    std::vector<std::int64_t> region;
    KahanSum sum;
    for (const auto& [x, m] : support) {
        if (sum.value() >= cover_prob) break;
        region.push_back(x);
        sum.add(m);
    }
    if (sum.value() < cover_prob) {
        throw ImproperPmfError("total mass " + std::to_string(sum.value()) +
                               " below cover_prob " + std::to_string(cover_prob));
    }
    std::sort(region.begin(), region.end());
    return region;
}

ExhaustiveResult oracle_exhaustive(const MassFunction& mf, double cover_prob) {
    const auto support = finite_support(mf, kGreedyRangeCap);
    const std::size_t m = support.size();
    if (m > kExhaustiveSupportCap) {
        throw PreconditionError("oracle_exhaustive: support size " + std::to_string(m) +
                                " exceeds cap " + std::to_string(kExhaustiveSupportCap));
    }

    const std::uint32_t num_masks = 1u << m;
    std::vector<double> sums(num_masks, 0.0);
    for (std::uint32_t mask = 1; mask < num_masks; ++mask) {
        const std::uint32_t low = mask & (mask - 1);
        const int bit = std::countr_zero(mask);
        sums[mask] = sums[low] + support[static_cast<std::size_t>(bit)].second;
    }
    if (sums[num_masks - 1] < cover_prob) {
        throw ImproperPmfError("total mass " + std::to_string(sums[num_masks - 1]) +
                               " below cover_prob " + std::to_string(cover_prob));
    }

    ExhaustiveResult result;
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::uint32_t mask = 0; mask < num_masks; ++mask) {
        if (sums[mask] >= cover_prob) best = std::min(best, std::uint32_t(std::popcount(mask)));
    }
    result.optimal_size = best;

    result.max_coverage = 0.0;
    for (std::uint32_t mask = 0; mask < num_masks; ++mask) {
        if (std::uint32_t(std::popcount(mask)) <= best) {
            result.max_coverage = std::max(result.max_coverage, sums[mask]);
        }
    }

    for (std::uint32_t mask = 0; mask < num_masks; ++mask) {
        if (std::uint32_t(std::popcount(mask)) <= best &&
            sums[mask] >= result.max_coverage - kCoverageTieTol) {
            std::vector<std::int64_t> region;
            for (std::size_t i = 0; i < m; ++i) {
                if (mask & (1u << i)) region.push_back(support[i].first);
            }
            result.solutions.push_back(std::move(region));
        }
    }
    std::sort(result.solutions.begin(), result.solutions.end());
    return result;
}

bool check_lemmas(const MassFunction& mf, std::span<const std::int64_t> region,
                  double cover_prob, std::span<const std::int64_t> search_set,
                  std::uint64_t trials, std::uint64_t seed) {
    KahanSum region_coverage;
    for (std::int64_t x : region) region_coverage.add(mf(x));
    const double coverage = region_coverage.value();
    const std::uint64_t region_size = region.size();

    std::mt19937_64 gen(seed);
    std::vector<std::int64_t> pool(search_set.begin(), search_set.end());

    auto sample_mass = [&](std::uint64_t size) {
        KahanSum sum;
        for (std::uint64_t i = 0; i < size; ++i) {
            const std::uint64_t j = i + draw_below(gen, pool.size() - i);
            std::swap(pool[i], pool[j]);
            sum.add(mf(pool[i]));
        }
        return sum.value();
    };

    for (std::uint64_t t = 0; t < trials; ++t) {
        // Strictly smaller sets must fall short of the required coverage.
        if (region_size > 0) {
            const std::uint64_t size =
                std::min<std::uint64_t>(draw_below(gen, region_size), pool.size());
            if (sample_mass(size) >= cover_prob) return false;
        }
        // Sets no larger than the region must not beat its coverage.
        const std::uint64_t size =
            std::min<std::uint64_t>(draw_below(gen, region_size + 1), pool.size());
        if (sample_mass(size) > coverage + 1e-12) return false;
    }
    return true;
}

}  // namespace hdr
