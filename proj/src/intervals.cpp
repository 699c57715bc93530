#include "hdr/intervals.hpp"

#include <cmath>
#include <cstdio>

namespace hdr {

std::uint64_t IntegerIntervalSet::element_count() const {
    std::uint64_t count = 0;
    for (const auto& iv : intervals_) {
        count += static_cast<std::uint64_t>(iv.upper - iv.lower) + 1;
    }
    return count;
}

std::vector<std::int64_t> IntegerIntervalSet::elements() const {
    std::vector<std::int64_t> out;
    out.reserve(element_count());
    for (const auto& iv : intervals_) {
        for (std::int64_t x = iv.lower;; ++x) {
            out.push_back(x);
            if (x == iv.upper) break;
        }
    }
    return out;
}

std::string IntegerIntervalSet::to_string() const {
    if (intervals_.empty()) return "∅";
    std::string out;
    for (const auto& iv : intervals_) {
        if (!out.empty()) out += ", ";
        out += std::to_string(iv.lower);
        if (iv.upper != iv.lower) out += ".." + std::to_string(iv.upper);
    }
    return out;
}

IntegerIntervalSet to_intervals(std::span<const std::int64_t> sorted_elements) {
    IntegerIntervalSet set;
    for (std::int64_t x : sorted_elements) {
        if (!set.intervals_.empty() && x == set.intervals_.back().upper + 1) {
            set.intervals_.back().upper = x;
        } else {
            set.intervals_.push_back({x, x});
        }
    }
    return set;
}

std::string format_percent(double p) {
    // Two decimals on the percentage, half away from zero: 0.90625 -> 90.63%.
    const auto basis_points = static_cast<long long>(std::floor(p * 10000.0 + 0.5));
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%lld.%02lld%%", basis_points / 100,
                  basis_points % 100);
    return buf;
}

std::string render_text(const HdrResult& result) {
    std::string out = format_percent(result.coverage) + " HDR for " + result.label + "\n";
    out += "Computed using discrete optimisation with minimum coverage probability = " +
           format_percent(result.cover_prob) + "\n";
    out += to_intervals(result.region).to_string() + "\n";
    if (result.warning) out += "Warning: " + *result.warning + "\n";
    return out;
}

}  // namespace hdr
