#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hdr/solver.hpp"

namespace hdr {

struct IntegerInterval {
    std::int64_t lower;
    std::int64_t upper;

    bool operator==(const IntegerInterval&) const = default;
};

/// Union of closed integer intervals: sorted ascending, pairwise separated
/// by at least one gap integer.
class IntegerIntervalSet {
  public:
    IntegerIntervalSet() = default;

    const std::vector<IntegerInterval>& intervals() const { return intervals_; }
    bool empty() const { return intervals_.empty(); }

    std::uint64_t element_count() const;
    std::vector<std::int64_t> elements() const;

    // Body text: intervals as `a..b` joined by ", ", singletons as bare
    // integers, the empty set as a dedicated marker.
    std::string to_string() const;

  private:
    friend IntegerIntervalSet to_intervals(std::span<const std::int64_t>);
    std::vector<IntegerInterval> intervals_;
};

// Maximal runs of consecutive integers become one closed interval each.
// Input must be sorted ascending with distinct elements.
IntegerIntervalSet to_intervals(std::span<const std::int64_t> sorted_elements);

// Percentage with two decimals, rounded half away from zero ("90.63%").
std::string format_percent(double p);

// Three-line presentation: header with achieved coverage and label, method
// line with the requested minimum, then the interval body. A warning, when
// present, is appended on its own line.
std::string render_text(const HdrResult& result);

}  // namespace hdr
