#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "hdr/errors.hpp"
#include "hdr/mass_function.hpp"

namespace hdr {

/// Enumeration of an integer support: a bijection E from the positive
/// indices onto the ambient integer range. Built from support bounds it
/// walks left-to-right, right-to-left, or oscillates outward from zero.
/// Immutable after construction and safe for concurrent reads.
class SequenceFunction {
  public:
    enum class Kind { finite, left_bounded, right_bounded, oscillating, custom };

    using Mapping = std::function<std::int64_t(std::uint64_t)>;

    // Element at 1-based index i, or nullopt once a finite sequence is
    // exhausted. Throws IndexError for i = 0 and DuplicateElementError if a
    // custom mapping repeats an element within the visited prefix.
    std::optional<std::int64_t> at(std::uint64_t i) const;

    Kind kind() const { return kind_; }
    const SupportBounds& bounds() const { return bounds_; }

    // Support size for finite kind, nullopt otherwise.
    std::optional<std::uint64_t> size() const;

    // Custom user-supplied mapping; injectivity is validated lazily over the
    // visited prefix.
    static SequenceFunction custom(Mapping mapping, SupportBounds bounds = {});

  private:
    friend SequenceFunction make_sequence(SupportBounds);

    SequenceFunction(Kind kind, SupportBounds bounds, Mapping mapping);

    Kind kind_;
    SupportBounds bounds_;
    Mapping mapping_;
    struct PrefixValidator;
    std::shared_ptr<PrefixValidator> validator_;  // custom kind only
};

// Simple sequence over the integers for the given bounds:
//   finite / left-bounded:  E(i) = supp_min - 1 + i
//   right-bounded only:     E(i) = supp_max + 1 - i
//   unbounded both sides:   E(i) = floor(i/2) if i odd, else -i/2
// Throws EmptySupportError when supp_min > supp_max.
SequenceFunction make_sequence(SupportBounds bounds);

// Real-valued bounds (possibly infinite) are rounded inward: ceiling of the
// lower bound, floor of the upper.
SequenceFunction make_sequence(double supp_min, double supp_max);

inline std::optional<std::int64_t> seq_element(const SequenceFunction& seq, std::uint64_t i) {
    return seq.at(i);
}

}  // namespace hdr
