#include "hdr/sequence.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <unordered_set>
#include <utility>

namespace hdr {

// Lazy injectivity check for custom mappings: every output in the visited
// prefix must be new. Synchronised so shared sequences stay safe for
// concurrent reads.
struct SequenceFunction::PrefixValidator {
    std::mutex mutex;
    std::unordered_set<std::int64_t> seen;
    std::uint64_t checked_prefix = 0;

    void check(const Mapping& mapping, std::uint64_t i) {
        std::lock_guard lock(mutex);
        while (checked_prefix < i) {
            const std::uint64_t next = checked_prefix + 1;
            const std::int64_t value = mapping(next);
            if (!seen.insert(value).second) throw DuplicateElementError(value, next);
            checked_prefix = next;
        }
    }
};

SequenceFunction::SequenceFunction(Kind kind, SupportBounds bounds, Mapping mapping)
    : kind_(kind), bounds_(bounds), mapping_(std::move(mapping)) {
    if (kind_ == Kind::custom) validator_ = std::make_shared<PrefixValidator>();
}

std::optional<std::int64_t> SequenceFunction::at(std::uint64_t i) const {
    if (i == 0) throw IndexError("sequence indices start at 1");
    if (auto n = size(); n && i > *n) return std::nullopt;
    if (validator_) validator_->check(mapping_, i);
    return mapping_(i);
}

std::optional<std::uint64_t> SequenceFunction::size() const {
    if (kind_ != Kind::finite) return std::nullopt;
    return static_cast<std::uint64_t>(*bounds_.max - *bounds_.min) + 1;
}

SequenceFunction SequenceFunction::custom(Mapping mapping, SupportBounds bounds) {
    return SequenceFunction(Kind::custom, bounds, std::move(mapping));
}

SequenceFunction make_sequence(SupportBounds bounds) {
    if (bounds.min && bounds.max) {
        if (*bounds.min > *bounds.max) {
            throw EmptySupportError("make_sequence: supp_min " + std::to_string(*bounds.min) +
                                    " > supp_max " + std::to_string(*bounds.max));
        }
        const std::int64_t min = *bounds.min;
        return SequenceFunction(SequenceFunction::Kind::finite, bounds,
                                [min](std::uint64_t i) {
                                    return min - 1 + static_cast<std::int64_t>(i);
                                });
    }
    if (bounds.min) {
        const std::int64_t min = *bounds.min;
        return SequenceFunction(SequenceFunction::Kind::left_bounded, bounds,
                                [min](std::uint64_t i) {
                                    return min - 1 + static_cast<std::int64_t>(i);
                                });
    }
    if (bounds.max) {
        const std::int64_t max = *bounds.max;
        return SequenceFunction(SequenceFunction::Kind::right_bounded, bounds,
                                [max](std::uint64_t i) {
                                    return max + 1 - static_cast<std::int64_t>(i);
                                });
    }
    // Unbounded: oscillate outward from zero, 0, -1, 1, -2, 2, ...
    return SequenceFunction(SequenceFunction::Kind::oscillating, bounds,
                            [](std::uint64_t i) {
                                const auto half = static_cast<std::int64_t>(i / 2);
                                return (i % 2 == 1) ? half : -half;
                            });
}

SequenceFunction make_sequence(double supp_min, double supp_max) {
    if (std::isnan(supp_min) || std::isnan(supp_max)) {
        throw PreconditionError("make_sequence: bounds must not be NaN");
    }
    SupportBounds bounds;
    if (supp_min != -std::numeric_limits<double>::infinity()) {
        bounds.min = static_cast<std::int64_t>(std::ceil(supp_min));
    }
    if (supp_max != std::numeric_limits<double>::infinity()) {
        bounds.max = static_cast<std::int64_t>(std::floor(supp_max));
    }
    return make_sequence(bounds);
}

}  // namespace hdr
