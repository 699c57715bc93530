#pragma once

#include <algorithm>
#include <cmath>
#include <span>

namespace hdr {

// Compensated (Kahan) accumulator for long mass sums.
class KahanSum {
  public:
    void add(double v) {
        const double y = v - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }
    void reset() { sum_ = 0.0; compensation_ = 0.0; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

inline double sum_masses(std::span<const double> masses) {
    KahanSum s;
    for (double m : masses) s.add(m);
    return s.value();
}

// Tie tolerance for mass equality. Family evaluators go through floating
// point, so mathematically equal masses can differ in the last few ulps.
inline constexpr double kMassTieTol = 1e-12;

inline bool masses_tie(double a, double b) {
    return std::abs(a - b) <= kMassTieTol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Tolerance used when comparing coverages of alternative regions.
inline constexpr double kCoverageTieTol = 1e-12;

}  // namespace hdr
