#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdr/errors.hpp"

namespace hdr {

// Declared support bounds; nullopt means unbounded on that side.
struct SupportBounds {
    std::optional<std::int64_t> min;
    std::optional<std::int64_t> max;

    bool finite() const { return min.has_value() && max.has_value(); }
};

/// A discrete probability mass function over the integers together with
/// declared support bounds and a human-readable label. Evaluators must be
/// pure and deterministic; instances are immutable and safe to share
/// across threads.
class MassFunction {
  public:
    using Evaluator = std::function<double(std::int64_t)>;

    MassFunction(Evaluator evaluator, SupportBounds bounds, std::string label);

    // Mass at x. Returns 0 outside the declared bounds; throws
    // InvalidMassError if the evaluator produces a negative or non-finite
    // value.
    double operator()(std::int64_t x) const;

    const SupportBounds& bounds() const { return bounds_; }
    const std::string& label() const { return label_; }

  private:
    Evaluator evaluator_;
    SupportBounds bounds_;
    std::string label_;
};

inline double eval_mass(const MassFunction& mf, std::int64_t x) { return mf(x); }

inline SupportBounds support_bounds(const MassFunction& mf) { return mf.bounds(); }

// Built-in families. Parameter checks throw PreconditionError.
MassFunction poisson(double lambda);
MassFunction binomial(std::int64_t n, double theta);
MassFunction geometric(double theta);                 // failures before first success
MassFunction negative_binomial(double r, double theta);  // failures before r-th success
MassFunction hypergeometric(std::int64_t population, std::int64_t successes,
                            std::int64_t draws);
MassFunction discrete_uniform(std::int64_t a, std::int64_t b);
MassFunction point_mass(std::int64_t x);

struct MixtureComponent {
    double weight = 0.0;  // in (0, 1]
    MassFunction component;
};

struct MixtureSpec {
    std::vector<MixtureComponent> components;
};

// Weighted sum of the component evaluators; bounds are the componentwise
// envelope. Weights must sum to 1 within 1e-12.
MassFunction make_mixture(const MixtureSpec& spec);

// Finite table-backed mass function. Unlisted x has mass 0; bounds are the
// min/max listed x. The total mass must lie in [1 - 1e-9, 1 + 1e-9] unless
// `permissive`, in which case the table is renormalized.
MassFunction table_pmf(const std::map<std::int64_t, double>& table, std::string label,
                       bool permissive = false);

// Parses the PMF table text format: one `<integer>,<decimal mass>` record
// per line, `#`-prefixed comment lines and blank lines ignored.
MassFunction load_pmf_table(std::istream& source, bool permissive = false,
                            std::string label = "pmf table");

// Same mass function with the declared bounds replaced. Masses outside the
// new bounds evaluate to 0.
MassFunction with_bounds(const MassFunction& mf, SupportBounds bounds);

}  // namespace hdr
