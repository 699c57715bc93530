#include "hdr/mass_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <utility>

#include "hdr/numeric.hpp"

namespace hdr {
namespace {

constexpr double kProperPmfTol = 1e-9;

// log C(n, k); canonicalize to min(k, n-k) so symmetric coefficients are
// bit-identical.
double log_choose(double n, double k) {
    k = std::min(k, n - k);
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void require(bool ok, const std::string& message) {
    if (!ok) throw PreconditionError(message);
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

MassFunction::MassFunction(Evaluator evaluator, SupportBounds bounds, std::string label)
    : evaluator_(std::move(evaluator)), bounds_(bounds), label_(std::move(label)) {
    if (bounds_.min && bounds_.max && *bounds_.min > *bounds_.max) {
        throw EmptySupportError("support bounds (" + std::to_string(*bounds_.min) + ", " +
                                std::to_string(*bounds_.max) + ") give an empty support");
    }
}

double MassFunction::operator()(std::int64_t x) const {
    if ((bounds_.min && x < *bounds_.min) || (bounds_.max && x > *bounds_.max)) return 0.0;
    const double m = evaluator_(x);
    if (m < 0.0 || !std::isfinite(m)) throw InvalidMassError(x, m);
    return m;
}

MassFunction poisson(double lambda) {
    require(std::isfinite(lambda) && lambda > 0.0, "pois: lambda must be positive");
    const double log_lambda = std::log(lambda);
    auto eval = [lambda, log_lambda](std::int64_t x) {
        if (x < 0) return 0.0;
        const double k = static_cast<double>(x);
        return std::exp(k * log_lambda - lambda - std::lgamma(k + 1.0));
    };
    return MassFunction(eval, {.min = 0, .max = std::nullopt}, "pois(" + fmt(lambda) + ")");
}

MassFunction binomial(std::int64_t n, double theta) {
    require(n >= 0, "binom: n must be non-negative");
    require(theta >= 0.0 && theta <= 1.0, "binom: theta must be in [0, 1]");
    const double nd = static_cast<double>(n);
    auto eval = [n, nd, theta](std::int64_t x) {
        if (x < 0 || x > n) return 0.0;
        if (theta == 0.0) return x == 0 ? 1.0 : 0.0;
        if (theta == 1.0) return x == n ? 1.0 : 0.0;
        const double k = static_cast<double>(x);
        return std::exp(log_choose(nd, k) + k * std::log(theta) +
                        (nd - k) * std::log1p(-theta));
    };
    return MassFunction(eval, {.min = 0, .max = n},
                        "binom(" + std::to_string(n) + ", " + fmt(theta) + ")");
}

MassFunction geometric(double theta) {
    require(theta > 0.0 && theta <= 1.0, "geom: theta must be in (0, 1]");
    auto eval = [theta](std::int64_t x) {
        if (x < 0) return 0.0;
        if (theta == 1.0) return x == 0 ? 1.0 : 0.0;
        return std::exp(std::log(theta) + static_cast<double>(x) * std::log1p(-theta));
    };
    return MassFunction(eval, {.min = 0, .max = std::nullopt}, "geom(" + fmt(theta) + ")");
}

MassFunction negative_binomial(double r, double theta) {
    require(std::isfinite(r) && r > 0.0, "nbinom: r must be positive");
    require(theta > 0.0 && theta <= 1.0, "nbinom: theta must be in (0, 1]");
    auto eval = [r, theta](std::int64_t x) {
        if (x < 0) return 0.0;
        if (theta == 1.0) return x == 0 ? 1.0 : 0.0;
        const double k = static_cast<double>(x);
        return std::exp(std::lgamma(k + r) - std::lgamma(r) - std::lgamma(k + 1.0) +
                        r * std::log(theta) + k * std::log1p(-theta));
    };
    return MassFunction(eval, {.min = 0, .max = std::nullopt},
                        "nbinom(" + fmt(r) + ", " + fmt(theta) + ")");
}

MassFunction hypergeometric(std::int64_t population, std::int64_t successes,
                            std::int64_t draws) {
    require(population >= 0, "hyper: population must be non-negative");
    require(successes >= 0 && successes <= population,
            "hyper: successes must be in [0, population]");
    require(draws >= 0 && draws <= population, "hyper: draws must be in [0, population]");
    const std::int64_t lo = std::max<std::int64_t>(0, draws - (population - successes));
    const std::int64_t hi = std::min(draws, successes);
    auto eval = [population, successes, draws, lo, hi](std::int64_t x) {
        if (x < lo || x > hi) return 0.0;
        const double k = static_cast<double>(x);
        return std::exp(log_choose(static_cast<double>(successes), k) +
                        log_choose(static_cast<double>(population - successes),
                                   static_cast<double>(draws) - k) -
                        log_choose(static_cast<double>(population),
                                   static_cast<double>(draws)));
    };
    return MassFunction(eval, {.min = lo, .max = hi},
                        "hyper(" + std::to_string(population) + ", " +
                            std::to_string(successes) + ", " + std::to_string(draws) + ")");
}

MassFunction discrete_uniform(std::int64_t a, std::int64_t b) {
    require(a <= b, "unif: need a <= b");
    const double mass = 1.0 / (static_cast<double>(b) - static_cast<double>(a) + 1.0);
    auto eval = [a, b, mass](std::int64_t x) { return (x >= a && x <= b) ? mass : 0.0; };
    return MassFunction(eval, {.min = a, .max = b},
                        "unif(" + std::to_string(a) + ", " + std::to_string(b) + ")");
}

MassFunction point_mass(std::int64_t x) {
    auto eval = [x](std::int64_t v) { return v == x ? 1.0 : 0.0; };
    return MassFunction(eval, {.min = x, .max = x}, "point(" + std::to_string(x) + ")");
}

MassFunction make_mixture(const MixtureSpec& spec) {
    if (spec.components.empty()) {
        throw PreconditionError("mix: at least one component required");
    }
    KahanSum weight_sum;
    for (const auto& c : spec.components) {
        if (!(c.weight > 0.0 && c.weight <= 1.0)) {
            throw PreconditionError("mix: weights must lie in (0, 1]");
        }
        weight_sum.add(c.weight);
    }
    if (std::abs(weight_sum.value() - 1.0) > 1e-12) {
        throw PreconditionError("mix: weights sum to " + fmt(weight_sum.value()) +
                                ", expected 1");
    }

    SupportBounds bounds = spec.components.front().component.bounds();
    std::string label = "mix(";
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        const auto& c = spec.components[i];
        const auto& cb = c.component.bounds();
        if (i > 0) {
            bounds.min = (bounds.min && cb.min) ? std::optional(std::min(*bounds.min, *cb.min))
                                                : std::nullopt;
            bounds.max = (bounds.max && cb.max) ? std::optional(std::max(*bounds.max, *cb.max))
                                                : std::nullopt;
            label += ", ";
        }
        label += fmt(c.weight) + ":" + c.component.label();
    }
    label += ")";

    auto components = std::make_shared<std::vector<MixtureComponent>>(spec.components);
    auto eval = [components](std::int64_t x) {
        double total = 0.0;
        for (const auto& c : *components) total += c.weight * c.component(x);
        return total;
    };
    return MassFunction(eval, bounds, std::move(label));
}

MassFunction table_pmf(const std::map<std::int64_t, double>& table, std::string label,
                       bool permissive) {
    if (table.empty()) throw ImproperPmfError("pmf table is empty");
    KahanSum total;
    for (const auto& [x, mass] : table) {
        if (mass < 0.0 || !std::isfinite(mass)) throw InvalidMassError(x, mass);
        total.add(mass);
    }
    const double t = total.value();
    double scale = 1.0;
    if (std::abs(t - 1.0) > kProperPmfTol) {
        if (!permissive || t <= 0.0) {
            throw ImproperPmfError("pmf table total mass is " + fmt(t) + ", expected 1");
        }
        scale = 1.0 / t;
    }

    auto data = std::make_shared<std::map<std::int64_t, double>>(table);
    if (scale != 1.0) {
        for (auto& [x, mass] : *data) mass *= scale;
    }
    auto eval = [data](std::int64_t x) {
        auto it = data->find(x);
        return it == data->end() ? 0.0 : it->second;
    };
    SupportBounds bounds{.min = data->begin()->first, .max = data->rbegin()->first};
    return MassFunction(eval, bounds, std::move(label));
}

MassFunction load_pmf_table(std::istream& source, bool permissive, std::string label) {
    std::map<std::int64_t, double> table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos || line[begin] == '#') continue;
        std::size_t end = line.find_last_not_of(" \t\r") + 1;

        const std::size_t comma = line.find(',', begin);
        if (comma == std::string::npos || comma >= end) {
            throw ParseError("pmf table line " + std::to_string(line_no) +
                                 ": expected `<integer>,<mass>`",
                             line_no);
        }
        std::int64_t x = 0;
        auto [px, ecx] = std::from_chars(line.data() + begin, line.data() + comma, x);
        if (ecx != std::errc() || px != line.data() + comma) {
            throw ParseError("pmf table line " + std::to_string(line_no) + ": bad integer",
                             line_no);
        }
        double mass = 0.0;
        auto [pm, ecm] = std::from_chars(line.data() + comma + 1, line.data() + end, mass);
        if (ecm != std::errc() || pm != line.data() + end) {
            throw ParseError("pmf table line " + std::to_string(line_no) + ": bad mass",
                             line_no);
        }
        if (table.count(x)) throw DuplicateKeyError(x);
        if (mass < 0.0 || !std::isfinite(mass)) throw InvalidMassError(x, mass);
        table.emplace(x, mass);
    }
    return table_pmf(table, std::move(label), permissive);
}

MassFunction with_bounds(const MassFunction& mf, SupportBounds bounds) {
    MassFunction inner = mf;
    auto eval = [inner](std::int64_t x) { return inner(x); };
    return MassFunction(eval, bounds, mf.label());
}

}  // namespace hdr
