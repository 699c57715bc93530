#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdr/dist_spec.hpp"
#include "hdr/errors.hpp"
#include "hdr/intervals.hpp"
#include "hdr/mass_function.hpp"
#include "hdr/sequence.hpp"
#include "hdr/solver.hpp"
#include "hdr/verify.hpp"

namespace {

constexpr std::uint64_t kLemmaTrials = 200;

std::vector<std::int64_t> visited_elements(const hdr::SequenceFunction& seq,
                                           std::uint64_t count) {
    std::vector<std::int64_t> out;
    out.reserve(count);
    for (std::uint64_t i = 1; i <= count; ++i) {
        const auto elem = seq.at(i);
        if (!elem) break;
        out.push_back(*elem);
    }
    return out;
}

std::string fmt_mass(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

nlohmann::ordered_json intervals_json(std::span<const std::int64_t> region) {
    auto arr = nlohmann::ordered_json::array();
    const hdr::IntegerIntervalSet set = hdr::to_intervals(region);
    for (const auto& iv : set.intervals()) {
        arr.push_back({{"lower", iv.lower}, {"upper", iv.upper}});
    }
    return arr;
}

struct Options {
    std::string dist;
    double cover_prob = 0.0;
    std::optional<std::int64_t> supp_min;
    std::optional<std::int64_t> supp_max;
    std::string format = "text";
    bool all_solutions = false;
    bool check = false;
    bool permissive = false;
    std::uint64_t iter_cap = 10'000'000;
    std::uint64_t seed = 1;
    std::string emit_masses;
};

int run(const Options& opt) {
    hdr::MassFunction mf = hdr::parse_dist_spec(opt.dist, opt.permissive);
    if (opt.supp_min || opt.supp_max) {
        hdr::SupportBounds bounds = mf.bounds();
        if (opt.supp_min) bounds.min = opt.supp_min;
        if (opt.supp_max) bounds.max = opt.supp_max;
        mf = hdr::with_bounds(mf, bounds);
    }
    const hdr::SequenceFunction seq = hdr::make_sequence(mf.bounds());
    const hdr::SolverOptions solver_options{.iter_cap = opt.iter_cap};
    const hdr::HdrResult result = hdr::compute_cscr(mf, opt.cover_prob, seq, solver_options);

    std::optional<hdr::ConditionReport> report;
    bool lemmas_ok = false;
    std::vector<std::int64_t> search_set;
    if (opt.check || !opt.emit_masses.empty()) {
        search_set = visited_elements(seq, result.search_set_size);
    }
    if (opt.check) {
        report = hdr::check_theorem1(mf, result.region, result.cover_prob, search_set);
        lemmas_ok = hdr::check_lemmas(mf, result.region, result.cover_prob, search_set,
                                      kLemmaTrials, opt.seed);
    }

    std::optional<std::vector<std::vector<std::int64_t>>> solutions;
    if (opt.all_solutions) solutions = hdr::enumerate_canonical(result);

    if (opt.format == "text") {
        std::cout << hdr::render_text(result);
        if (solutions) {
            std::cout << "All canonical solutions (" << solutions->size() << "):\n";
            for (const auto& region : *solutions) {
                std::cout << "  " << hdr::to_intervals(region).to_string() << "\n";
            }
        }
        if (report) {
            auto flag = [](bool ok) { return ok ? "ok" : "FAILED"; };
            std::cout << "Certificate over search set of size " << result.search_set_size
                      << ":\n"
                      << "  minimum coverage: " << flag(report->min_coverage_ok) << "\n"
                      << "  moderation:       " << flag(report->moderation_ok) << "\n"
                      << "  inner-bounded:    " << flag(report->inner_ok) << "\n"
                      << "  outer-bounded:    " << flag(report->outer_ok) << "\n"
                      << "  lemma spot-check: " << (lemmas_ok ? "ok" : "FAILED") << " ("
                      << kLemmaTrials << " trials, seed " << opt.seed << ")\n"
                      << "  min in-region mass " << fmt_short(report->nabla_region)
                      << ", max outside mass " << fmt_short(report->delta_complement)
                      << ", unvisited mass " << fmt_short(report->outside_mass) << "\n";
        }
    } else if (opt.format == "json") {
        nlohmann::ordered_json doc;
        doc["label"] = result.label;
        doc["cover_prob"] = result.cover_prob;
        doc["coverage"] = result.coverage;
        doc["intervals"] = intervals_json(result.region);
        doc["region_size"] = result.region_size;
        doc["search_set_size"] = result.search_set_size;
        doc["variation_set"] = result.variation_set;
        doc["required_from_variation"] = result.required_from_variation;
        doc["warnings"] = result.warning ? nlohmann::ordered_json::array({*result.warning})
                                         : nlohmann::ordered_json::array();
        doc["iterations"] = result.iterations;
        if (solutions) {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& region : *solutions) arr.push_back(intervals_json(region));
            doc["solutions"] = arr;
        }
        if (report) {
            doc["certificate"] = {{"min_coverage_ok", report->min_coverage_ok},
                                  {"moderation_ok", report->moderation_ok},
                                  {"inner_ok", report->inner_ok},
                                  {"outer_ok", report->outer_ok},
                                  {"highest_density_ok", report->highest_density_ok},
                                  {"nabla_region", report->nabla_region},
                                  {"delta_complement", report->delta_complement},
                                  {"outside_mass", report->outside_mass},
                                  {"lemmas_ok", lemmas_ok},
                                  {"lemma_trials", kLemmaTrials},
                                  {"seed", opt.seed}};
        }
        std::cout << doc.dump(2) << "\n";
    } else {  // csv
        std::cout << "lower,upper\n";
        const hdr::IntegerIntervalSet set = hdr::to_intervals(result.region);
        for (const auto& iv : set.intervals()) {
            std::cout << iv.lower << "," << iv.upper << "\n";
        }
    }

    if (result.warning && opt.format != "text") {
        std::cerr << "warning: " << *result.warning << "\n";
    }

    if (!opt.emit_masses.empty()) {
        std::ofstream out(opt.emit_masses);
        if (!out) throw hdr::Error("cannot open output file: " + opt.emit_masses);
        out << "x,mass,in_region\n";
        for (std::int64_t x : search_set) {
            const bool in_region =
                std::binary_search(result.region.begin(), result.region.end(), x);
            out << x << "," << fmt_mass(mf(x)) << "," << (in_region ? 1 : 0) << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Canonical smallest covering regions (discrete HDRs) for integer-valued "
                 "distributions"};
    app.add_option("--dist", opt.dist,
                   "Distribution spec, e.g. 'pois(12)', 'mix(0.5:pois(3), 0.5:binom(10,0.4))', "
                   "or '@table.csv'")
        ->required();
    app.add_option("--cover-prob", opt.cover_prob, "Minimum coverage probability in [0, 1]")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--supp-min", opt.supp_min, "Override the lower support bound");
    app.add_option("--supp-max", opt.supp_max, "Override the upper support bound");
    app.add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_flag("--all-solutions", opt.all_solutions, "List every canonical solution");
    app.add_flag("--check", opt.check, "Emit the optimality certificate");
    app.add_flag("--permissive", opt.permissive, "Renormalize improper pmf tables");
    app.add_option("--iter-cap", opt.iter_cap, "Max visited elements before giving up");
    app.add_option("--seed", opt.seed, "Seed for the randomized lemma checks");
    app.add_option("--emit-masses", opt.emit_masses,
                   "Write `x,mass,in_region` rows over the visited search set");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        return run(opt);
    } catch (const hdr::TerminationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
