#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hdr/dist_spec.hpp"
#include "hdr/errors.hpp"

using namespace hdr;

TEST_CASE("family specs") {
    const MassFunction b = parse_dist_spec("binom(10, 0.52)");
    CHECK(b.bounds().min == 0);
    CHECK(b.bounds().max == 10);
    CHECK(b.label() == "binom(10, 0.52)");
    CHECK(b(5) == binomial(10, 0.52)(5));

    const MassFunction p = parse_dist_spec("pois(12)");
    CHECK(p(12) == poisson(12)(12));
    CHECK(p.label() == "pois(12)");

    CHECK(parse_dist_spec("geom(0.5)")(2) == geometric(0.5)(2));
    CHECK(parse_dist_spec("nbinom(3, 0.4)")(5) == negative_binomial(3, 0.4)(5));
    CHECK(parse_dist_spec("hyper(30, 12, 10)")(4) == hypergeometric(30, 12, 10)(4));
    CHECK(parse_dist_spec("unif(-3, 3)")(0) == doctest::Approx(1.0 / 7).epsilon(1e-15));
    CHECK(parse_dist_spec("point(42)")(42) == 1.0);
}

TEST_CASE("bimodal mixture spec") {
    const MassFunction mix = parse_dist_spec("mix(0.3:pois(12), 0.3:pois(28), 0.4:pois(40))");
    CHECK(mix.bounds().min == 0);
    CHECK_FALSE(mix.bounds().max.has_value());
    const MassFunction p12 = poisson(12), p28 = poisson(28), p40 = poisson(40);
    for (std::int64_t x : {0, 10, 28, 40, 60}) {
        CHECK(mix(x) == doctest::Approx(0.3 * p12(x) + 0.3 * p28(x) + 0.4 * p40(x))
                            .epsilon(1e-15));
    }
    CHECK(mix.label() == "mix(0.3:pois(12), 0.3:pois(28), 0.4:pois(40))");
}

TEST_CASE("whitespace insensitivity and canonical labels") {
    const MassFunction mf = parse_dist_spec("  mix( 0.5 : pois( 3 ) , 0.5 : binom(4,0.5) ) ");
    CHECK(mf.label() == "mix(0.5:pois(3), 0.5:binom(4, 0.5))");
    const MassFunction nested = parse_dist_spec("mix(0.5:point(0), 0.5:mix(1:point(9)))");
    CHECK(nested(9) == 0.5);
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse_dist_spec("pois(-1)"), ParseError);
    CHECK_THROWS_AS(parse_dist_spec("pois(0)"), ParseError);
    CHECK_THROWS_AS(parse_dist_spec("binom(10, 1.5)"), ParseError);
    CHECK_THROWS_AS(parse_dist_spec("binom(3.5, 0.5)"), ParseError);
    CHECK_THROWS_AS(parse_dist_spec("weibull(2)"), ParseError);
    CHECK_THROWS_AS(parse_dist_spec("pois(12) extra"), ParseError);
    CHECK_THROWS_AS(parse_dist_spec("pois(12"), ParseError);
    CHECK_THROWS_AS(parse_dist_spec("mix(0.5:pois(1), 0.4:pois(2))"), ParseError);
    CHECK_THROWS_AS(parse_dist_spec("mix()"), ParseError);
    CHECK_THROWS_AS(parse_dist_spec(""), ParseError);

    try {
        parse_dist_spec("mix(0.3:pois(12), 0.3:pois(-5))");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 22);  // start of the failing component
    }
}

TEST_CASE("table specs via @path") {
    const std::string path = "test_dist_spec_table.csv";
    {
        std::ofstream out(path);
        out << "# comment\n0,0.25\n1,0.25\n2,0.5\n";
    }
    const MassFunction mf = parse_dist_spec("@" + path);
    CHECK(mf(2) == 0.5);
    CHECK(mf.bounds().max == 2);
    CHECK(mf.label() == "@" + path);
    std::remove(path.c_str());

    CHECK_THROWS_AS(parse_dist_spec("@does_not_exist.csv"), Error);
    CHECK_THROWS_AS(parse_dist_spec("@"), ParseError);
}
