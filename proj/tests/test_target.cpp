#include "dmf/target.hpp"

#include <doctest.h>

#include <cmath>

using namespace dmf;

TEST_CASE("parse_target reduces to lowest terms") {
    CHECK(parse_target("87/128") == TargetCF::make(87, 7));
    CHECK(parse_target("87/128").accuracy == 7);
    CHECK(parse_target("64/128") == TargetCF::make(1, 1));
    CHECK(parse_target("86/128") == TargetCF::make(43, 6));
    CHECK(parse_target("0.6796875@7") == TargetCF::make(87, 7));
}

TEST_CASE("parse_target rejects malformed input") {
    CHECK_THROWS_AS(parse_target("87/129"), std::invalid_argument);
    CHECK_THROWS_AS(parse_target("87/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_target("129/128"), std::invalid_argument);
    CHECK_THROWS_AS(parse_target("0/128"), std::invalid_argument);
    CHECK_THROWS_AS(parse_target("128/128"), std::invalid_argument);
    CHECK_THROWS_AS(parse_target("-3/128"), std::invalid_argument);
    CHECK_THROWS_AS(parse_target("87"), std::invalid_argument);
    CHECK_THROWS_AS(parse_target("x/128"), std::invalid_argument);
    CHECK_THROWS_AS(parse_target("0.68@7"), std::invalid_argument);
}

TEST_CASE("parse/serialize round trip is identity") {
    for (int n = 1; n <= 9; ++n) {
        for (std::int64_t x = 1; x < (std::int64_t{1} << n); ++x) {
            const TargetCF t = TargetCF::make(x, n);
            CHECK(parse_target(t.str()) == t);
        }
    }
}

TEST_CASE("complement swaps around 1/2") {
    CHECK(complement(TargetCF::make(87, 7)) == TargetCF::make(41, 7));
    CHECK(complement(TargetCF::make(1, 1)) == TargetCF::make(1, 1));
}

TEST_CASE("approximate_cf examples") {
    CHECK(approximate_cf(0.68, 0.5 / 128) == TargetCF::make(87, 7));
    CHECK(approximate_cf(0.5, 0.25) == TargetCF::make(1, 1));
    CHECK(approximate_cf(0.1328125, 1e-9) == TargetCF::make(17, 7));
}

TEST_CASE("approximate_cf returns the minimal accuracy") {
    // Brute force over all smaller accuracies: no dyadic there may satisfy
    // the tolerance.
    const double values[] = {0.68, 0.1, 0.333, 0.9512, 0.0042};
    const double tols[] = {0.5 / 128, 1e-3, 1e-4};
    for (double value : values) {
        for (double tol : tols) {
            const TargetCF t = approximate_cf(value, tol);
            CHECK(std::fabs(t.value<double>() - value) <= tol);
            for (int n = 1; n < t.accuracy; ++n) {
                double best = 1.0;
                for (std::int64_t x = 1; x < (std::int64_t{1} << n); ++x)
                    best = std::min(best,
                                    std::fabs(double(x) / double(1 << n) - value));
                CHECK(best > tol);
            }
        }
    }
}

TEST_CASE("approximate_cf results are already reduced") {
    for (int i = 1; i < 100; ++i) {
        const TargetCF t = approximate_cf(i / 100.0, 1e-4);
        CHECK(t.numerator % 2 == 1);
        CHECK(t.numerator < (std::int64_t{1} << t.accuracy));
    }
}

TEST_CASE("approximate_cf honors the accuracy cap") {
    CHECK_THROWS_AS(approximate_cf(0.123456789, 1e-12, 8), std::invalid_argument);
    CHECK_THROWS_AS(approximate_cf(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(approximate_cf(1.5, 0.1), std::invalid_argument);
}
