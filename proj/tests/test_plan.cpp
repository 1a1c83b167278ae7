#include "dmf/plan.hpp"

#include <doctest.h>

#include <string>

using namespace dmf;

namespace {

std::string reagent_string(const MixSplitPlan& plan) {
    std::string s;
    for (const Reagent& r : plan.reagents)
        s.push_back(r.kind == ReagentKind::Sample ? 'S' : 'B');
    return s;
}

int count_occurrences(const std::string& text, const std::string& needle) {
    int count = 0;
    for (auto pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + 1))
        ++count;
    return count;
}

}  // namespace

TEST_CASE("build_plan extracts the reagent schedule from the numerator") {
    CHECK(reagent_string(build_plan(TargetCF::make(87, 7))) == "SSBSBS");
    CHECK(reagent_string(build_plan(TargetCF::make(17, 7))) == "BBBSBB");
    CHECK(reagent_string(build_plan(TargetCF::make(1, 1))).empty());
}

TEST_CASE("ideal simulation of the 87/128 plan walks the expected CFs") {
    const auto cfs = ideal_cf_sequence(build_plan(TargetCF::make(87, 7)));
    const Rational expected[] = {{1, 2},  {3, 4},  {7, 8}, {7, 16},
                                 {23, 32}, {23, 64}, {87, 128}};
    REQUIRE(cfs.size() == 7);
    for (int i = 0; i < 7; ++i) CHECK(cfs[i] == expected[i]);
}

TEST_CASE("plan correctness: exhaustive for accuracy <= 10") {
    for (int n = 1; n <= 10; ++n) {
        for (std::int64_t x = 1; x < (std::int64_t{1} << n); x += 2) {
            const TargetCF t = TargetCF::make(x, n);
            const auto result = ideal_simulate(build_plan(t));
            CHECK(result.concentration == t.value<Rational>());
            CHECK(result.volume == 1);
        }
    }
}

TEST_CASE("droplet accounting") {
    // n ops consume n+1 unit droplets; error-free they emit n-1 unit waste
    // droplets plus two unit target droplets.
    const auto plan = build_plan(TargetCF::make(87, 7));
    CHECK(plan.sample_dispenses() == 5);  // 1 + r_1..r_6 = 1+1+1+0+1+0+1
    CHECK(plan.buffer_dispenses() == 3);
    CHECK(plan.sample_dispenses() + plan.buffer_dispenses() == plan.op_count() + 1);
}

TEST_CASE("plan JSON round trip") {
    const auto plan = build_plan(TargetCF::make(87, 7));
    const auto round_tripped = plan_from_json(plan_to_json(plan));
    CHECK(round_tripped.target == plan.target);
    CHECK(round_tripped.reagents == plan.reagents);
}

TEST_CASE("plan JSON rejects an inconsistent reagent schedule") {
    auto text = plan_to_json(build_plan(TargetCF::make(87, 7)));
    // Corrupt one reagent: the schedule no longer realizes 87/128.
    const auto pos = text.find("\"reagent\": \"sample\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 19, "\"reagent\": \"buffer\"");
    CHECK_THROWS_AS(plan_from_json(text), std::invalid_argument);
}

TEST_CASE("DOT export has one mix node per op and n+1 dispense nodes") {
    const auto dot = plan_to_dot(build_plan(TargetCF::make(17, 7)));
    CHECK(count_occurrences(dot, "shape=ellipse") == 7);
    CHECK(count_occurrences(dot, "shape=box") == 8);
    CHECK(count_occurrences(dot, "dispense sample") == 2);  // initial + r_4
    CHECK(count_occurrences(dot, "dispense buffer") == 6);
}
