#include "dmf/kernels.hpp"

#include "dmf/analysis.hpp"
#include "dmf/engine.hpp"

#include <doctest.h>

#include <cstring>

using namespace dmf;

namespace {

kernels::SignSpaceInput input_for(const MixSplitPlan& plan, double eps) {
    kernels::SignSpaceInput in;
    in.epsilon = eps;
    for (const Reagent& r : plan.reagents)
        in.reagent_cf.push_back(static_cast<double>(r.cf_value()));
    return in;
}

bool bit_equal(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar kernel is bit-identical to the generic engine") {
    const Epsilon eps = Epsilon::parse("0.07");
    for (std::int64_t x : {1, 17, 41, 63, 87, 127}) {
        const auto plan = build_plan(TargetCF::make(x, 7));
        const auto in = input_for(plan, eps.as<double>());
        std::vector<double> out(64);
        kernels::sign_space_cf_scalar(in, 0, 64, out.data());
        for (std::uint64_t pos = 0; pos < 64; ++pos) {
            ErrorVector ev;
            ev.epsilon = eps;
            ev.entries = signs_at_gray_position(pos, 6);
            const auto sim = simulate<double>(plan, ev);
            REQUIRE(bit_equal(out[pos], sim.produced_cf));
        }
    }
}

TEST_CASE("AVX2 kernel is bit-identical to the scalar kernel") {
    if (!kernels::avx2_available()) {
        MESSAGE("AVX2 not available on this host; variant falls back to scalar");
    }
    for (int n : {2, 5, 8, 11}) {
        const auto plan = build_plan(TargetCF::make((std::int64_t{1} << n) - 7 > 0
                                                        ? (std::int64_t{1} << n) - 7
                                                        : 1,
                                                    n));
        for (double eps : {0.0, 0.03, 0.07, 0.21}) {
            const auto in = input_for(plan, eps);
            const std::uint64_t total = std::uint64_t{1} << (plan.op_count() - 1);
            std::vector<double> scalar(total), simd(total);
            kernels::sign_space_cf_scalar(in, 0, total, scalar.data());
            kernels::sign_space_cf_avx2(in, 0, total, simd.data());
            for (std::uint64_t i = 0; i < total; ++i)
                REQUIRE(bit_equal(scalar[i], simd[i]));
        }
    }
}

TEST_CASE("AVX2 kernel handles unaligned ranges and tails") {
    const auto plan = build_plan(TargetCF::make(87, 7));
    const auto in = input_for(plan, 0.07);
    for (auto [begin, end] : {std::pair<std::uint64_t, std::uint64_t>{3, 10},
                              {0, 1}, {61, 64}, {5, 64}}) {
        std::vector<double> scalar(end - begin), simd(end - begin);
        kernels::sign_space_cf_scalar(in, begin, end, scalar.data());
        kernels::sign_space_cf_avx2(in, begin, end, simd.data());
        for (std::size_t i = 0; i < scalar.size(); ++i)
            REQUIRE(bit_equal(scalar[i], simd[i]));
    }
}

TEST_CASE("dispatch reports a kernel") {
    CHECK(kernels::active_kernel() != nullptr);
    const std::string name = kernels::active_kernel_name();
    CHECK((name == "avx2" || name == "scalar"));
}
