#include "dmf/kernels.hpp"

#include <stdexcept>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define DMF_HAVE_AVX2_BUILD 1
#endif

namespace dmf::kernels {

#if DMF_HAVE_AVX2_BUILD

namespace {

__attribute__((target("avx2"))) void sign_space_block4(
    const SignSpaceInput& in, std::uint64_t pos0, double* out) {
    const int k = static_cast<int>(in.reagent_cf.size());
    const __m256d factor_plus = _mm256_set1_pd(1.0 + in.epsilon);
    const __m256d factor_minus = _mm256_set1_pd(1.0 - in.epsilon);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);

    const std::uint64_t g0 = (pos0 + 0) ^ ((pos0 + 0) >> 1);
    const std::uint64_t g1 = (pos0 + 1) ^ ((pos0 + 1) >> 1);
    const std::uint64_t g2 = (pos0 + 2) ^ ((pos0 + 2) >> 1);
    const std::uint64_t g3 = (pos0 + 3) ^ ((pos0 + 3) >> 1);

    __m256d c = _mm256_set1_pd(0.5);
    __m256d v = _mm256_set1_pd(2.0);
    for (int i = 0; i < k; ++i) {
        const int shift = k - 1 - i;
        // All-ones lane selects the minus factor in blendv (sign bit set).
        const __m256i select = _mm256_set_epi64x(
            -static_cast<long long>((g3 >> shift) & 1u),
            -static_cast<long long>((g2 >> shift) & 1u),
            -static_cast<long long>((g1 >> shift) & 1u),
            -static_cast<long long>((g0 >> shift) & 1u));
        const __m256d factor =
            _mm256_blendv_pd(factor_plus, factor_minus, _mm256_castsi256_pd(select));
        const __m256d half = _mm256_div_pd(v, two);
        v = _mm256_mul_pd(half, factor);
        const __m256d mass = _mm256_add_pd(_mm256_mul_pd(c, v),
                                           _mm256_set1_pd(in.reagent_cf[i]));
        c = _mm256_div_pd(mass, _mm256_add_pd(v, one));
        v = _mm256_add_pd(v, one);
    }
    _mm256_storeu_pd(out, c);
}

}  // namespace

void sign_space_cf_avx2(const SignSpaceInput& in, std::uint64_t begin,
                        std::uint64_t end, double* out) {
    const int k = static_cast<int>(in.reagent_cf.size());
    if (k < 1 || k > 63)
        throw std::invalid_argument("sign_space kernel: need 1..63 steps");
    std::uint64_t pos = begin;
    for (; pos + 4 <= end; pos += 4) sign_space_block4(in, pos, out + (pos - begin));
    if (pos < end) sign_space_cf_scalar(in, pos, end, out + (pos - begin));
}

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

#else  // non-x86 build: keep the entry points, fall back to scalar

void sign_space_cf_avx2(const SignSpaceInput& in, std::uint64_t begin,
                        std::uint64_t end, double* out) {
    sign_space_cf_scalar(in, begin, end, out);
}

bool avx2_available() { return false; }

#endif

SignSpaceFn active_kernel() {
    return avx2_available() ? &sign_space_cf_avx2 : &sign_space_cf_scalar;
}

const char* active_kernel_name() {
    return avx2_available() ? "avx2" : "scalar";
}

}  // namespace dmf::kernels
