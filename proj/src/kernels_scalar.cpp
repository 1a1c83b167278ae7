#include "dmf/kernels.hpp"

#include <stdexcept>

namespace dmf::kernels {

// Reference kernel. The per-step operation order (halve, scale by 1 +/- eps,
// mass-conserving mix, final even split) matches simulate<double> exactly,
// so the outputs are bit-identical to the generic engine. The AVX2 variant
// performs the same IEEE operations per lane and must stay bit-identical to
// this function; the equivalence tests compare raw bit patterns.
void sign_space_cf_scalar(const SignSpaceInput& in, std::uint64_t begin,
                          std::uint64_t end, double* out) {
    const int k = static_cast<int>(in.reagent_cf.size());
    if (k < 1 || k > 63)
        throw std::invalid_argument("sign_space kernel: need 1..63 steps");
    const double factor_plus = 1.0 + in.epsilon;
    const double factor_minus = 1.0 - in.epsilon;

    for (std::uint64_t pos = begin; pos < end; ++pos) {
        const std::uint64_t gray_word = pos ^ (pos >> 1);
        double c = 0.5;  // after O_1: unit sample + unit buffer
        double v = 2.0;
        for (int i = 0; i < k; ++i) {
            const bool minus = (gray_word >> (k - 1 - i)) & 1u;
            const double half = v / 2.0;
            v = half * (minus ? factor_minus : factor_plus);
            c = (c * v + in.reagent_cf[i]) / (v + 1.0);
            v = v + 1.0;
        }
        out[pos - begin] = c;
    }
}

}  // namespace dmf::kernels
