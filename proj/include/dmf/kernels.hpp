#pragma once

#include <cstdint>
#include <vector>

namespace dmf::kernels {

/// Inputs for the full-sign-space batch kernel: the reagent CFs r_1..r_k
/// (0/1) and the split-error magnitude.
struct SignSpaceInput {
    std::vector<double> reagent_cf;
    double epsilon{0.0};
};

/// Computes the produced CF for every sign vector with gray position in
/// [begin, end), writing end-begin values to out. out[j] corresponds to
/// gray position begin + j. The arithmetic matches simulate<double>
/// operation for operation, so results are bit-identical to the generic
/// engine and across kernel variants.
using SignSpaceFn = void (*)(const SignSpaceInput&, std::uint64_t begin,
                             std::uint64_t end, double* out);

void sign_space_cf_scalar(const SignSpaceInput& in, std::uint64_t begin,
                          std::uint64_t end, double* out);

/// AVX2 variant, four gray positions per iteration. Only callable when
/// avx2_available(); falls back to the scalar kernel otherwise.
void sign_space_cf_avx2(const SignSpaceInput& in, std::uint64_t begin,
                        std::uint64_t end, double* out);

bool avx2_available();

/// Kernel selected at load time from CPU capabilities.
SignSpaceFn active_kernel();
const char* active_kernel_name();

}  // namespace dmf::kernels
