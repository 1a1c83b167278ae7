#pragma once

#include "dmf/numeric.hpp"

#include <cstdint>
#include <string>

namespace dmf {

/// A target concentration factor x/2^n in lowest terms.
///
/// Invariants: 0 < x < 2^n, x odd (even inputs are reduced, decrementing n),
/// n >= 1.
struct TargetCF {
    std::int64_t numerator{1};
    int accuracy{1};

    /// Normalizes x/2^n to lowest terms; throws std::invalid_argument on a
    /// value outside (0,1) or n < 1.
    static TargetCF make(std::int64_t numerator, int accuracy);

    template <class S>
    S value() const {
        return S(numerator) / pow2<S>(accuracy);
    }

    std::string str() const;  // "x/2^n" rendered as "87/128"

    friend bool operator==(const TargetCF&, const TargetCF&) = default;
};

/// The complementary target (2^n - x)/2^n; its plan swaps sample and buffer.
TargetCF complement(const TargetCF& t);

/// Parses "x/d" with d a power of two (e.g. "87/128"), or "<decimal>@<n>"
/// for a decimal that is exactly representable at accuracy n
/// (e.g. "0.6796875@7"). Throws std::invalid_argument otherwise.
TargetCF parse_target(const std::string& text);

inline constexpr int kDefaultAccuracyCap = 30;

/// Smallest-n dyadic approximation of `value` within `tolerance`.
/// Ties between the two nearest numerators round to the odd candidate.
/// Throws if no n <= accuracy_cap satisfies the tolerance.
TargetCF approximate_cf(double value, double tolerance,
                        int accuracy_cap = kDefaultAccuracyCap);

}  // namespace dmf
