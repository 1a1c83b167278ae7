#pragma once

#include "dmf/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dmf {

/// Disposition of the split after one mix-split op: keep the larger
/// daughter (+), keep the smaller (-), or split without error.
enum class SplitDisposition : std::uint8_t { Skip, Plus, Minus };

char disposition_char(SplitDisposition d);

/// Per-step split-error dispositions along the mixing path.
///
/// Length is accuracy - 1: the final op carries no entry because an error
/// at the last split changes only the volume, never the CF. One epsilon
/// magnitude applies to all non-Skip entries; per_step_epsilon, when
/// non-empty, overrides it entry by entry.
struct ErrorVector {
    std::vector<SplitDisposition> entries;
    Epsilon epsilon;
    std::vector<Epsilon> per_step_epsilon;

    static ErrorVector all_skip(int length, Epsilon eps);

    /// Parses a compact string over {+,-,0}, e.g. "-0+00-" (0 = no error).
    static ErrorVector parse(const std::string& text, Epsilon eps);

    std::string str() const;

    bool has_skip() const;

    template <class S>
    S epsilon_at(std::size_t i) const {
        const Epsilon& e =
            per_step_epsilon.empty() ? epsilon : per_step_epsilon.at(i);
        return e.as<S>();
    }
};

/// Gray-code position of a full sign vector: + maps to gray bit 0, - to 1,
/// with the O_1 entry as the most significant bit; returns the decoded
/// binary index in [0, 2^k). Throws on a Skip entry.
std::uint64_t gray_position(const ErrorVector& vector);

/// Inverse mapping: the k-entry sign vector at a given gray position.
std::vector<SplitDisposition> signs_at_gray_position(std::uint64_t position,
                                                     int length);

}  // namespace dmf
