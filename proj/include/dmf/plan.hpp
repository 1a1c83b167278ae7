#pragma once

#include "dmf/numeric.hpp"
#include "dmf/target.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dmf {

enum class ReagentKind : std::uint8_t { Sample, Buffer };

struct Reagent {
    ReagentKind kind{ReagentKind::Buffer};

    /// CF of the dispensed unit droplet: 1 for sample, 0 for buffer.
    int cf_value() const { return kind == ReagentKind::Sample ? 1 : 0; }

    friend bool operator==(const Reagent&, const Reagent&) = default;
};

inline constexpr Reagent kSample{ReagentKind::Sample};
inline constexpr Reagent kBuffer{ReagentKind::Buffer};

/// Ordered reagent schedule realizing a TargetCF under ideal (1:1) mix-split.
///
/// Op O_1 always mixes one sample and one buffer droplet; ops O_2..O_n mix
/// the carried daughter with reagents[0..n-2] (the spec's r_1..r_{n-1}).
struct MixSplitPlan {
    TargetCF target;
    std::vector<Reagent> reagents;  // length = accuracy - 1

    int op_count() const { return target.accuracy; }

    /// Dispensed unit droplets: 1 + (number of sample reagents) of sample,
    /// the rest buffer; total op_count() + 1.
    int sample_dispenses() const;
    int buffer_dispenses() const;
};

/// Derives the reagent schedule from the binary expansion of the numerator:
/// r_i = bit i of x (bit 0 is consumed by the initial sample droplet).
MixSplitPlan build_plan(const TargetCF& target);

/// Exact ideal (error-free) simulation: returns C_1..C_n with C_n = x/2^n.
std::vector<Rational> ideal_cf_sequence(const MixSplitPlan& plan);

/// Final droplet of the ideal simulation: (x/2^n, volume 1), exactly.
struct IdealResult {
    Rational concentration;
    Rational volume;
};
IdealResult ideal_simulate(const MixSplitPlan& plan);

/// JSON serialization: {"target":{...},"ops":[{index,inputs,reagent},...]}.
std::string plan_to_json(const MixSplitPlan& plan);
MixSplitPlan plan_from_json(const std::string& json_text);

/// DOT export with dispense and mix-split nodes; edges carry droplet volume.
std::string plan_to_dot(const MixSplitPlan& plan);

}  // namespace dmf
