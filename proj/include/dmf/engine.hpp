#pragma once

#include "dmf/error_vector.hpp"
#include "dmf/numeric.hpp"
#include "dmf/plan.hpp"

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dmf {

/// Droplet carried along the mixing path: CF in [0,1] and volume in units
/// of one 1X droplet.
template <class S>
struct DropletState {
    S concentration;
    S volume;
};

template <class S>
struct StepTrace {
    int op_index{};                 // 1-based
    DropletState<S> pre_mix;        // droplet arriving at the mixer
    DropletState<S> post_mix;       // after merging with the unit reagent
    DropletState<S> kept;           // daughter carried forward
    DropletState<S> discarded;      // daughter sent to waste (or 2nd target)
};

template <class S>
struct SimulationResult {
    S produced_cf;
    S cf_error;       // produced - target, signed
    S scaled_error;   // cf_error * 2^n
    S final_volume;
    std::vector<StepTrace<S>> trace;
};

/// Merges the carried droplet with one unit reagent droplet. Sample mass is
/// conserved: c' = (c*v + r)/(v + 1).
template <class S>
DropletState<S> mix_op(const DropletState<S>& carried, Reagent reagent) {
    const S r = S(reagent.cf_value());
    DropletState<S> out;
    out.concentration =
        (carried.concentration * carried.volume + r) / (carried.volume + S(1));
    out.volume = carried.volume + S(1);
    return out;
}

/// Splits a parent of volume T into daughters (T/2)(1 +/- eps); both inherit
/// the parent concentration. Skip splits evenly regardless of eps.
template <class S>
std::pair<DropletState<S>, DropletState<S>> split_op(
    const DropletState<S>& parent, SplitDisposition d, const S& eps) {
    if (eps < S(0) || !(eps < S(1)))
        throw std::invalid_argument("split_op: epsilon must be in [0,1)");
    const S half = parent.volume / S(2);
    DropletState<S> kept{parent.concentration, half};
    DropletState<S> discarded{parent.concentration, half};
    if (d == SplitDisposition::Plus) {
        kept.volume = half * (S(1) + eps);
        discarded.volume = half * (S(1) - eps);
    } else if (d == SplitDisposition::Minus) {
        kept.volume = half * (S(1) - eps);
        discarded.volume = half * (S(1) + eps);
    }
    return {kept, discarded};
}

/// Propagates the plan under the given error vector. The final op splits
/// with `final_split` (no-error by default; a forced error there changes
/// only the final volume).
template <class S>
SimulationResult<S> simulate(const MixSplitPlan& plan, const ErrorVector& ev,
                             SplitDisposition final_split = SplitDisposition::Skip) {
    const int n = plan.op_count();
    if (ev.entries.size() != static_cast<std::size_t>(n - 1))
        throw std::invalid_argument("simulate: error vector length must be n-1");

    SimulationResult<S> result;
    result.trace.reserve(n);

    DropletState<S> carried{S(1), S(1)};  // the initial sample droplet
    for (int i = 1; i <= n; ++i) {
        const Reagent reagent = (i == 1) ? kBuffer : plan.reagents[i - 2];
        const DropletState<S> pre = carried;
        const DropletState<S> post = mix_op(carried, reagent);
        const bool last = (i == n);
        const SplitDisposition d = last ? final_split : ev.entries[i - 1];
        const S eps = last ? ev.epsilon.as<S>() : ev.template epsilon_at<S>(i - 1);
        auto [kept, discarded] = split_op(post, d, eps);
        result.trace.push_back({i, pre, post, kept, discarded});
        carried = kept;
    }

    const S target = plan.target.value<S>();
    result.produced_cf = carried.concentration;
    result.cf_error = result.produced_cf - target;
    result.scaled_error = result.cf_error * pow2<S>(n);
    result.final_volume = carried.volume;
    return result;
}

/// Literal evaluation of the paper-style P/Q recurrences:
///   P_i = P_{i-1}*(1 +/- eps_{i-1}) + 2^{i-2}*r_{i-1}
///   Q_i = Q_{i-1}*(1 +/- eps_{i-1}) + 2^{i-2}
/// from P_0 = Q_0 = 1/2, eps_0 = r_0 = 0; returns (C_n, V_n) = (P_n/Q_n,
/// Q_n/2^{n-1}). Independent cross-check of simulate().
template <class S>
std::pair<S, S> recurrence_eval(const MixSplitPlan& plan,
                                const ErrorVector& ev) {
    const int n = plan.op_count();
    if (ev.entries.size() != static_cast<std::size_t>(n - 1))
        throw std::invalid_argument("recurrence_eval: error vector length must be n-1");

    S p = S(1) / S(2);
    S q = S(1) / S(2);
    for (int i = 1; i <= n; ++i) {
        S factor = S(1);
        if (i >= 2) {
            const SplitDisposition d = ev.entries[i - 2];
            const S eps = ev.template epsilon_at<S>(i - 2);
            if (d == SplitDisposition::Plus) factor = S(1) + eps;
            if (d == SplitDisposition::Minus) factor = S(1) - eps;
        }
        const S weight = (i == 1) ? S(1) / S(2) : pow2<S>(i - 2);
        const S r = (i == 1) ? S(0) : S(plan.reagents[i - 2].cf_value());
        p = p * factor + weight * r;
        q = q * factor + weight;
    }
    return {p / q, q / pow2<S>(n - 1)};
}

/// CF-error (ideal minus erroneous) at the next mix-split when the droplet
/// arriving with intermediate CF c carries a signed volumetric error eps
/// (positive = larger than 1X): eps*(1-c)/(4+2*eps) for a sample mix,
/// -eps*c/(4+2*eps) for a buffer mix.
template <class S>
S closed_form_single_error(const S& c, const S& eps, Reagent reagent) {
    const S denom = S(4) + S(2) * eps;
    if (reagent.kind == ReagentKind::Sample)
        return eps * (S(1) - c) / denom;
    return -(eps * c) / denom;
}

namespace detail {

template <class S>
SplitDisposition disposition_of_sign(const S& eps) {
    if (eps > S(0)) return SplitDisposition::Plus;
    if (eps < S(0)) return SplitDisposition::Minus;
    return SplitDisposition::Skip;
}

template <class S>
S abs_value(const S& v) {
    return v < S(0) ? S(-v) : v;
}

/// Kept daughter of an ideal-parent split realizing a signed incoming
/// error: a (c, 2) parent split so the carried daughter has volume 1+eps.
template <class S>
DropletState<S> erroneous_daughter(const S& c, const S& eps) {
    DropletState<S> parent{c, S(2)};
    return split_op(parent, disposition_of_sign(eps), abs_value(eps)).first;
}

}  // namespace detail

/// Engine composition behind closed_form_single_error: split, then mix,
/// then compare with the ideal next CF. Used by tests as the second route.
template <class S>
S single_error_by_composition(const S& c, const S& eps, Reagent reagent) {
    const DropletState<S> mixed = mix_op(detail::erroneous_daughter(c, eps), reagent);
    const S ideal = (c + S(reagent.cf_value())) / S(2);
    return ideal - mixed.concentration;
}

/// CF-error after three consecutive erroneous mix-split steps with signed
/// errors eps[k] and reagents r[k], evaluated by composing mix_op/split_op
/// and subtracting the ideal three-step CF (c + r1 + 2*r2 + 4*r3)/8.
template <class S>
S closed_form_triple_error(const S& c, const std::array<S, 3>& eps,
                           const std::array<Reagent, 3>& reagents) {
    DropletState<S> carried = detail::erroneous_daughter(c, eps[0]);
    DropletState<S> post = mix_op(carried, reagents[0]);
    for (int k = 1; k < 3; ++k) {
        carried = split_op(post, detail::disposition_of_sign(eps[k]),
                           detail::abs_value(eps[k]))
                      .first;
        post = mix_op(carried, reagents[k]);
    }
    const S ideal = (c + S(reagents[0].cf_value()) + S(2) * S(reagents[1].cf_value()) +
                     S(4) * S(reagents[2].cf_value())) /
                    S(8);
    return ideal - post.concentration;
}

}  // namespace dmf
