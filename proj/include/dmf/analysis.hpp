#pragma once

#include "dmf/engine.hpp"
#include "dmf/error_vector.hpp"
#include "dmf/kernels.hpp"
#include "dmf/plan.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace dmf {

/// Worker threads used by worst_case/sweep; 0 means "default", i.e. the
/// DMF_THREADS environment variable or the hardware concurrency.
int resolve_thread_count(int requested);

template <class S>
struct EnumerationRow {
    ErrorVector vector;
    S produced_cf;
    S cf_error;          // signed, produced - target
    S scaled_abs_error;  // |cf_error| * 2^n
    bool within_tolerance{};
    std::uint64_t gray_position{};  // ordinal index in skip-inclusive spaces
};

template <class S>
struct CriticalityEntry {
    int step{};
    S larger_error;   // scaled signed error when the larger daughter is kept
    S smaller_error;  // ... when the smaller daughter is kept
    bool critical{};
};

template <class S>
using CriticalityReport = std::vector<CriticalityEntry<S>>;

template <class S>
struct SweepRow {
    TargetCF target;
    S max_scaled_error;
    ErrorVector argmax_vector;
};

template <class S>
struct WorstCase {
    S max_scaled_abs_error;
    ErrorVector argmax;
};

namespace detail {

template <class S>
S default_tolerance(int accuracy) {
    return S(1) / pow2<S>(accuracy + 1);
}

/// Sign assignment over a position subset, gray-ordered. The entry for the
/// lowest active position is the most significant gray bit, so for the full
/// position set the row index equals gray_position of the vector.
inline std::vector<SplitDisposition> subset_signs(std::uint64_t gray_pos,
                                                  const std::vector<int>& positions,
                                                  int length) {
    std::vector<SplitDisposition> entries(length, SplitDisposition::Skip);
    const int k = static_cast<int>(positions.size());
    const std::uint64_t gray_word = gray_pos ^ (gray_pos >> 1);
    for (int j = 0; j < k; ++j) {
        const bool minus = (gray_word >> (k - 1 - j)) & 1u;
        entries[positions[j] - 1] =
            minus ? SplitDisposition::Minus : SplitDisposition::Plus;
    }
    return entries;
}

/// {Skip, Plus, Minus} assignment at a base-3 ordinal, first active
/// position most significant, digit order skip < plus < minus.
inline std::vector<SplitDisposition> subset_ternary(std::uint64_t ordinal,
                                                    const std::vector<int>& positions,
                                                    int length) {
    static constexpr SplitDisposition kDigits[3] = {
        SplitDisposition::Skip, SplitDisposition::Plus, SplitDisposition::Minus};
    std::vector<SplitDisposition> entries(length, SplitDisposition::Skip);
    for (int j = static_cast<int>(positions.size()) - 1; j >= 0; --j) {
        entries[positions[j] - 1] = kDigits[ordinal % 3];
        ordinal /= 3;
    }
    return entries;
}

inline std::vector<int> full_positions(int length) {
    std::vector<int> p(length);
    for (int i = 0; i < length; ++i) p[i] = i + 1;
    return p;
}

inline void validate_positions(const std::vector<int>& positions, int length) {
    if (positions.empty())
        throw std::invalid_argument("enumerate: empty position set");
    if (!std::is_sorted(positions.begin(), positions.end()) ||
        std::adjacent_find(positions.begin(), positions.end()) != positions.end())
        throw std::invalid_argument("enumerate: positions must be sorted and unique");
    if (positions.front() < 1 || positions.back() > length)
        throw std::invalid_argument("enumerate: position out of range 1..n-1");
}

template <class S>
S abs_of(const S& v) {
    return v < S(0) ? S(-v) : v;
}

}  // namespace detail

/// All error vectors over the given split positions: 2^k sign assignments
/// in gray order, or 3^k {+,-,skip} assignments (lexicographic, skip<+<-)
/// when include_skip. Off-position entries are always skip. Rows are tagged
/// within_tolerance under the strict comparison |cf_error| < tolerance.
template <class S>
std::vector<EnumerationRow<S>> enumerate_vectors(
    const MixSplitPlan& plan, Epsilon epsilon, std::vector<int> positions,
    bool include_skip = false, std::optional<S> tolerance = std::nullopt) {
    const int length = plan.op_count() - 1;
    detail::validate_positions(positions, length);
    const S tol = tolerance.value_or(detail::default_tolerance<S>(plan.target.accuracy));
    const S scale = pow2<S>(plan.target.accuracy);

    const int k = static_cast<int>(positions.size());
    std::uint64_t count = 1;
    for (int j = 0; j < k; ++j) count *= include_skip ? 3u : 2u;

    std::vector<EnumerationRow<S>> rows;
    rows.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        ErrorVector ev;
        ev.epsilon = epsilon;
        ev.entries = include_skip ? detail::subset_ternary(idx, positions, length)
                                  : detail::subset_signs(idx, positions, length);
        const auto sim = simulate<S>(plan, ev);
        EnumerationRow<S> row{std::move(ev),
                              sim.produced_cf,
                              sim.cf_error,
                              detail::abs_of(sim.cf_error) * scale,
                              false,
                              idx};
        row.within_tolerance = detail::abs_of(row.cf_error) < tol;
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace detail {

/// Streaming scan of the full sign space with the dispatched batch kernel;
/// double backend only. Returns (max scaled |error|, argmax gray position).
std::pair<double, std::uint64_t> scan_sign_space_double(const MixSplitPlan& plan,
                                                        double epsilon,
                                                        int threads);

}  // namespace detail

/// Exhaustive worst case over the full vector space. Ties break to the
/// lowest gray position (sign space) or lowest ternary ordinal
/// (skip-inclusive space), so results are identical across thread counts.
template <class S>
WorstCase<S> worst_case(const MixSplitPlan& plan, Epsilon epsilon,
                        bool include_skip = false, int threads = 0) {
    const int length = plan.op_count() - 1;
    if (length == 0) {
        return {S(0), ErrorVector::all_skip(0, epsilon)};
    }
    if constexpr (std::is_same_v<S, double>) {
        if (!include_skip) {
            auto [err, pos] = detail::scan_sign_space_double(
                plan, epsilon.as<double>(), threads);
            ErrorVector ev;
            ev.epsilon = epsilon;
            ev.entries = signs_at_gray_position(pos, length);
            return {err, std::move(ev)};
        }
    }
    const auto positions = detail::full_positions(length);
    std::uint64_t count = 1;
    for (int j = 0; j < length; ++j) count *= include_skip ? 3u : 2u;

    S best_err = S(0);
    std::uint64_t best_idx = 0;
    const S scale = pow2<S>(plan.target.accuracy);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        ErrorVector ev;
        ev.epsilon = epsilon;
        ev.entries = include_skip ? detail::subset_ternary(idx, positions, length)
                                  : detail::subset_signs(idx, positions, length);
        const auto sim = simulate<S>(plan, ev);
        const S err = detail::abs_of(sim.cf_error) * scale;
        if (idx == 0 || err > best_err) {
            best_err = err;
            best_idx = idx;
        }
    }
    ErrorVector ev;
    ev.epsilon = epsilon;
    ev.entries = include_skip
                     ? detail::subset_ternary(best_idx, positions, length)
                     : detail::subset_signs(best_idx, positions, length);
    return {best_err, std::move(ev)};
}

/// Simulates the two single-error vectors at each step; a step is critical
/// when either scaled |error| reaches the tolerance (the complement of the
/// strict within-tolerance test).
template <class S>
CriticalityReport<S> classify_critical_steps(
    const MixSplitPlan& plan, Epsilon epsilon,
    std::optional<S> tolerance = std::nullopt) {
    const int length = plan.op_count() - 1;
    const S tol_scaled = tolerance.value_or(detail::default_tolerance<S>(
                             plan.target.accuracy)) *
                         pow2<S>(plan.target.accuracy);
    CriticalityReport<S> report;
    report.reserve(length);
    for (int step = 1; step <= length; ++step) {
        ErrorVector ev = ErrorVector::all_skip(length, epsilon);
        ev.entries[step - 1] = SplitDisposition::Plus;
        const S larger = simulate<S>(plan, ev).scaled_error;
        ev.entries[step - 1] = SplitDisposition::Minus;
        const S smaller = simulate<S>(plan, ev).scaled_error;
        const bool critical = !(detail::abs_of(larger) < tol_scaled) ||
                              !(detail::abs_of(smaller) < tol_scaled);
        report.push_back({step, larger, smaller, critical});
    }
    return report;
}

/// Worst case for every odd numerator at the given accuracy (sign space).
template <class S>
std::vector<SweepRow<S>> sweep_targets(int accuracy, Epsilon epsilon,
                                       int threads = 0) {
    if (accuracy < 2)
        throw std::invalid_argument("sweep_targets: accuracy must be >= 2");
    std::vector<SweepRow<S>> rows;
    rows.reserve(std::size_t{1} << (accuracy - 1));
    for (std::int64_t x = 1; x < (std::int64_t{1} << accuracy); x += 2) {
        const auto plan = build_plan(TargetCF::make(x, accuracy));
        auto wc = worst_case<S>(plan, epsilon, false, threads);
        rows.push_back({plan.target, wc.max_scaled_abs_error, std::move(wc.argmax)});
    }
    return rows;
}

}  // namespace dmf
