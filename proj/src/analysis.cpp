#include "dmf/analysis.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

namespace dmf {

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DMF_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace detail {

namespace {

struct ChunkBest {
    double err = -1.0;
    std::uint64_t pos = 0;
};

// Scans [begin, end) with the dispatched kernel; deterministic because the
// winner depends only on per-position values and the lowest-position tie
// rule, not on chunk boundaries.
ChunkBest scan_range(const kernels::SignSpaceInput& input, double target,
                     double scale, std::uint64_t begin, std::uint64_t end) {
    constexpr std::uint64_t kBlock = 4096;
    const kernels::SignSpaceFn kernel = kernels::active_kernel();
    std::vector<double> buffer(kBlock);
    ChunkBest best;
    for (std::uint64_t b = begin; b < end; b += kBlock) {
        const std::uint64_t e = std::min(end, b + kBlock);
        kernel(input, b, e, buffer.data());
        for (std::uint64_t pos = b; pos < e; ++pos) {
            const double err = std::fabs(buffer[pos - b] - target) * scale;
            if (err > best.err) {
                best.err = err;
                best.pos = pos;
            }
        }
    }
    return best;
}

}  // namespace

std::pair<double, std::uint64_t> scan_sign_space_double(const MixSplitPlan& plan,
                                                        double epsilon,
                                                        int threads) {
    const int k = plan.op_count() - 1;
    kernels::SignSpaceInput input;
    input.epsilon = epsilon;
    input.reagent_cf.reserve(k);
    for (const Reagent& r : plan.reagents)
        input.reagent_cf.push_back(static_cast<double>(r.cf_value()));

    const double target = plan.target.value<double>();
    const double scale = pow2<double>(plan.target.accuracy);
    const std::uint64_t total = std::uint64_t{1} << k;

    const int nthreads =
        static_cast<int>(std::min<std::uint64_t>(resolve_thread_count(threads),
                                                 std::max<std::uint64_t>(total / 1024, 1)));
    if (nthreads <= 1) {
        const ChunkBest best = scan_range(input, target, scale, 0, total);
        return {best.err, best.pos};
    }

    std::vector<ChunkBest> results(nthreads);
    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    const std::uint64_t chunk = (total + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        const std::uint64_t begin = chunk * t;
        const std::uint64_t end = std::min(total, begin + chunk);
        workers.emplace_back([&, t, begin, end] {
            if (begin < end) results[t] = scan_range(input, target, scale, begin, end);
        });
    }
    for (auto& w : workers) w.join();

    // Chunks are in ascending position order; ">" keeps the lowest position
    // on ties.
    ChunkBest best;
    for (const ChunkBest& r : results)
        if (r.err > best.err) best = r;
    return {best.err, best.pos};
}

}  // namespace detail

}  // namespace dmf
