#pragma once
// Deterministic parallel reduction: work is split into a fixed number of
// partitions independent of the thread count, each partition is summed with
// compensated (Neumaier) accumulation, and partial results are merged in a
// fixed binary-tree order. The result is bitwise identical for any number of
// threads.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace qmc {

struct NeumaierSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x)) c += (s - t) + x;
        else                            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? (int)hc : 1;
}

constexpr uint32_t kFixedPartitions = 256;

// Sums block_fn(p) over p = 0..parts-1. block_fn must compute its partition's
// contribution deterministically (it is called exactly once per partition).
// Partial sums are merged pairwise in index order regardless of threads.
inline double deterministic_block_sum(uint32_t parts, int threads,
                                      const std::function<double(uint32_t)>& block_fn) {
    std::vector<double> partial(parts, 0.0);
    threads = resolve_thread_count(threads);
    if (threads <= 1) {
        for (uint32_t p = 0; p < parts; ++p) partial[p] = block_fn(p);
    } else {
        std::atomic<uint32_t> next{0};
        auto worker = [&] {
            for (;;) {
                uint32_t p = next.fetch_add(1);
                if (p >= parts) break;
                partial[p] = block_fn(p);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    // fixed binary-tree merge
    std::vector<double> level(partial);
    while (level.size() > 1) {
        std::vector<double> up((level.size() + 1) / 2, 0.0);
        for (size_t i = 0; i + 1 < level.size(); i += 2) up[i / 2] = level[i] + level[i + 1];
        if (level.size() % 2) up.back() = level.back();
        level.swap(up);
    }
    return level.empty() ? 0.0 : level[0];
}

// Convenience: partition rows 0..N-1 into kFixedPartitions contiguous ranges
// and sum row_fn over each range with Neumaier accumulation inside the range.
// row_fn(n) must return the full inner-sum contribution of row n.
inline double deterministic_pair_sum(uint64_t N, int threads,
                                     const std::function<double(uint64_t)>& row_fn) {
    uint32_t parts = kFixedPartitions;
    auto block = [&](uint32_t p) -> double {
        uint64_t lo = (N * p) / parts;
        uint64_t hi = (N * (p + 1)) / parts;
        NeumaierSum acc;
        for (uint64_t n = lo; n < hi; ++n) acc.add(row_fn(n));
        return acc.value();
    };
    return deterministic_block_sum(parts, threads, block);
}

}  // namespace qmc
