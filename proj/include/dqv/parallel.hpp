#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace dqv {

inline int resolve_workers(int workers) {
    if (workers > 0) return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs `trial(i)` for i in [0, trials) on `workers` threads and counts how
// many return true. Trials are split into contiguous blocks; since every
// trial derives its randomness from its own index, the count is the same
// for any worker count.
template <typename TrialFn>
std::int64_t count_successes(std::int64_t trials, int workers, TrialFn&& trial) {
    workers = resolve_workers(workers);
    if (workers == 1 || trials < 2 * workers) {
        std::int64_t hits = 0;
        for (std::int64_t i = 0; i < trials; ++i)
            if (trial(i)) ++hits;
        return hits;
    }
    std::atomic<std::int64_t> hits{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t block = (trials + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        const std::int64_t lo = t * block;
        const std::int64_t hi = lo + block < trials ? lo + block : trials;
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            std::int64_t local = 0;
            for (std::int64_t i = lo; i < hi; ++i)
                if (trial(i)) ++local;
            hits.fetch_add(local, std::memory_order_relaxed);
        });
    }
    for (auto& th : pool) th.join();
    return hits.load();
}

} // namespace dqv
