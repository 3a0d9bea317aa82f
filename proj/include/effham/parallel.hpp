#ifndef EFFHAM_PARALLEL_HPP
#define EFFHAM_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace effham {

/// Worker count for parallel reductions: EFFHAM_THREADS caps it, hardware
/// concurrency is the default.
inline int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("EFFHAM_THREADS")) {
        int requested = std::atoi(env);
        if (requested >= 1 && requested < hw) return requested;
        if (requested >= 1) return requested;
    }
    return hw;
}

/// Splits [0, count) into contiguous chunks, runs `work(begin, end, slot)`
/// on each, then `merge(slot)` in slot order. Results are deterministic as
/// long as `work` only touches its own slot.
inline void parallel_chunks(long long count, const std::function<void(long long, long long, int)>& work,
                            const std::function<void(int)>& merge) {
    int workers = worker_count();
    if (count < 2 || workers < 2) {
        work(0, count, 0);
        merge(0);
        return;
    }
    if (workers > count) workers = static_cast<int>(count);
    std::vector<std::thread> threads;
    long long chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        long long begin = w * chunk;
        long long end = std::min(count, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back(work, begin, end, w);
    }
    int used = static_cast<int>(threads.size());
    for (auto& t : threads) t.join();
    for (int w = 0; w < used; ++w) merge(w);
}

}  // namespace effham

#endif  // EFFHAM_PARALLEL_HPP
