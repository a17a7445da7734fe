#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bethecorr {

// Worker count for a batch of njobs independent tasks: hardware concurrency,
// capped by the BETHECORR_THREADS environment variable and by the job count.
inline int worker_count(int njobs) {
    if (njobs <= 1) return 1;
    const unsigned hw = std::thread::hardware_concurrency();
    int w = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("BETHECORR_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) w = static_cast<int>(std::min<long>(v, 1024));
    }
    return std::min(w, njobs);
}

// Runs body(i) for i in [0, n) on a static partition of the index range.
// Bodies must write to disjoint slots, which makes the result independent of
// the worker count. The first exception thrown by any body is rethrown on
// the calling thread after all workers join.
template <typename F>
void parallel_for(int n, F&& body) {
    const int w = worker_count(n);
    if (w <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::mutex gate;
    std::exception_ptr first;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(w));
    for (int t = 0; t < w; ++t) {
        const int lo = static_cast<int>(static_cast<long>(n) * t / w);
        const int hi = static_cast<int>(static_cast<long>(n) * (t + 1) / w);
        pool.emplace_back([&, lo, hi] {
            try {
                for (int i = lo; i < hi; ++i) body(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(gate);
                if (!first) first = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

} // namespace bethecorr
