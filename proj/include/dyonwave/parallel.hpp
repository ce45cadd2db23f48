// parallel.hpp - deterministic range splitting over worker threads
//
// Every kernel handed to parallelFor writes disjoint outputs and performs no
// cross-chunk reduction, so results are bitwise independent of the thread
// count. Reductions (norms, sums) stay serial.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace dyonwave {

namespace detail {
inline std::atomic<unsigned>& threadSetting() {
    static std::atomic<unsigned> value{1};
    return value;
}
} // namespace detail

inline void setThreadCount(unsigned n) { detail::threadSetting() = std::max(1u, n); }
inline unsigned threadCount() { return detail::threadSetting(); }

/// Below this many work items the call runs inline.
inline constexpr std::size_t kParallelGrain = 1u << 15;

template <class Fn>
void parallelFor(std::size_t count, Fn&& fn) {
    const unsigned workers = threadCount();
    if (workers <= 1 || count < kParallelGrain) {
        fn(std::size_t{0}, count);
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(workers, count);
    const std::size_t per = (count + chunks - 1) / chunks;
    std::vector<std::thread> pool;
    pool.reserve(chunks - 1);
    for (std::size_t c = 1; c < chunks; ++c) {
        const std::size_t b = c * per;
        const std::size_t e = std::min(count, b + per);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    fn(std::size_t{0}, std::min(count, per));
    for (auto& t : pool) t.join();
}

} // namespace dyonwave
