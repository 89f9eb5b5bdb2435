#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace gwkit {

/// Runs body(i) for i in [0, count) over at most `threads` workers using
/// static contiguous chunks. Each index is visited exactly once, so writes to
/// per-index slots are race-free and results do not depend on the thread
/// count. The body must not throw.
template <typename Body>
void parallel_for(std::size_t count, std::size_t threads, Body&& body) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    threads = std::min(threads, count);
    const std::size_t chunk = (count + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(lo + chunk, count);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace gwkit
