#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace polyprop {

/// Thread cap for matvec kernels: POLYPROP_THREADS if set to a positive
/// integer, otherwise std::thread::hardware_concurrency().
inline unsigned matvec_threads() {
    if (const char* env = std::getenv("POLYPROP_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Split [0, n) into contiguous chunks and run body(first, last) on each.
///
/// Chunks are fixed by (n, thread count) alone. Callers write disjoint output
/// ranges and do no cross-chunk reductions, so results do not depend on
/// scheduling.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t min_parallel = std::size_t{1} << 15) {
    const unsigned threads = matvec_threads();
    if (threads <= 1 || n < min_parallel) {
        body(std::size_t{0}, n);
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(threads, n);
    const std::size_t step = (n + chunks - 1) / chunks;
    std::vector<std::jthread> pool;
    pool.reserve(chunks - 1);
    for (std::size_t c = 1; c < chunks; ++c) {
        const std::size_t first = c * step;
        const std::size_t last = std::min(n, first + step);
        if (first >= last) break;
        pool.emplace_back([&body, first, last] { body(first, last); });
    }
    body(std::size_t{0}, std::min(n, step));
}

}  // namespace polyprop
