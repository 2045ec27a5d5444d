#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace ahasp {

// Runs fn(i) for i in [0, count) over `threads` workers. Each index is
// claimed atomically, so callers must make fn(i) independent of order;
// results should be written into pre-sized slots keyed by i.
template <typename Fn>
void parallel_for_index(size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

inline unsigned hardware_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

}  // namespace ahasp
