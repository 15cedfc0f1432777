#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace hetlab {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Tasks must be
// independent and write only to their own slot; output ordering is then
// by index and identical for any worker count.
template <class Fn>
void parallel_for_indexed(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned workers = std::min<std::size_t>(threads, n);
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace hetlab
