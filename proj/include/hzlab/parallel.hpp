#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace hzlab {

inline unsigned effective_threads(unsigned requested) {
    return requested == 0 ? 1u : requested;
}

// Runs fn(block) for block = 0..n_blocks-1 on up to `threads` workers.
// Callers make each block write to its own slot, so the result is
// independent of scheduling.
inline void run_blocks(std::int64_t n_blocks, unsigned threads,
                       const std::function<void(std::int64_t)>& fn) {
    threads = effective_threads(threads);
    if (threads <= 1 || n_blocks <= 1) {
        for (std::int64_t b = 0; b < n_blocks; ++b) fn(b);
        return;
    }
    if (static_cast<std::int64_t>(threads) > n_blocks) {
        threads = static_cast<unsigned>(n_blocks);
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::int64_t b = next.fetch_add(1);
                if (b >= n_blocks) break;
                try {
                    fn(b);
                } catch (...) {
                    bool expected = false;
                    if (failed.compare_exchange_strong(expected, true)) {
                        first_error = std::current_exception();
                    }
                    break;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hzlab
