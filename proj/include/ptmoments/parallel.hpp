// Minimal deterministic work-sharing: a fixed chunk grid with an atomic
// cursor. Workers own local accumulators; callers merge them in chunk-index
// order (or commutatively, for integer counts), so results never depend on
// the number of threads.

#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ptmoments {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Runs fn(chunk_index) for chunk_index in [0, chunks) on `threads` workers.
template <typename Fn>
void parallel_for_chunks(std::uint64_t chunks, unsigned threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || chunks <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::uint64_t> cursor{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto worker = [&] {
        try {
            for (;;) {
                std::uint64_t c = cursor.fetch_add(1, std::memory_order_relaxed);
                if (c >= chunks) return;
                fn(c);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!first_error) first_error = std::current_exception();
            cursor.store(chunks, std::memory_order_relaxed);  // drain remaining work
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ptmoments
