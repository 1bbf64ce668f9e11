#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lindet {

/// Resolves a requested worker count; 0 means "all hardware threads".
inline std::size_t effective_workers(std::size_t requested, std::size_t count) {
    std::size_t w = requested == 0 ? std::max<std::size_t>(1, std::thread::hardware_concurrency()) : requested;
    return std::max<std::size_t>(1, std::min(w, count));
}

/**
 * Calls fn(worker, index) for every index in [0, count), splitting the range
 * into contiguous blocks, one per worker. The first exception thrown by any
 * worker is rethrown on the calling thread.
 *
 * Results must be written to per-index or per-worker slots; reductions over
 * them are then independent of the worker count as long as they run in index
 * order (or are exact, like integer sums).
 */
template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
    const std::size_t w = effective_workers(workers, count);
    if (w <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(std::size_t{0}, i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (std::size_t k = 0; k < w; ++k) {
        const std::size_t begin = count * k / w;
        const std::size_t end = count * (k + 1) / w;
        threads.emplace_back([&, k, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(k, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace lindet
