#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace critsqueeze {

/// Calls body(i) for every i in [0, count) using up to `workers` threads.
/// Work is handed out by index; callers write results into per-index slots
/// and reduce afterwards in index order, so output never depends on the
/// worker count. The exception thrown for the lowest index is rethrown.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
    if (count == 0) return;
    const std::size_t threads = std::clamp<std::size_t>(workers, 1, count);
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::size_t error_index = count;

    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };

    {
        std::vector<std::jthread> pool;
        pool.reserve(threads - 1);
        for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(run);
        run();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace critsqueeze
