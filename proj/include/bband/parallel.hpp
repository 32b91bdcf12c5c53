#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bband {

/// Runs fn(0..tasks-1) on up to `jobs` threads. Tasks are claimed in index
/// order; the first exception is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t tasks, int jobs, Fn&& fn)
{
    const auto workers = std::min(static_cast<std::size_t>(std::max(1, jobs)), tasks);
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (auto i = next.fetch_add(1); i < tasks; i = next.fetch_add(1)) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace bband
