#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace monobandit {

// Runs body(0..count-1) over a fixed-size worker pool. Work items must be
// independent; whoever aggregates their outputs owns the ordering, so results
// do not depend on the pool size. parallelism <= 0 means hardware concurrency.
inline void parallel_for(std::size_t count, int parallelism,
                         const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    std::size_t workers = parallelism > 0
                              ? static_cast<std::size_t>(parallelism)
                              : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, count);

    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace monobandit
