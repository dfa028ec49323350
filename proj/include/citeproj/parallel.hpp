#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace citeproj {

/// Runs body(0..count-1) across up to `jobs` threads. Callers get determinism
/// by writing results into preallocated index-addressed slots; the schedule
/// itself is unordered. jobs <= 1 runs inline. The first exception thrown by
/// any body is rethrown after all workers finish.
inline void parallel_for(std::size_t count, unsigned jobs,
                         const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    if (jobs <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::size_t n_threads = std::min<std::size_t>(jobs, count);
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace citeproj
