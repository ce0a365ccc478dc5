// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace rmt {

/// Worker cap: RMT_SENSE_THREADS if set (>= 1), else hardware concurrency.
inline unsigned max_threads() {
    if (const char* env = std::getenv("RMT_SENSE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<unsigned>(v > 256 ? 256 : v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1u;
}

/// Runs body(i) for i in [0, count). Bodies must write disjoint state; the
/// schedule is dynamic, so results must not depend on completion order.
/// The first exception thrown by a body is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& body) {
    const std::size_t workers = std::min<std::size_t>(max_threads(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace rmt
