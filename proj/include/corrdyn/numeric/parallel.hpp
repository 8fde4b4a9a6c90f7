#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace corrdyn::numeric {

// Default worker count: CORRDYN_THREADS if set, else hardware concurrency.
unsigned default_threads();
void set_default_threads(unsigned n);

// Runs body(i) for i in [0, n). Callers write into preallocated slots indexed
// by i, so results never depend on the schedule. The first exception thrown by
// any body is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t n, Body&& body, unsigned threads = default_threads()) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::jthread> pool;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    for (unsigned t = 0; t + 1 < count; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (error) std::rethrow_exception(error);
}

}  // namespace corrdyn::numeric
