#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace combicalc {

inline std::atomic<unsigned>& detail_max_threads() {
    static std::atomic<unsigned> n{1};
    return n;
}

/// Cap on worker threads used by data-parallel loops (whirl, discretize).
/// Results are written by index, so output is identical for any cap.
inline void set_max_threads(unsigned n) { detail_max_threads().store(n == 0 ? 1 : n); }
inline unsigned max_threads() { return detail_max_threads().load(); }

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    unsigned nthreads = max_threads();
    if (nthreads > count) nthreads = static_cast<unsigned>(count);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    for (unsigned t = 0; t < nthreads; ++t) {
        std::size_t lo = count * t / nthreads;
        std::size_t hi = count * (t + 1) / nthreads;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace combicalc
