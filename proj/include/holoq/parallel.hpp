#pragma once

#include <exception>
#include <thread>
#include <vector>

namespace holoq {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. fn must be safe to
/// call concurrently for distinct indices; output ordering is the caller's
/// concern (write into a pre-sized slot per index). The first exception, if
/// any, is rethrown on the calling thread.
template <typename F>
inline void parallel_for_indices(std::size_t count, unsigned jobs, F&& fn) {
    if (count == 0) return;
    const unsigned workers =
        std::min<unsigned>(jobs == 0 ? 1 : jobs, static_cast<unsigned>(count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace holoq
