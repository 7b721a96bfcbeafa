#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace arcade {

// Runs fn(i) for i in [0, count) across `workers` threads. Results are
// collected per index, so the merged output is identical for any worker
// count; exceptions are rethrown on the caller thread.
template <typename T, typename Fn>
std::vector<T> run_indexed_tasks(std::size_t count, int workers, Fn&& fn) {
    std::vector<T> results(count);
    if (count == 0) return results;
    if (workers < 1) workers = 1;
    std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(nthreads);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t)
        pool.emplace_back([&, t] {
            try {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= count) break;
                    results[i] = fn(i);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

} // namespace arcade
