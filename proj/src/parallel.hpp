#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace tori {

// Runs fn(i) for i in [0, n) on up to `workers` threads. Results come back in
// index order, so callers that merge them in order stay deterministic.
template <class T>
std::vector<T> parallel_map(int n, int workers, const std::function<T(int)>& fn) {
    std::vector<T> out(static_cast<std::size_t>(n));
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(n));
    auto run = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers && w < n; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    // first failure by index, not by timing
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace tori
