#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mscluster {

inline int resolve_threads(int threads) {
    if (threads > 0)
        return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [begin, end) across the given number of workers.
// Work items are claimed dynamically; every item must write only its own
// output slots, which keeps results independent of scheduling.
template <typename Fn>
void parallel_for(int begin, int end, int threads, Fn&& fn) {
    const int count = end - begin;
    if (count <= 0)
        return;
    threads = resolve_threads(threads);
    if (threads <= 1 || count == 1) {
        for (int i = begin; i < end; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{begin};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        try {
            for (;;) {
                const int i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= end)
                    return;
                fn(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error)
                error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    const int n_workers = std::min(threads, count);
    pool.reserve(n_workers - 1);
    for (int w = 1; w < n_workers; ++w)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace mscluster
