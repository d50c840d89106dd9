// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace gridfst {

inline int default_threads() {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Runs fn(0..n-1), work-stealing by atomic counter. fn must only touch
// its own slot of any shared output. n_threads <= 0 means all cores.
inline void parallel_for(std::int64_t n, int n_threads, const std::function<void(std::int64_t)>& fn) {
    if (n_threads <= 0) n_threads = default_threads();
    if (n_threads <= 1 || n <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<std::int64_t>(n_threads, n));
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::int64_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace gridfst
