#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace rotforge {

/// Worker cap: ROTFORGE_THREADS if set, else hardware concurrency.
inline int thread_cap() {
    if (const char* env = std::getenv("ROTFORGE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Index-chunked parallel loop. Results must be written to preallocated,
/// index-owned slots so the outcome is independent of scheduling.
inline void parallel_for(size_t n, const std::function<void(size_t)>& body) {
    int workers = thread_cap();
    if (workers <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    workers = static_cast<int>(std::min<size_t>(workers, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace rotforge
