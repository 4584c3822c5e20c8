#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace voxpath {

// Worker count: hardware concurrency capped by VOXPATH_THREADS when set.
inline std::size_t worker_threads() {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("VOXPATH_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1 && static_cast<std::size_t>(v) < n) n = static_cast<std::size_t>(v);
    }
    return n;
}

// Static block partition; fn must write only to its own slot i.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(worker_threads(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace voxpath
