#ifndef SHIELDSIM_PARALLEL_HPP
#define SHIELDSIM_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace shieldsim {

// Worker count: SHIELDSIM_WORKERS overrides, otherwise hardware concurrency.
inline unsigned worker_count() {
    if (const char *env = std::getenv("SHIELDSIM_WORKERS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1)
            return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(i) for i in [0, count) on a small pool. Each index owns its seed
// and output slot, so the result is independent of scheduling.
template <typename Fn> void parallel_for(std::size_t count, Fn &&fn) {
    const unsigned workers = worker_count();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                fn(i);
            }
        });
    }
    for (auto &t : pool)
        t.join();
}

} // namespace shieldsim

#endif
