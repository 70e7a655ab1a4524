#ifndef NLAB_PARALLEL_HPP
#define NLAB_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace nlab::par {

// Worker count: hardware concurrency, capped by NONLOCALITY_THREADS if set.
inline int thread_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("NONLOCALITY_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

// Runs body(i) for i in [0, n). Work items must be independent; results are
// typically written into preallocated slots so the fold is order-independent.
template <class F>
void parallel_for(long n, F&& body) {
    const int workers = thread_count();
    if (workers <= 1 || n < 2) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::atomic<long> next{0};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                long i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace nlab::par

#endif
