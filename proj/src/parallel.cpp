#include "hoikit/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace hoikit {

namespace {
std::atomic<unsigned> g_max_threads{0};
}

void set_max_threads(unsigned n) { g_max_threads.store(n); }

unsigned max_threads() {
    unsigned cap = g_max_threads.load();
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return cap == 0 ? hw : std::min(cap, hw);
}

namespace detail {

void parallel_for_impl(size_t n, const std::function<void(size_t, size_t)>& run_range) {
    const unsigned workers = static_cast<unsigned>(
        std::min<size_t>(max_threads(), std::max<size_t>(1, n / 256)));
    if (workers <= 1 || n < 512) {
        run_range(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const size_t begin = static_cast<size_t>(w) * chunk;
        const size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&run_range, begin, end] { run_range(begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

}  // namespace hoikit
