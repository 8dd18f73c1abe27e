#pragma once

#include <cstddef>

#include <functional>

namespace hoikit {

/// Caps the number of worker threads used by parallel_for. 0 restores the
/// hardware default. Outputs never depend on the thread count: workers only
/// write to disjoint per-index slots.
void set_max_threads(unsigned n);
unsigned max_threads();

namespace detail {
void parallel_for_impl(size_t n, const std::function<void(size_t, size_t)>& run_range);
}

template <typename F>
void parallel_for(size_t n, F&& body) {
    detail::parallel_for_impl(n, [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) body(i);
    });
}

}  // namespace hoikit
