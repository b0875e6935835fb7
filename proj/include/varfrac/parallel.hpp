#pragma once

#include <atomic>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace varfrac {

// Global worker count for pair sweeps; 0 resolves to the hardware count.
inline int& thread_count() {
    static int n = 1;
    return n;
}

inline void set_threads(int n) {
    thread_count() = n == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : n;
}

namespace detail {

constexpr std::size_t kBlock = 1 << 16;

}  // namespace detail

// Sum of per-block partial results over [0, n). Blocks have a fixed size
// independent of the worker count and partial sums are combined in ascending
// block order, so the result is bitwise identical for every thread count.
template <class BlockFn>
double blocked_sum(std::size_t n, BlockFn&& block, std::size_t block_size = detail::kBlock) {
    const std::size_t n_blocks = (n + block_size - 1) / block_size;
    const int workers = thread_count();
    if (workers <= 1 || n_blocks <= 1) {
        double s = 0.0;
        for (std::size_t b = 0; b < n_blocks; ++b)
            s += block(b * block_size, std::min(n, (b + 1) * block_size));
        return s;
    }
    std::vector<double> partial(n_blocks, 0.0);
    std::vector<std::future<void>> tasks;
    std::atomic<std::size_t> next{0};
    const int spawn = std::min<int>(workers, static_cast<int>(n_blocks));
    tasks.reserve(static_cast<std::size_t>(spawn));
    for (int t = 0; t < spawn; ++t)
        tasks.push_back(std::async(std::launch::async, [&] {
            for (;;) {
                const std::size_t b = next.fetch_add(1);
                if (b >= n_blocks) return;
                partial[b] = block(b * block_size, std::min(n, (b + 1) * block_size));
            }
        }));
    for (auto& t : tasks) t.get();
    double s = 0.0;
    for (const double v : partial) s += v;
    return s;
}

}  // namespace varfrac
