#pragma once
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace pntlab {

inline unsigned resolve_threads(unsigned requested) noexcept {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : (hw > 16 ? 16 : hw);
}

// Run fn(block) for block = 0..n_blocks-1 on a small pool.  Each block
// writes only to its own slot, so reductions stay deterministic: the
// caller combines the slots in index order afterwards.
template <class Fn>
void parallel_for_blocks(std::uint64_t n_blocks, unsigned threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n_blocks <= 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) fn(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    const unsigned workers = static_cast<unsigned>(
        n_blocks < threads ? n_blocks : threads);
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i)
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
                if (b >= n_blocks) break;
                fn(b);
            }
        });
    for (auto& th : pool) th.join();
}

} // namespace pntlab
