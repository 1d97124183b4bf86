#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace zoom {

// Worker count: ZOOM_THREADS if set, else the request, else 1.
unsigned resolve_threads(unsigned requested);

// Splits [lo, hi] into contiguous blocks, runs fn(block_lo, block_hi) -> T on each
// and adds the partial results in block order.
template <class T, class Fn>
T parallel_sum(unsigned threads, std::uint64_t lo, std::uint64_t hi, Fn fn)
{
    if (hi < lo)
        return T{};
    const std::uint64_t n = hi - lo + 1;
    threads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, n)));
    if (threads == 1)
        return fn(lo, hi);
    std::vector<T> parts(threads);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = n / threads, extra = n % threads;
    std::uint64_t start = lo;
    for (unsigned i = 0; i < threads; ++i) {
        std::uint64_t len = chunk + (i < extra ? 1 : 0);
        std::uint64_t b = start, e = start + len - 1;
        pool.emplace_back([&parts, i, b, e, &fn] { parts[i] = fn(b, e); });
        start += len;
    }
    for (auto& t : pool)
        t.join();
    T total{};
    for (auto& p : parts)
        total += p;
    return total;
}

// fn(i) for i in [lo, hi], contiguous blocks per worker
template <class Fn>
void parallel_for(unsigned threads, std::uint64_t lo, std::uint64_t hi, Fn fn)
{
    if (hi < lo)
        return;
    parallel_sum<int>(threads, lo, hi, [&fn](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i <= e; ++i)
            fn(i);
        return 0;
    });
}

} // namespace zoom
