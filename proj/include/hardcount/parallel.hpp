#ifndef HARDCOUNT_PARALLEL_HPP
#define HARDCOUNT_PARALLEL_HPP

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hardcount::par {

enum class Mode { serial, openmp };

#ifdef _OPENMP
inline Mode default_mode() { return Mode::openmp; }
inline int worker_count() { return omp_get_max_threads(); }
#else
inline Mode default_mode() { return Mode::serial; }
inline int worker_count() { return 1; }
#endif

// Deterministic blocked map-reduce.  Work is cut into fixed blocks; each block
// is mapped independently (possibly on different threads) and the partial
// results are combined strictly in block order, so the result is identical for
// any thread count and equal to the serial reference bit for bit.
template <class T, class MapFn, class ReduceFn>
T map_reduce_blocks(std::size_t count, std::size_t block_size, T init,
                    MapFn map_block, ReduceFn reduce, Mode mode = default_mode()) {
    if (count == 0) return init;
    if (block_size == 0) block_size = 1;
    const std::size_t n_blocks = (count + block_size - 1) / block_size;
    std::vector<T> partial(n_blocks, init);

    if (mode == Mode::serial) {
        for (std::size_t b = 0; b < n_blocks; ++b) {
            const std::size_t lo = b * block_size;
            const std::size_t hi = lo + block_size < count ? lo + block_size : count;
            partial[b] = map_block(lo, hi, b);
        }
    } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (long long b = 0; b < static_cast<long long>(n_blocks); ++b) {
            const std::size_t lo = static_cast<std::size_t>(b) * block_size;
            const std::size_t hi = lo + block_size < count ? lo + block_size : count;
            partial[static_cast<std::size_t>(b)] = map_block(lo, hi, static_cast<std::size_t>(b));
        }
    }

    T acc = init;
    for (std::size_t b = 0; b < n_blocks; ++b) acc = reduce(acc, partial[b]);
    return acc;
}

// Parallel for over independent items, deterministic because each item writes
// only its own slot.
template <class Fn>
void for_each_index(std::size_t count, Fn fn, Mode mode = default_mode()) {
    if (mode == Mode::serial) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
    } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (long long i = 0; i < static_cast<long long>(count); ++i)
            fn(static_cast<std::size_t>(i));
    }
}

} // namespace hardcount::par

#endif
