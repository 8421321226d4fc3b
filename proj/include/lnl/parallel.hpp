#pragma once

#include <cstddef>
#include <vector>

namespace lnl {

/// Fixed work-chunk length for reductions.  Chunk boundaries do not depend on
/// the thread count, so chunked sums are bit-identical for any thread count.
inline constexpr std::size_t kChunk = 2048;

void set_thread_count(int threads);
int thread_count();

/// Sum of range_sum(begin, end) over fixed chunks of [0, n), folded in chunk order.
template <class RangeSum>
double chunked_sum(std::size_t n, RangeSum&& range_sum)
{
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    if (chunks <= 1) return n == 0 ? 0.0 : range_sum(std::size_t{0}, n);
    std::vector<double> partial(chunks, 0.0);
    const long long nc = static_cast<long long>(chunks);
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < nc; ++c) {
        const std::size_t b = static_cast<std::size_t>(c) * kChunk;
        const std::size_t e = b + kChunk < n ? b + kChunk : n;
        partial[static_cast<std::size_t>(c)] = range_sum(b, e);
    }
    double s = 0.0;
    for (double v : partial) s += v;
    return s;
}

/// Calls body(i) for every i in [0, n); iterations must be independent.
template <class Body>
void parallel_for(std::size_t n, Body&& body)
{
    const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static) if (n > kChunk)
    for (long long i = 0; i < nn; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace lnl
