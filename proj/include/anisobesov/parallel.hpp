#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace anisobesov {

// Number of worker threads: ANISO_BESOV_THREADS if set and valid, otherwise
// the hardware concurrency, always at least 1.
int thread_count();

// Runs body(begin, end) over a fixed partition of [0, n) into chunk_count()
// contiguous ranges, possibly on several threads. The partition does not
// depend on the thread count, so per-chunk accumulations combined in chunk
// order give bit-identical results for any ANISO_BESOV_THREADS.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t,
                                              std::size_t)>& body);

// Chunk index space used by parallel_chunks: body receives (chunk, begin,
// end) with chunk in [0, chunk_count()).
std::size_t chunk_count();

// Deterministic parallel sum of term(i) for i in [0, n): Kahan compensation
// within each fixed chunk, ordered combine across chunks.
double parallel_sum(std::size_t n,
                    const std::function<double(std::size_t)>& term);

// Deterministic parallel max of term(i) for i in [0, n); returns 0 for n=0.
double parallel_max(std::size_t n,
                    const std::function<double(std::size_t)>& term);

}  // namespace anisobesov
