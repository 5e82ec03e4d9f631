#pragma once

#include <cstddef>
#include <functional>

namespace qarea {

// Worker cap used by parallel sweeps.  Reads QAREA_THREADS (clamped to >= 1);
// falls back to the hardware concurrency when unset or unparsable.
int thread_budget();

// Runs f(chunk_index, begin, end) over the index range [0, n) split into
// fixed-size chunks.  Chunk boundaries depend only on n and chunk_size, never
// on the worker count, so callers that store per-chunk results and reduce
// them in chunk order get bit-identical output for any QAREA_THREADS.
// Exceptions from workers are rethrown; when several chunks throw, the one
// with the lowest chunk index wins.
void for_each_chunk(std::size_t n, std::size_t chunk_size,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& f);

} // namespace qarea
