#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace rankguard {

/// Worker count for parallel sections.  Reads RANKGUARD_THREADS; 0, unset or
/// unparsable means auto (hardware concurrency).  Always at least 1.
std::size_t worker_count();

/// Splits [0, total) into `chunks` contiguous ranges and runs
/// fn(chunk_index, begin, end) on a pool of threads.  Chunk boundaries are a
/// deterministic function of (total, chunks) alone.
void parallel_chunks(std::uint64_t total, std::size_t chunks,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn);

}  // namespace rankguard
