#pragma once

#include <cstddef>
#include <functional>

namespace framelet {

// Worker count: FRAMELET_THREADS if set (clamped to [1, hardware]), else all
// hardware threads.
int thread_count();

// Partitions [0, total) into consecutive blocks of at most block_size indices
// and runs fn(block_index, begin, end) for each, possibly concurrently.
// Distinct blocks must not share mutable state; merge per-block results in
// block order for deterministic output.
void for_blocks(std::size_t total, std::size_t block_size,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

std::size_t block_count(std::size_t total, std::size_t block_size);

}  // namespace framelet
