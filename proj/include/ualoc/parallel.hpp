#pragma once

#include <cstddef>
#include <functional>

namespace ualoc {

// Splits [0, count) into contiguous chunks handled by up to `jobs` threads.
// Chunk boundaries depend only on (jobs, count), so per-chunk results can be
// concatenated in chunk order and the output matches the sequential run.
void parallel_chunks(int jobs, std::size_t count,
                     const std::function<void(std::size_t chunk, std::size_t begin,
                                              std::size_t end)>& body);

std::size_t chunk_count(int jobs, std::size_t count);

}  // namespace ualoc
