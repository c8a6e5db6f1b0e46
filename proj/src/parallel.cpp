#include "ualoc/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace ualoc {

std::size_t chunk_count(int jobs, std::size_t count) {
  if (jobs <= 1 || count < 2) return count == 0 ? 0 : 1;
  return std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
}

void parallel_chunks(int jobs, std::size_t count,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t chunks = chunk_count(jobs, count);
  if (chunks == 0) return;
  if (chunks == 1) {
    body(0, 0, count);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    workers.emplace_back([&body, c, begin, end] { body(c, begin, end); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace ualoc
