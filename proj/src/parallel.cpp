#include "framelet/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace framelet {

int thread_count() {
  static const int cached = [] {
    int hw = int(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("FRAMELET_THREADS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v >= 1) return int(std::min<long>(v, hw));
    }
    return hw;
  }();
  return cached;
}

std::size_t block_count(std::size_t total, std::size_t block_size) {
  if (block_size == 0) block_size = 1;
  return (total + block_size - 1) / block_size;
}

void for_blocks(std::size_t total, std::size_t block_size,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (total == 0) return;
  if (block_size == 0) block_size = 1;
  const std::size_t blocks = block_count(total, block_size);
  const std::size_t workers = std::min<std::size_t>(std::size_t(thread_count()), blocks);

  auto run_block = [&](std::size_t b) {
    const std::size_t begin = b * block_size;
    const std::size_t end = std::min(begin + block_size, total);
    fn(b, begin, end);
  };

  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
        if (b >= blocks) return;
        run_block(b);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace framelet
