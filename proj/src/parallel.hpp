#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tensorpoly::detail {

// Worker count: explicit request, else TENSORPOLY_THREADS, else hardware.
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TENSORPOLY_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<int>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(worker_id, begin, end) over a contiguous index split.
template <typename Fn>
void parallel_ranges(std::uint64_t count, int workers, Fn&& fn) {
  if (workers <= 1 || count < 2) {
    fn(0, std::uint64_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  std::uint64_t chunk = count / workers, extra = count % workers;
  std::uint64_t begin = 0;
  for (int w = 0; w < workers; ++w) {
    std::uint64_t end = begin + chunk + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
    threads.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
    begin = end;
  }
  for (auto& t : threads) t.join();
}

}  // namespace tensorpoly::detail
