#pragma once
// Deterministic fan-out: results are concatenated in index order whatever the thread count.
#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace smc {

inline int default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n ? static_cast<int>(n) : 1;
}

template <class T, class F>
std::vector<T> parallel_collect(long count, int threads, F&& work) {
  std::vector<std::vector<T>> parts(static_cast<size_t>(std::max(0L, count)));
  std::vector<std::exception_ptr> errs(parts.size());
  auto run = [&](long k) {
    try {
      parts[k] = work(k);
    } catch (...) {
      errs[k] = std::current_exception();
    }
  };
  threads = static_cast<int>(std::max(1L, std::min<long>(threads, count)));
  if (threads <= 1) {
    for (long k = 0; k < count; ++k) run(k);
  } else {
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (long k; (k = next++) < count;) run(k);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return out;
}

}  // namespace smc
