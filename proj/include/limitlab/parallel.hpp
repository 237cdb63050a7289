#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

#include "limitlab/verdict.hpp"

namespace limitlab {

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Evaluates `check(i)` for i in [0, count) on `workers` threads and folds
/// the verdicts in index order. Once item i is violated, items after i are
/// skipped, so the result (including notes) does not depend on scheduling.
template <typename Check>
Verdict parallel_fold(std::size_t count, unsigned workers, Check&& check) {
  std::vector<Verdict> results(count);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_violation{count};

  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || i > first_violation.load()) return;
      results[i] = check(i);
      if (results[i].is_violated()) {
        std::size_t cur = first_violation.load();
        while (i < cur && !first_violation.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::size_t>(count, 64))));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(work);
  }

  VerdictAccumulator acc;
  const std::size_t last = std::min(first_violation.load(), count == 0 ? 0 : count - 1);
  for (std::size_t i = 0; i < count && i <= last; ++i) acc.add(std::move(results[i]));
  return acc.take();
}

}  // namespace limitlab
