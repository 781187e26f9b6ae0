#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace avalanche {

// Replica fan-out over a worker pool. Each worker owns a local State;
// body(replica, state) must derive all randomness from the replica index so
// the merged result is independent of the worker count (merging is the
// caller's job and must be commutative, e.g. integer histogram sums).
template <class State, class Body>
std::vector<State> parallel_replicas(std::uint64_t n, int workers, const State& init, Body body) {
  workers = std::max(1, workers);
  std::vector<State> states(static_cast<std::size_t>(workers), init);
  if (workers == 1 || n < 2) {
    for (std::uint64_t r = 0; r < n; ++r) body(r, states[0]);
    return states;
  }
  std::atomic<std::uint64_t> next{0};
  constexpr std::uint64_t chunk = 32;
  auto run = [&](int w) {
    for (;;) {
      const std::uint64_t lo = next.fetch_add(chunk);
      if (lo >= n) return;
      const std::uint64_t hi = std::min(n, lo + chunk);
      for (std::uint64_t r = lo; r < hi; ++r) body(r, states[static_cast<std::size_t>(w)]);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
  for (auto& t : pool) t.join();
  return states;
}

}  // namespace avalanche
