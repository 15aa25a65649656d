#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string_view>
#include <thread>
#include <vector>

namespace bcclab {

// splitmix64 finalizer; good avalanche, cheap.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic sub-stream seed from (seed, label, index).  Parallel workers
// derive their own streams from this, so results do not depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                                 std::uint64_t index = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (char c : label) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 0x100000001b3ULL;
  }
  return mix64(mix64(h) ^ index);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::string_view label,
                                std::uint64_t index = 0) {
  return std::mt19937_64(derive_seed(seed, label, index));
}

// Static block partition of [0, n) over `threads` workers.  Each task index is
// processed exactly once; fn must only write to task-local state.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned t = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (unsigned w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += t) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace bcclab
