#pragma once

// Reproducible stream-splitting RNG.
//
// Contract: a run is identified by one master seed. Replicate r of cell c
// draws from its own stream, derived as
//
//   engine_seed = splitmix64(master ^ splitmix64(stream_id(c, r) + GOLDEN))
//
// and fed to a std::mt19937_64 (whose output sequence is fixed by the
// standard). Uniform doubles take the top 53 bits, so every sample is
// bit-identical across platforms and across thread counts. No RNG state is
// ever shared between replicates.

#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace tamperlab {

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ull;

constexpr uint64_t splitmix64(uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// cell index in the high 32 bits, replicate in the low 32: unique per
// (cell, replicate) as long as both stay below 2^32.
constexpr uint64_t stream_id(uint32_t cell, uint32_t replicate) {
  return (uint64_t(cell) << 32) | replicate;
}

class RngStream {
 public:
  RngStream(uint64_t master_seed, uint64_t stream)
      : eng_(splitmix64(master_seed ^ splitmix64(stream + kGolden))) {}

  uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

  // Uniform in [0, n), unbiased (rejection on the top of the range).
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t limit = ~uint64_t(0) - ~uint64_t(0) % n;
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  // Random permutation of {1, ..., n}.
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    shuffle(p);
    return p;
  }

 private:
  std::mt19937_64 eng_;
};

// Runs fn(replicate, stream) for every replicate in [0, count). Threads only
// split the replicate range; each replicate's stream depends on nothing but
// (master, cell, replicate), and callers store results indexed by replicate,
// so output is independent of the worker count.
template <typename Fn>
void for_each_replicate(uint64_t master_seed, uint32_t cell, uint32_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    for (uint32_t r = 0; r < count; ++r) {
      RngStream stream(master_seed, stream_id(cell, r));
      fn(r, stream);
    }
    return;
  }
  int workers = std::min<int>(threads, int(count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (uint32_t r = w; r < count; r += uint32_t(workers)) {
        RngStream stream(master_seed, stream_id(cell, r));
        fn(r, stream);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace tamperlab
