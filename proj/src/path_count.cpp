#include "tamperlab/path_count.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace tamperlab {

PathCounter::PathCounter(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("PathCounter: dimension must be >= 1");
  require_cap("PathCounter", "n", kMaxFromZeroDim, n);
  dp_.assign(uint64_t(1) << n, 0);
}

uint64_t PathCounter::from_zero(const EdgeConfig& config) {
  if (config.dim() != n_) throw std::invalid_argument("PathCounter: dimension mismatch");
  const uint32_t full = (uint32_t(1) << n_) - 1;
  dp_[0] = 1;
  for (uint32_t mask = 1; mask <= full; ++mask) {
    uint64_t acc = 0;
    for (uint32_t rest = mask; rest;) {
      uint32_t bit = rest & (0u - rest);
      rest ^= bit;
      uint64_t prev = dp_[mask ^ bit];
      if (prev && config.test(edge_index(n_, mask ^ bit, std::countr_zero(bit)))) acc += prev;
    }
    dp_[mask] = acc;
  }
  return dp_[full];
}

uint64_t PathCounter::from_vertex(const EdgeConfig& config, uint32_t x) {
  if (config.dim() != n_) throw std::invalid_argument("PathCounter: dimension mismatch");
  const uint32_t full = (uint32_t(1) << n_) - 1;
  frontier_.clear();
  frontier_.push_back(0);
  dp_[0] = 1;
  for (int level = 0; level < n_; ++level) {
    next_.clear();
    for (uint32_t mask : frontier_) {
      uint64_t c = dp_[mask];
      dp_[mask] = 0;
      uint32_t v = x ^ mask;
      for (uint32_t rest = full & ~mask; rest;) {
        uint32_t bit = rest & (0u - rest);
        rest ^= bit;
        int dir = std::countr_zero(bit);
        if (!config.test(edge_index(n_, v & ~bit, dir))) continue;
        uint32_t nm = mask | bit;
        if (!dp_[nm]) next_.push_back(nm);
        dp_[nm] += c;
      }
    }
    frontier_.swap(next_);
    if (frontier_.empty()) return 0;
  }
  uint64_t result = dp_[full];
  dp_[full] = 0;
  return result;
}

uint64_t PathCounter::all(const EdgeConfig& config) {
  require_cap("count_all", "n", kMaxAllDim, n_);
  uint64_t total = 0;
  const uint32_t vertices = uint32_t(1) << n_;
  for (uint32_t x = 0; x < vertices; ++x) total += from_vertex(config, x);
  return total / 2;
}

CountResult count_from_zero(const EdgeConfig& config) {
  require_cap("count_from_zero", "n", kMaxFromZeroDim, config.dim());
  PathCounter counter(config.dim());
  return {config.dim(), Variant::kFromZero, BigInt(counter.from_zero(config))};
}

CountResult count_all(const EdgeConfig& config) {
  require_cap("count_all", "n", kMaxAllDim, config.dim());
  PathCounter counter(config.dim());
  return {config.dim(), Variant::kAll, BigInt(counter.all(config))};
}

CountResult count_oracle(const EdgeConfig& config, Variant v) {
  int n = config.dim();
  require_cap("count_oracle", "n", kMaxOracleDim, n);
  std::vector<int> order(n);
  uint64_t hits = 0;
  DiameterPath p;
  p.n = n;
  const uint32_t vertices = uint32_t(1) << n;
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  do {
    p.order = order;
    if (v == Variant::kFromZero) {
      p.start = 0;
      hits += path_in_config(p, config);
    } else {
      for (uint32_t x = 0; x < vertices; ++x) {
        p.start = x;
        hits += path_in_config(p, config);
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  if (v == Variant::kAll) hits /= 2;  // each unoriented path seen from both endpoints
  return {n, v, BigInt(hits)};
}

Rat expected_count_exact(int n, const Rat& p, Variant v) {
  return Rat(path_space_size(n, v)) * rat_pow(p, n);
}

double expected_count(int n, double p, Variant v) {
  double en = v == Variant::kAll ? std::pow(2.0, n - 1) : 1.0;
  for (int k = 1; k <= n; ++k) en *= k * p;
  return en;
}

int overlap(const DiameterPath& a, const DiameterPath& b) {
  if (a.n != b.n) throw std::invalid_argument("overlap: dimension mismatch");
  std::vector<uint64_t> ea = path_edges(a), eb = path_edges(b);
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  int w = 0;
  for (size_t i = 0, j = 0; i < ea.size() && j < eb.size();) {
    if (ea[i] == eb[j]) ++w, ++i, ++j;
    else if (ea[i] < eb[j]) ++i;
    else ++j;
  }
  return w;
}

int overlap_with_reference(int n, uint32_t start, const std::vector<int>& order) {
  int w = 0;
  uint32_t v = start;
  for (int c : order) {
    uint32_t bit = uint32_t(1) << (c - 1);
    if (is_reference_edge(std::min(v, v ^ bit), c - 1)) ++w;
    v ^= bit;
  }
  (void)n;
  return w;
}

Rat OverlapDist::tail_exact(int m) const {
  if (!exact) throw std::logic_error("OverlapDist::tail_exact: not an exact distribution");
  Rat t = 0;
  for (int w = std::max(m, 0); w <= n; ++w) t += q[w];
  return t;
}

OverlapDist overlap_distribution_exact(int n, Variant v) {
  require_cap("overlap_distribution", "n", kMaxExactOverlapDim, n);
  if (n < 1) throw std::invalid_argument("overlap_distribution: dimension must be >= 1");
  std::vector<BigInt> tally(n + 1, 0);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  const uint32_t vertices = uint32_t(1) << n;
  BigInt total = 0;
  do {
    if (v == Variant::kFromZero) {
      ++tally[overlap_with_reference(n, 0, order)];
      ++total;
    } else {
      // weight over oriented pairs; W is orientation-invariant, so the law
      // equals the uniform law on canonical paths
      for (uint32_t x = 0; x < vertices; ++x) {
        ++tally[overlap_with_reference(n, x, order)];
        ++total;
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  OverlapDist dist;
  dist.n = n;
  dist.variant = v;
  dist.exact = true;
  dist.q.resize(n + 1);
  for (int w = 0; w <= n; ++w) dist.q[w] = Rat(tally[w], total);
  return dist;
}

OverlapDist overlap_distribution_mc(int n, Variant v, uint64_t samples, uint64_t seed,
                                    int threads) {
  if (n < 1) throw std::invalid_argument("overlap_distribution: dimension must be >= 1");
  require_cap("overlap_distribution_mc", "n", kMaxConfigDim, n);
  std::vector<uint8_t> w_of(samples);
  for_each_replicate(seed, /*cell=*/0, uint32_t(samples), threads, [&](uint32_t r, RngStream& s) {
    DiameterPath p = sample_path(n, v, s);
    w_of[r] = uint8_t(overlap_with_reference(n, p.start, p.order));
  });
  std::vector<uint64_t> tally(n + 1, 0);
  for (uint8_t w : w_of) ++tally[w];
  OverlapDist dist;
  dist.n = n;
  dist.variant = v;
  dist.exact = false;
  dist.samples = samples;
  dist.freq.resize(n + 1);
  dist.se.resize(n + 1);
  for (int w = 0; w <= n; ++w) {
    double f = double(tally[w]) / double(samples);
    dist.freq[w] = f;
    dist.se[w] = std::sqrt(f * (1.0 - f) / double(samples));
  }
  return dist;
}

Rat biased_second_moment_exact(int n, const Rat& p, Variant v) {
  if (p == 0) throw std::domain_error("biased_second_moment: p = 0 (p^{-W} undefined)");
  OverlapDist dist = overlap_distribution_exact(n, v);
  Rat acc = 0;
  for (int w = 0; w <= n; ++w)
    if (dist.q[w] != 0) acc += dist.q[w] * rat_pow(p, -long(w));
  return acc;
}

double biased_second_moment_mc(int n, double p, Variant v, uint64_t samples, uint64_t seed,
                               int threads) {
  if (p == 0) throw std::domain_error("biased_second_moment: p = 0 (p^{-W} undefined)");
  OverlapDist dist = overlap_distribution_mc(n, v, samples, seed, threads);
  double acc = 0;
  for (int w = 0; w <= n; ++w) acc += dist.freq[w] * std::pow(p, -w);
  return acc;
}

}  // namespace tamperlab
