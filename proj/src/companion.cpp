#include "tamperlab/companion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace tamperlab::er {

ErConfig::ErConfig(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("ErConfig: need n >= 1");
  require_cap("ErConfig", "n", 4096, n);
  words_.assign((slots() + 63) / 64, 0);
}

ErConfig ErConfig::complete(int n) {
  ErConfig c(n);
  for (uint64_t e = 0; e < c.slots(); ++e) c.set(e);
  return c;
}

uint64_t ErConfig::pair_index(int u, int v) const {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::invalid_argument("ErConfig: bad vertex pair");
  if (u > v) std::swap(u, v);
  return uint64_t(v) * (v - 1) / 2 + u;
}

uint64_t ErConfig::edge_count() const {
  uint64_t total = 0;
  for (uint64_t w : words_) total += std::popcount(w);
  return total;
}

void ErConfig::unite(const ErConfig& other) {
  if (n_ != other.n_) throw std::invalid_argument("ErConfig::unite: size mismatch");
  for (size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
}

ErConfig er_sample(int n, double p, RngStream& stream) {
  ErConfig c(n);
  if (p >= 1.0) return ErConfig::complete(n);
  if (p > 0.0)
    for (uint64_t e = 0; e < c.slots(); ++e)
      if (stream.bernoulli(p)) c.set(e);
  return c;
}

std::vector<int> sample_ham_path(int n, RngStream& stream) {
  if (n < 2) throw std::invalid_argument("sample_ham_path: need n >= 2");
  std::vector<int> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = i;
  stream.shuffle(seq);
  if (seq.front() > seq.back()) std::reverse(seq.begin(), seq.end());
  return seq;
}

ErConfig ham_tamper(const ErConfig& config, RngStream& stream) {
  std::vector<int> seq = sample_ham_path(config.vertices(), stream);
  ErConfig out = config;
  for (size_t i = 0; i + 1 < seq.size(); ++i) out.set_pair(seq[i], seq[i + 1]);
  return out;
}

BigInt ham_count(const ErConfig& config) {
  const int n = config.vertices();
  require_cap("ham_count", "n", kMaxHamCountDim, n);
  if (n < 2) return 0;
  const uint32_t full = (uint32_t(1) << n) - 1;
  // dp[mask * n + v] = walks visiting exactly `mask`, ending at v
  std::vector<uint64_t> dp(size_t(full + 1) * n, 0);
  for (int v = 0; v < n; ++v) dp[size_t(uint32_t(1) << v) * n + v] = 1;
  uint64_t total = 0;
  for (uint32_t mask = 1; mask <= full; ++mask) {
    const bool complete_mask = mask == full;
    for (uint32_t rest = mask; rest;) {
      uint32_t vbit = rest & (0u - rest);
      rest ^= vbit;
      int v = std::countr_zero(vbit);
      uint64_t ways = dp[size_t(mask) * n + v];
      if (!ways) continue;
      if (complete_mask) {
        total += ways;
        continue;
      }
      for (uint32_t out = full & ~mask; out;) {
        uint32_t ubit = out & (0u - out);
        out ^= ubit;
        int u = std::countr_zero(ubit);
        if (config.test_pair(v, u)) dp[size_t(mask | ubit) * n + u] += ways;
      }
    }
  }
  return BigInt(total / 2);  // each path counted from both endpoints
}

BigInt ham_count_naive(const ErConfig& config) {
  const int n = config.vertices();
  require_cap("ham_count_naive", "n", kMaxHamNaiveDim, n);
  if (n < 2) return 0;
  std::vector<int> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = i;
  uint64_t hits = 0;
  do {
    bool ok = true;
    for (int i = 0; i + 1 < n && ok; ++i) ok = config.test_pair(seq[i], seq[i + 1]);
    hits += ok;
  } while (std::next_permutation(seq.begin(), seq.end()));
  return BigInt(hits / 2);
}

EdgeCountDetector edge_count_detector(int n, double p) {
  if (n < 2) throw std::invalid_argument("edge_count_detector: need n >= 2");
  EdgeCountDetector d;
  d.delta_exp = (1.0 - p) * (n - 1);
  double slots = double(n) * (n - 1) / 2.0;
  d.sd = std::sqrt(slots * p * (1.0 - p));
  d.degenerate = p <= 0.0 || p >= 1.0;
  d.z = d.degenerate ? 0.0 : d.delta_exp / d.sd;
  return d;
}

}  // namespace tamperlab::er

namespace tamperlab::lis {

std::vector<int> lis_tamper(const std::vector<int>& sigma, int k, RngStream& stream) {
  const int n = int(sigma.size());
  if (k < 1 || k > n) throw std::invalid_argument("lis_tamper: k out of range");
  // choose k positions without replacement (partial Fisher-Yates)
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) std::swap(pool[i], pool[i + int(stream.below(uint64_t(n - i)))]);
  std::vector<int> positions(pool.begin(), pool.begin() + k);
  std::sort(positions.begin(), positions.end());
  std::vector<int> values;
  values.reserve(k);
  for (int pos : positions) values.push_back(sigma[pos]);
  std::sort(values.begin(), values.end());
  std::vector<int> out = sigma;
  for (int i = 0; i < k; ++i) out[positions[i]] = values[i];
  return out;
}

int lis_length(const std::vector<int>& sigma) {
  std::vector<int> tails;
  for (int x : sigma) {
    auto it = std::lower_bound(tails.begin(), tails.end(), x);
    if (it == tails.end()) tails.push_back(x);
    else *it = x;
  }
  return int(tails.size());
}

}  // namespace tamperlab::lis
