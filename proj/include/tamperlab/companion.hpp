#pragma once

// The two companion tampering models: Hamiltonian-path tampering of the
// Erdos-Renyi graph G(n, p) with its edge-count detector, and
// increasing-subsequence tampering of uniform random permutations.

#include <cstdint>
#include <vector>

#include "tamperlab/numeric.hpp"
#include "tamperlab/rng.hpp"

namespace tamperlab::er {

inline constexpr int kMaxHamCountDim = 18;  // 2^n x n DP states
inline constexpr int kMaxHamNaiveDim = 8;

// An edge subset of the complete graph on n vertices.
class ErConfig {
 public:
  explicit ErConfig(int n);
  static ErConfig empty(int n) { return ErConfig(n); }
  static ErConfig complete(int n);

  int vertices() const { return n_; }
  uint64_t slots() const { return uint64_t(n_) * (n_ - 1) / 2; }

  bool test_pair(int u, int v) const { return test(pair_index(u, v)); }
  void set_pair(int u, int v) { set(pair_index(u, v)); }
  bool test(uint64_t e) const { return (words_[e >> 6] >> (e & 63)) & 1; }
  void set(uint64_t e) { words_[e >> 6] |= uint64_t(1) << (e & 63); }

  uint64_t edge_count() const;
  void unite(const ErConfig& other);
  bool operator==(const ErConfig&) const = default;

  // triangular index of the unordered pair {u, v}, u != v
  uint64_t pair_index(int u, int v) const;

 private:
  int n_;
  std::vector<uint64_t> words_;
};

ErConfig er_sample(int n, double p, RngStream& stream);

// Uniform Hamiltonian path of the complete graph (canonical representative:
// smaller endpoint label first), as its vertex sequence.
std::vector<int> sample_ham_path(int n, RngStream& stream);

// Union with a uniform Hamiltonian path; never removes edges.
ErConfig ham_tamper(const ErConfig& config, RngStream& stream);

// Number of Hamiltonian paths, by the (visited set, endpoint) DP; 64-bit
// counters are safe through the n <= 18 cap (18!/2 < 2^63).
BigInt ham_count(const ErConfig& config);

// Permutation-scan oracle for small n.
BigInt ham_count_naive(const ErConfig& config);

struct EdgeCountDetector {
  double delta_exp = 0.0;  // (1-p)(n-1)
  double sd = 0.0;         // sqrt(|e_n| p (1-p))
  double z = 0.0;          // delta_exp / sd
  bool degenerate = false; // p in {0, 1}
};
EdgeCountDetector edge_count_detector(int n, double p);

}  // namespace tamperlab::er

namespace tamperlab::lis {

// Picks k positions uniformly, removes their cards and reinserts that value
// multiset into the vacated positions in increasing order.
std::vector<int> lis_tamper(const std::vector<int>& sigma, int k, RngStream& stream);

// Longest strictly increasing subsequence, patience method, O(n log n).
int lis_length(const std::vector<int>& sigma);

}  // namespace tamperlab::lis
