#pragma once

// Exact diameter-path counting and the overlap statistic W.
//
// Counting is a DP over subsets of flipped coordinates: a path from x has
// visited vertex x ^ mask once the coordinate set `mask` is flipped, and
//   f(0) = 1,  f(mask) = sum over i in mask of f(mask \ i) * [edge present],
// so f(full) counts the monotone geodesics from x to its antipode. Within
// the documented caps every count fits in 64 bits (20! < 2^63); results are
// exposed as big integers.

#include <cstdint>
#include <vector>

#include "tamperlab/hypercube.hpp"
#include "tamperlab/numeric.hpp"
#include "tamperlab/rng.hpp"

namespace tamperlab {

inline constexpr int kMaxFromZeroDim = 20;  // flat 2^n DP
inline constexpr int kMaxAllDim = 13;       // 2^n starts x sparse DP
inline constexpr int kMaxOracleDim = 7;     // brute force over all m_n paths
inline constexpr int kMaxExactOverlapDim = 7;

struct CountResult {
  int n = 0;
  Variant variant = Variant::kFromZero;
  BigInt value;
};

// Reusable DP scratch; one instance per thread.
class PathCounter {
 public:
  explicit PathCounter(int n);

  // Paths from vertex 0 to its antipode (flat DP, needs n <= kMaxFromZeroDim).
  uint64_t from_zero(const EdgeConfig& config);

  // Paths from x to antipode(x); sparse frontier DP, cheap when the
  // configuration is thin enough that partial paths die early.
  uint64_t from_vertex(const EdgeConfig& config, uint32_t x);

  // Unoriented diameter paths: half the sum of from_vertex over all starts
  // (each path is counted once per endpoint). Needs n <= kMaxAllDim.
  uint64_t all(const EdgeConfig& config);

 private:
  int n_;
  std::vector<uint64_t> dp_;
  std::vector<uint32_t> frontier_, next_;
};

CountResult count_from_zero(const EdgeConfig& config);
CountResult count_all(const EdgeConfig& config);

// Independent brute force: membership test of every path of the variant.
CountResult count_oracle(const EdgeConfig& config, Variant v);

// E N = m_n p^n.
Rat expected_count_exact(int n, const Rat& p, Variant v);
double expected_count(int n, double p, Variant v);

// |shared edges| of two diameter paths of equal dimension.
int overlap(const DiameterPath& a, const DiameterPath& b);

// True iff edge k of a walk equals reference edge e_{dir+1}: both endpoints
// are all-ones prefixes. O(1), used by the exact enumerations.
inline bool is_reference_edge(uint32_t base_vertex, int direction) {
  return base_vertex == (uint32_t(1) << direction) - 1;
}

// Overlap of the path (start, order) with the reference path, O(n).
int overlap_with_reference(int n, uint32_t start, const std::vector<int>& order);

struct OverlapDist {
  int n = 0;
  Variant variant = Variant::kFromZero;
  bool exact = false;
  std::vector<Rat> q;        // exact mode: q[w] = P(W = w), sums to 1
  std::vector<double> freq;  // mc mode: empirical frequencies
  std::vector<double> se;    // mc mode: plug-in standard errors
  uint64_t samples = 0;

  double q_at(int w) const { return exact ? to_double(q[w]) : freq[w]; }
  // P(W >= m).
  Rat tail_exact(int m) const;
};

// Law of W against the reference path under a uniform random path of the
// variant (by vertex-transitivity this is the overlap law of two independent
// uniform paths). Exact mode enumerates all paths; n <= kMaxExactOverlapDim.
OverlapDist overlap_distribution_exact(int n, Variant v);
OverlapDist overlap_distribution_mc(int n, Variant v, uint64_t samples, uint64_t seed,
                                    int threads = 1);

// E p^{-W} = sum_w q_w p^{-w}; the size-biased second-moment factor:
// E N^2 = (E N)^2 E p^{-W}. p = 0 refused.
Rat biased_second_moment_exact(int n, const Rat& p, Variant v);
double biased_second_moment_mc(int n, double p, Variant v, uint64_t samples, uint64_t seed,
                               int threads = 1);

}  // namespace tamperlab
