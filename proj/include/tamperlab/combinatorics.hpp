#pragma once

// Exact-arithmetic implementations of the counting formulas, recursions and
// bounds behind the second-moment analysis: sub-permutation path-membership
// counts |T|, the containment probabilities for edge tuples (both variants),
// the iterated reciprocal-binomial sums C_j^(k) with their nilpotent-matrix
// expansion, and the tail-bound constants.
//
// Index conventions follow the reference-path edges e_1..e_n (1-based). A
// set [j] is a sub-permutation of sigma when sigma maps {1..j} onto itself;
// e_j lies on the path (0, sigma) iff [j-1] and [j] are both
// sub-permutations.

#include <functional>
#include <vector>

#include "tamperlab/hypercube.hpp"
#include "tamperlab/numeric.hpp"

namespace tamperlab::comb {

// A strictly increasing tuple 1 <= l_1 < ... < l_m <= n of edge indices.
struct TIndex {
  int n = 0;
  std::vector<int> ls;

  int m() const { return int(ls.size()); }
};

bool tindex_valid(const TIndex& idx);

// |T^n_{m; l_1..l_m}| = (l_1-1)! (l_2-1-l_1)! ... (l_m-1-l_{m-1})! (n-l_m)!,
// the number of permutations containing all of e_{l_1}..e_{l_m} on their
// from-zero path.
BigInt t_size(const TIndex& idx);

// Same product for a tuple inside S_len; an empty tuple means no constraint,
// i.e. len!.
BigInt t_block_size(int len, const std::vector<int>& ls);

// Brute-force |T| by scanning S_n (n <= 9 or so; test oracle).
BigInt t_size_brute(const TIndex& idx);

// Sub-permutation membership criterion for e_j on the path (0, sigma).
bool edge_in_from_zero_path(const std::vector<int>& sigma, int j);

// P(uniform from-zero path contains e_{l_1}, ..., e_{l_m}) = |T| / n!.
Rat prob_contains_from_zero(const TIndex& idx);

// P(uniform free-start path contains the tuple), by the K0/K1 start-vertex
// decomposition: sum over b (early-flipped coordinates below l_1) and c
// (early-flipped coordinates above l_m) of
//   binom(l_1-1, b) binom(n-l_m, c) (b+c)! (n-b-c-1-(l_m-l_1))!
//     * (|T0_block| + |T1_block|)  /  (2^n n!),
// where the blocks live in S_{l_m-l_1-1}: the middle segment must end by
// traversing the far edge, which pins its last element, so the free part of
// the block is one element shorter than the l_m - l_1 coordinates it moves.
// Only derived for m >= 2; use enumeration or per-edge symmetry for m = 1.
Rat prob_A_exact(const TIndex& idx);

// Brute force over all 2^n n! oriented (start, order) pairs (test oracle).
Rat prob_A_brute(const TIndex& idx);

// The b/c double sum above with the T-factor dropped: checks that it equals
// sum of fraction * (n-1-(l_m-l_1))! with every fraction <= 1, and is
// bounded by n^2 (n-1-(l_m-l_1))!.
struct BcSumCheck {
  BigInt lhs;
  BigInt rhs;
  bool fractions_ok = false;
  bool sum_ok = false;
  bool ok() const { return fractions_ok && sum_ok; }
};
BcSumCheck bc_sum_bound_check(int n, int l1, int lm);

// C_j^(0) = sum_i 1/binom(j,i); C_j^(k) = sum_i C_i^(k-1)/binom(j,i).
inline constexpr int kMaxCTableJ = 200;
inline constexpr int kMaxCTableK = 64;
class CTable {
 public:
  CTable(int max_j, int max_k);
  int max_j() const { return max_j_; }
  int max_k() const { return max_k_; }
  const Rat& at(int k, int j) const;

 private:
  int max_j_, max_k_;
  std::vector<std::vector<Rat>> rows_;  // rows_[k][j]
};

CTable c_table(int max_j, int max_k);

// sum over all m-tuples of t_size  ==  (n-m)! C_{n-m}^(m-1)
// (with l_m allowed to reach n).
struct TSumCheck {
  BigInt lhs;
  Rat rhs;
  bool ok = false;
};
TSumCheck t_sum_identity(int n, int m);

// Nilpotent-matrix route to C_n^(k). B is the (n+1)x(n+1) matrix over
// indices 0..n with entries 1/binom(i,j) for i >= j (the index-0 column
// carries the constant term of the recursion), v^0_j = C_j^(0) and
// v^{l+1} = (B - I) v^l. Then C_n^(k) = sum_{l=0}^{min(k,n)} binom(k,l)
// v^l_n; v^l = 0 for l > n, and v^n has the single entry v^n_n = 1/n!.
struct NilpotentExpansion {
  int n = 0;
  std::vector<std::vector<Rat>> v;  // v[l][j], l = 0..n+1, j = 0..n

  Rat c(int k) const;  // C_n^(k) via the binomial expansion
};
inline constexpr int kMaxNilpotentDim = 64;
NilpotentExpansion nilpotent_expansion(int n);
Rat c_via_nilpotent(int n, int k);

// d_{n0} = sup_n sum_{i=n0+1}^n 1/binom(n,i), scanned exactly up to n_max.
struct DTail {
  Rat sup;
  int argmax = 0;
};
DTail d_tail_constant(int n0, int n_max);

// max over n <= n_max of C_n^(0) (= 8/3, attained at n = 3 and 4).
struct SupC0 {
  Rat value;
  std::vector<int> argmax;
};
SupC0 sup_c0(int n_max);

// rho(k) = (k-m+1)! / (n (n-1) ... (n-k+1)) on m <= k <= n: verifies the
// ratio h(k) = rho(k+1)/rho(k) is nondecreasing and the maximum sits at the
// right endpoint rho(n).
bool rho_extremum_check(int n, int m);

// Growth diagnostics for sup_n C_n^(k): the (1+delta)^k envelope and the
// per-n polynomial bound C_n^(k) <= c_n k^n.
struct GrowthRow {
  int k = 0;
  double sup_c = 0.0;     // S(k) = max_{n <= n_max} C_n^(k)
  double ratio = 0.0;     // S(k) / (1+delta)^k
  double exponent = 0.0;  // log(ratio) / log(k), k >= 2
};
struct GrowthEvidence {
  double delta = 0.0;
  int k_max = 0, n_max = 0;
  std::vector<GrowthRow> rows;
  double max_ratio = 0.0;
  // For each n in 1..lemma_n_max: max over k of C_n^(k)/k^n, and the bound
  // sum_l |v^l_n| it must stay under.
  std::vector<double> lemma_ratio_max;
  std::vector<double> lemma_bound;
  bool lemma_ok = false;
};
GrowthEvidence growth_bound_evidence(double delta, int k_max, int n_max, int lemma_n_max = 6);

// Right-hand sides of the W-tail bounds, for caller-supplied constants.
// kAll:      2 K c m^r n^5 / (2^n e) * ((1+delta) e / n)^m
// kFromZero: c m^r (1+delta)^m (n-m)! / n!
double tail_bound_rhs(int n, int m, Variant v, double delta, double c_delta, double r_delta,
                      double K);

// Smallest K with (n-m+1+shift)!/n! <= K (e/n)^(m-1+shift... ) -- concretely:
//   shift = 0: (n-m+1)!/n! <= K (e/n)^(m-1)   (free-start chain)
//   shift = 1: (n-m)!/n!   <= K (e/n)^m       (from-zero chain)
// scanned over 1 <= m <= n <= n_max.
double fit_stirling_K(int n_max, int shift);

// Derived keyhyper constants for delta = 2/3: with d_0 = 5/3 and
// sup_n C_n^(0) = 8/3 the recursion gives sup_n C_n^(k) <= (25/6)(5/3)^k,
// hence sum |T^n_m| <= (5/2) (5/3)^m (n-m)!.
struct FittedConstants {
  double delta = 2.0 / 3.0;
  double c_delta = 5.0 / 2.0;  // m-form constant
  double r_delta = 0.0;
  double K = 1.0;  // Stirling constant, = fit_stirling_K in both forms
};

// Visits every strictly increasing m-tuple in [1, n].
void for_each_tindex(int n, int m, const std::function<void(const TIndex&)>& fn);

}  // namespace tamperlab::comb
