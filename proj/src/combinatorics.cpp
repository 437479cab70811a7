#include "tamperlab/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tamperlab::comb {

bool tindex_valid(const TIndex& idx) {
  if (idx.n < 1 || idx.ls.empty()) return false;
  int prev = 0;
  for (int l : idx.ls) {
    if (l <= prev || l > idx.n) return false;
    prev = l;
  }
  return true;
}

static void require_tindex(const TIndex& idx) {
  if (!tindex_valid(idx)) throw std::invalid_argument("invalid edge-index tuple");
}

BigInt t_block_size(int len, const std::vector<int>& ls) {
  if (len < 0) throw std::invalid_argument("t_block_size: negative length");
  if (ls.empty()) return factorial(len);
  BigInt prod = factorial(ls.front() - 1);
  for (size_t i = 1; i < ls.size(); ++i) prod *= factorial(ls[i] - 1 - ls[i - 1]);
  prod *= factorial(len - ls.back());
  return prod;
}

BigInt t_size(const TIndex& idx) {
  require_tindex(idx);
  return t_block_size(idx.n, idx.ls);
}

bool edge_in_from_zero_path(const std::vector<int>& sigma, int j) {
  int n = int(sigma.size());
  if (j < 1 || j > n) throw std::invalid_argument("edge_in_from_zero_path: edge index out of range");
  // [t] is a sub-permutation iff max(sigma_1..sigma_t) == t
  int mx = 0;
  for (int t = 1; t <= j; ++t) {
    mx = std::max(mx, sigma[t - 1]);
    if (t == j - 1 && mx != t) return false;
  }
  return mx == j;
}

BigInt t_size_brute(const TIndex& idx) {
  require_tindex(idx);
  std::vector<int> sigma(idx.n);
  for (int i = 0; i < idx.n; ++i) sigma[i] = i + 1;
  BigInt count = 0;
  do {
    bool all = true;
    for (int l : idx.ls)
      if (!edge_in_from_zero_path(sigma, l)) {
        all = false;
        break;
      }
    count += all;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return count;
}

Rat prob_contains_from_zero(const TIndex& idx) {
  return Rat(t_size(idx), factorial(idx.n));
}

Rat prob_A_exact(const TIndex& idx) {
  require_tindex(idx);
  const int n = idx.n, m = idx.m();
  if (m < 2) throw std::invalid_argument("prob_A_exact: derived for m >= 2 only");
  const int l1 = idx.ls.front(), lm = idx.ls.back();
  const int span = lm - l1;

  // Middle blocks: the l_m - l_1 coordinates between the far edges, with the
  // inner edge pattern in forward (K0 starts) or reversed (K1 starts) order.
  // The last block element is pinned by the far edge, hence span - 1 free.
  std::vector<int> fwd, rev;
  for (int i = 1; i + 1 < m; ++i) {
    fwd.push_back(idx.ls[i] - l1);
    rev.push_back(lm - idx.ls[m - 1 - i]);
  }
  BigInt blocks = t_block_size(span - 1, fwd) + t_block_size(span - 1, rev);

  BigInt sum = 0;
  for (int c = 0; c <= n - lm; ++c)
    for (int b = 0; b <= l1 - 1; ++b)
      sum += binomial(n - lm, c) * binomial(l1 - 1, b) * factorial(b + c) *
             factorial(n - b - c - 1 - span);
  sum *= blocks;
  return Rat(sum, (BigInt(1) << n) * factorial(n));
}

Rat prob_A_brute(const TIndex& idx) {
  require_tindex(idx);
  const int n = idx.n;
  require_cap("prob_A_brute", "n", 8, n);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  const uint32_t vertices = uint32_t(1) << n;
  BigInt hits = 0, total = 0;
  do {
    for (uint32_t x = 0; x < vertices; ++x) {
      // walk the path, marking which reference edges it traverses
      uint32_t v = x;
      uint32_t used = 0;  // bit j-1 set iff e_j traversed
      for (int ccoord : order) {
        uint32_t bit = uint32_t(1) << (ccoord - 1);
        uint32_t base = std::min(v, v ^ bit);
        if (base == bit - 1) used |= bit;
        v ^= bit;
      }
      bool all = true;
      for (int l : idx.ls)
        if (!(used >> (l - 1) & 1)) {
          all = false;
          break;
        }
      hits += all;
      ++total;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return Rat(hits, total);
}

BcSumCheck bc_sum_bound_check(int n, int l1, int lm) {
  if (!(1 <= l1 && l1 <= lm && lm <= n)) throw std::invalid_argument("bc_sum_bound_check: bad l1/lm");
  const int span = lm - l1;
  const int free_len = n - 1 - span;  // elements outside the pinned middle
  BcSumCheck out;
  out.fractions_ok = true;
  out.lhs = 0;
  for (int c = 0; c <= n - lm; ++c)
    for (int b = 0; b <= l1 - 1; ++b) {
      BigInt term = binomial(n - lm, c) * binomial(l1 - 1, b) * factorial(b + c) *
                    factorial(n - b - c - 1 - span);
      out.lhs += term;
      Rat fraction(binomial(n - lm, c) * binomial(l1 - 1, b), binomial(free_len, b + c));
      if (fraction > 1) out.fractions_ok = false;
      // the term rewrites as fraction * free_len!
      if (Rat(term) != fraction * Rat(factorial(free_len))) out.fractions_ok = false;
    }
  out.rhs = BigInt(n) * n * factorial(free_len);
  out.sum_ok = out.lhs <= out.rhs;
  return out;
}

CTable::CTable(int max_j, int max_k) : max_j_(max_j), max_k_(max_k) {
  require_cap("c_table", "max_j", kMaxCTableJ, max_j);
  require_cap("c_table", "max_k", kMaxCTableK, max_k);
  if (max_j < 0 || max_k < 0) throw std::invalid_argument("c_table: negative bounds");
  rows_.assign(max_k + 1, std::vector<Rat>(max_j + 1));
  for (int j = 0; j <= max_j; ++j) {
    Rat acc = 0;
    for (int i = 0; i <= j; ++i) acc += Rat(1, binomial(j, i));
    rows_[0][j] = acc;
  }
  for (int k = 1; k <= max_k; ++k)
    for (int j = 0; j <= max_j; ++j) {
      Rat acc = 0;
      for (int i = 0; i <= j; ++i) acc += rows_[k - 1][i] / Rat(binomial(j, i));
      rows_[k][j] = acc;
    }
}

const Rat& CTable::at(int k, int j) const {
  if (k < 0 || k > max_k_ || j < 0 || j > max_j_) throw std::out_of_range("CTable::at");
  return rows_[k][j];
}

CTable c_table(int max_j, int max_k) { return CTable(max_j, max_k); }

void for_each_tindex(int n, int m, const std::function<void(const TIndex&)>& fn) {
  if (m < 1 || m > n) return;
  TIndex idx;
  idx.n = n;
  idx.ls.resize(m);
  for (int i = 0; i < m; ++i) idx.ls[i] = i + 1;
  while (true) {
    fn(idx);
    int i = m - 1;
    while (i >= 0 && idx.ls[i] == n - (m - 1 - i)) --i;
    if (i < 0) break;
    ++idx.ls[i];
    for (int j = i + 1; j < m; ++j) idx.ls[j] = idx.ls[j - 1] + 1;
  }
}

TSumCheck t_sum_identity(int n, int m) {
  if (!(1 <= m && m <= n)) throw std::invalid_argument("t_sum_identity: need 1 <= m <= n");
  TSumCheck out;
  out.lhs = 0;
  for_each_tindex(n, m, [&](const TIndex& idx) { out.lhs += t_size(idx); });
  CTable table(n - m, m - 1);
  out.rhs = Rat(factorial(n - m)) * table.at(m - 1, n - m);
  out.ok = Rat(out.lhs) == out.rhs;
  return out;
}

NilpotentExpansion nilpotent_expansion(int n) {
  require_cap("nilpotent_expansion", "n", kMaxNilpotentDim, n);
  if (n < 1) throw std::invalid_argument("nilpotent_expansion: n must be >= 1");
  NilpotentExpansion ex;
  ex.n = n;
  ex.v.assign(n + 2, std::vector<Rat>(n + 1));
  for (int j = 0; j <= n; ++j) {
    Rat acc = 0;
    for (int i = 0; i <= j; ++i) acc += Rat(1, binomial(j, i));
    ex.v[0][j] = acc;
  }
  // v^{l+1} = (B - I) v^l with b_ij = 1/binom(i,j), i > j (strictly lower)
  for (int l = 0; l <= n; ++l)
    for (int j = 0; j <= n; ++j) {
      Rat acc = 0;
      for (int i = 0; i < j; ++i) acc += ex.v[l][i] / Rat(binomial(j, i));
      ex.v[l + 1][j] = acc;
    }
  return ex;
}

Rat NilpotentExpansion::c(int k) const {
  Rat acc = 0;
  for (int l = 0; l <= std::min(k, n); ++l) acc += Rat(binomial(k, l)) * v[l][n];
  return acc;
}

Rat c_via_nilpotent(int n, int k) { return nilpotent_expansion(n).c(k); }

DTail d_tail_constant(int n0, int n_max) {
  if (n0 < 0 || n_max < n0 + 1) throw std::invalid_argument("d_tail_constant: need n_max >= n0+1");
  DTail out;
  out.sup = 0;
  for (int n = n0 + 1; n <= n_max; ++n) {
    Rat s = 0;
    for (int i = n0 + 1; i <= n; ++i) s += Rat(1, binomial(n, i));
    if (s > out.sup) {
      out.sup = s;
      out.argmax = n;
    }
  }
  return out;
}

SupC0 sup_c0(int n_max) {
  if (n_max < 4) throw std::invalid_argument("sup_c0: need n_max >= 4");
  SupC0 out;
  out.value = 0;
  for (int n = 0; n <= n_max; ++n) {
    Rat s = 0;
    for (int i = 0; i <= n; ++i) s += Rat(1, binomial(n, i));
    if (s > out.value) {
      out.value = s;
      out.argmax = {n};
    } else if (s == out.value) {
      out.argmax.push_back(n);
    }
  }
  return out;
}

bool rho_extremum_check(int n, int m) {
  if (!(1 <= m && m <= n)) throw std::invalid_argument("rho_extremum_check: need 1 <= m <= n");
  auto rho = [&](int k) {
    BigInt falling = 1;
    for (int t = 0; t < k; ++t) falling *= (n - t);
    return Rat(factorial(k - m + 1), falling);
  };
  Rat prev_h = 0;
  bool have_prev = false;
  for (int k = m; k < n; ++k) {
    Rat h = rho(k + 1) / rho(k);
    if (have_prev && h < prev_h) return false;
    prev_h = h;
    have_prev = true;
  }
  Rat max_val = 0;
  for (int k = m; k <= n; ++k) max_val = std::max(max_val, rho(k));
  return max_val == std::max(rho(m), rho(n)) && max_val == rho(n);
}

GrowthEvidence growth_bound_evidence(double delta, int k_max, int n_max, int lemma_n_max) {
  if (delta <= 0) throw std::invalid_argument("growth_bound_evidence: delta must be > 0");
  GrowthEvidence ev;
  ev.delta = delta;
  ev.k_max = k_max;
  ev.n_max = n_max;
  CTable table(n_max, k_max);
  ev.max_ratio = 0;
  for (int k = 0; k <= k_max; ++k) {
    GrowthRow row;
    row.k = k;
    Rat s = 0;
    for (int n = 0; n <= n_max; ++n) s = std::max(s, table.at(k, n));
    row.sup_c = to_double(s);
    row.ratio = row.sup_c / std::pow(1.0 + delta, k);
    row.exponent = k >= 2 ? std::log(row.ratio) / std::log(double(k)) : 0.0;
    ev.max_ratio = std::max(ev.max_ratio, row.ratio);
    ev.rows.push_back(row);
  }
  lemma_n_max = std::min(lemma_n_max, n_max);
  ev.lemma_ratio_max.assign(lemma_n_max + 1, 0.0);
  ev.lemma_bound.assign(lemma_n_max + 1, 0.0);
  ev.lemma_ok = true;
  for (int n = 1; n <= lemma_n_max; ++n) {
    NilpotentExpansion ex = nilpotent_expansion(n);
    double bound = 0;
    for (int l = 0; l <= n; ++l) bound += std::abs(to_double(ex.v[l][n]));
    ev.lemma_bound[n] = bound;  // binom(k,l) <= k^l <= k^n for k >= 1
    double worst = 0;
    for (int k = 1; k <= k_max; ++k)
      worst = std::max(worst, to_double(table.at(k, n)) / std::pow(double(k), n));
    ev.lemma_ratio_max[n] = worst;
    if (worst > bound) ev.lemma_ok = false;
  }
  return ev;
}

double tail_bound_rhs(int n, int m, Variant v, double delta, double c_delta, double r_delta,
                      double K) {
  if (m < 1 || m > n) throw std::invalid_argument("tail_bound_rhs: need 1 <= m <= n");
  double mr = std::pow(double(m), r_delta);
  if (v == Variant::kAll) {
    double e = std::exp(1.0);
    return 2.0 * K * c_delta * mr * std::pow(double(n), 5) / (std::exp2(double(n)) * e) *
           std::pow((1.0 + delta) * e / n, m);
  }
  double logfac = std::lgamma(double(n - m + 1)) - std::lgamma(double(n + 1));
  return c_delta * mr * std::pow(1.0 + delta, m) * std::exp(logfac);
}

double fit_stirling_K(int n_max, int shift) {
  if (shift != 0 && shift != 1) throw std::invalid_argument("fit_stirling_K: shift must be 0 or 1");
  double best = 0;
  for (int n = 1; n <= n_max; ++n)
    for (int m = 1; m <= n; ++m) {
      // shift 0: (n-m+1)!/n! vs (e/n)^(m-1); shift 1: (n-m)!/n! vs (e/n)^m
      int top = n - m + 1 - shift;
      int expo = m - 1 + shift;
      if (top < 0) continue;
      double log_ratio = std::lgamma(double(top + 1)) - std::lgamma(double(n + 1)) -
                         double(expo) * (1.0 - std::log(double(n)));
      best = std::max(best, std::exp(log_ratio));
    }
  return best;
}

}  // namespace tamperlab::comb
