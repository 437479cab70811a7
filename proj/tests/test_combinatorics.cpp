#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tamperlab/combinatorics.hpp"
#include "tamperlab/path_count.hpp"

using namespace tamperlab;
using namespace tamperlab::comb;

TEST_CASE("t_size closed form vs stated values and brute force") {
  CHECK(t_size({3, {1}}) == 2);        // 0! 2!
  CHECK(t_size({3, {1, 2, 3}}) == 1);  // identity only
  CHECK(t_size({4, {1, 4}}) == 2);     // 0! 2! 0!
  for (int n = 1; n <= 7; ++n)
    for (int m = 1; m <= n; ++m)
      for_each_tindex(n, m, [&](const TIndex& idx) { CHECK(t_size(idx) == t_size_brute(idx)); });
}

TEST_CASE("edge membership by sub-permutations") {
  std::vector<int> id3 = {1, 2, 3};
  for (int j = 1; j <= 3; ++j) CHECK(edge_in_from_zero_path(id3, j));
  std::vector<int> s = {2, 1, 3};
  CHECK(edge_in_from_zero_path(s, 3));
  CHECK_FALSE(edge_in_from_zero_path(s, 1));
  // exhaustive agreement with the geometric membership for n <= 6
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = i + 1;
    do {
      DiameterPath p{n, 0, sigma};
      auto edges = path_edges(p);
      for (int j = 1; j <= n; ++j) {
        uint64_t ej = edge_index(n, (uint32_t(1) << (j - 1)) - 1, j - 1);
        bool geometric = std::find(edges.begin(), edges.end(), ej) != edges.end();
        CHECK(edge_in_from_zero_path(sigma, j) == geometric);
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
}

TEST_CASE("prob_contains_from_zero") {
  CHECK(prob_contains_from_zero({3, {1}}) == Rat(1, 3));
  CHECK(prob_contains_from_zero({3, {1, 2, 3}}) == Rat(1, 6));
  for (int n = 1; n <= 6; ++n) {
    TIndex all{n, {}};
    for (int i = 1; i <= n; ++i) all.ls.push_back(i);
    CHECK(prob_contains_from_zero(all) == Rat(1, factorial(n)));
  }
}

TEST_CASE("prob_A_exact equals brute force over all paths (m >= 2, n <= 6)") {
  for (int n = 2; n <= 6; ++n)
    for (int m = 2; m <= n; ++m)
      for_each_tindex(n, m, [&](const TIndex& idx) {
        CHECK(prob_A_exact(idx) == prob_A_brute(idx));
      });
}

TEST_CASE("prob_A_exact of the full tuple is 1/(2^(n-1) n!)") {
  for (int n = 2; n <= 8; ++n) {
    TIndex all{n, {}};
    for (int i = 1; i <= n; ++i) all.ls.push_back(i);
    CHECK(prob_A_exact(all) == Rat(1, (BigInt(1) << (n - 1)) * factorial(n)));
  }
  CHECK_THROWS_AS(prob_A_exact({4, {2}}), std::invalid_argument);  // m = 1 not derived
}

TEST_CASE("single-edge containment probability for the free-start variant is 2^(1-n)") {
  for (int n = 2; n <= 5; ++n)
    for (int j = 1; j <= n; ++j) {
      Rat brute = prob_A_brute({n, {j}});
      CHECK(brute == Rat(1, BigInt(1) << (n - 1)));
    }
}

TEST_CASE("bc sum bound and per-fraction bound") {
  CHECK(bc_sum_bound_check(4, 1, 4).ok());
  CHECK(bc_sum_bound_check(2, 1, 2).ok());
  for (int n = 1; n <= 9; ++n)
    for (int l1 = 1; l1 <= n; ++l1)
      for (int lm = l1; lm <= n; ++lm) CHECK(bc_sum_bound_check(n, l1, lm).ok());
}

TEST_CASE("C table values") {
  CTable t = c_table(6, 3);
  CHECK(t.at(0, 0) == 1);
  CHECK(t.at(0, 1) == 2);
  CHECK(t.at(0, 3) == Rat(8, 3));
  CHECK(t.at(0, 5) == Rat(13, 5));
  CHECK(t.at(1, 2) == Rat(9, 2));
  CHECK_THROWS_AS(c_table(kMaxCTableJ + 1, 1), CapError);
  CHECK_THROWS_AS(c_table(10, kMaxCTableK + 1), CapError);
}

TEST_CASE("t-sum identity: sum of |T| over tuples = (n-m)! C_{n-m}^{(m-1)}") {
  TSumCheck c42 = t_sum_identity(4, 2);
  CHECK(c42.lhs == 9);
  CHECK(c42.rhs == 9);
  CHECK(c42.ok);
  for (int n = 1; n <= 12; ++n)
    for (int m = 1; m <= n; ++m) {
      TSumCheck c = t_sum_identity(n, m);
      CHECK(c.ok);
      if (n == m) CHECK(c.lhs == 1);
    }
}

TEST_CASE("nilpotent expansion reproduces the recursion exactly") {
  CTable table(8, 12);
  for (int n = 1; n <= 8; ++n) {
    NilpotentExpansion ex = nilpotent_expansion(n);
    for (int k = 0; k <= 12; ++k) CHECK(ex.c(k) == table.at(k, n));
    // orbit terminates: v^{n+1} = 0, and the last surviving vector is the
    // single entry v^n_n = 1/n! (the length-(n+1) chain through the matrix)
    for (int j = 0; j <= n; ++j) {
      CHECK(ex.v[n + 1][j] == 0);
      if (j < n) CHECK(ex.v[n][j] == 0);
    }
    CHECK(ex.v[n][n] == Rat(1, factorial(n)));
  }
  CHECK(c_via_nilpotent(4, 3) == c_table(4, 3).at(3, 4));
}

TEST_CASE("d-tail constants") {
  DTail d0 = d_tail_constant(0, 200);
  CHECK(d0.sup == Rat(5, 3));
  CHECK((d0.argmax == 3 || d0.argmax == 4));
  DTail d1 = d_tail_constant(1, 200);
  CHECK(d1.sup == Rat(17, 12));
  CHECK(d1.argmax == 4);
  Rat prev = d0.sup;
  for (int n0 = 1; n0 <= 20; ++n0) {
    DTail d = d_tail_constant(n0, 400);
    CHECK(d.sup <= prev);
    CHECK(d.sup >= 1);
    prev = d.sup;
  }
  // the tail creeps toward 1: 113/105 at n0 = 12, first within 0.05 at n0 = 19
  CHECK(d_tail_constant(12, 400).sup == Rat(113, 105));
  CHECK(d_tail_constant(18, 400).sup - 1 > Rat(1, 20));
  CHECK(d_tail_constant(19, 400).sup == Rat(485, 462));
  CHECK(d_tail_constant(19, 400).sup - 1 <= Rat(1, 20));
}

TEST_CASE("sup of C^(0) is 8/3, attained at n = 3 and 4 only") {
  SupC0 s = sup_c0(200);
  CHECK(s.value == Rat(8, 3));
  CHECK(s.argmax == std::vector<int>{3, 4});
}

TEST_CASE("rho is log-convex with its maximum at the right endpoint") {
  CHECK(rho_extremum_check(10, 3));
  CHECK(rho_extremum_check(5, 5));
  for (int n = 1; n <= 30; ++n)
    for (int m = 1; m <= n; ++m) CHECK(rho_extremum_check(n, m));
}

TEST_CASE("growth evidence: the (1+delta)^k envelope and the k^n lemma") {
  GrowthEvidence ev = growth_bound_evidence(2.0 / 3.0, 40, 40);
  CHECK(ev.rows[0].sup_c == doctest::Approx(8.0 / 3.0));
  // with d_0 = 5/3 the recursion gives sup_n C_n^(k) <= (8/3 + 3/2) (5/3)^k
  CHECK(ev.max_ratio <= 25.0 / 6.0 + 1e-9);
  CHECK(ev.lemma_ok);
  for (int n = 1; n <= 6; ++n) CHECK(ev.lemma_ratio_max[n] <= ev.lemma_bound[n]);
}

TEST_CASE("union bound: P(W >= m) <= sum of tuple probabilities, both variants") {
  for (int n = 2; n <= 6; ++n) {
    OverlapDist zero = overlap_distribution_exact(n, Variant::kFromZero);
    OverlapDist all = overlap_distribution_exact(n, Variant::kAll);
    for (int m = 1; m <= n; ++m) {
      Rat sum_zero = 0, sum_all = 0;
      for_each_tindex(n, m, [&](const TIndex& idx) {
        sum_zero += prob_contains_from_zero(idx);
        sum_all += idx.m() >= 2 ? prob_A_exact(idx) : prob_A_brute(idx);
      });
      CHECK(zero.tail_exact(m) <= sum_zero);
      CHECK(all.tail_exact(m) <= sum_all);
    }
  }
}

TEST_CASE("tuple probabilities sum to an integer times 1/n! (incidence count)") {
  for (int n = 2; n <= 7; ++n)
    for (int m = 1; m <= n; ++m) {
      Rat total = 0;
      for_each_tindex(n, m, [&](const TIndex& idx) { total += prob_contains_from_zero(idx); });
      Rat scaled = total * Rat(factorial(n));
      CHECK(denominator(scaled) == 1);
    }
}

TEST_CASE("stirling constants over n <= 50") {
  double k0 = fit_stirling_K(50, 0);
  double k1 = fit_stirling_K(50, 1);
  CHECK(k0 == doctest::Approx(1.0).epsilon(1e-9));       // attained at m = 1
  CHECK(k1 == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("tail bounds hold for the derived constants at enumerable sizes") {
  FittedConstants fc;
  // from-zero route (Wb): P(W >= m) <= c m^r (1+d)^m (n-m)!/n!, m >= 1
  for (int n = 2; n <= 7; ++n) {
    OverlapDist d = overlap_distribution_exact(n, Variant::kFromZero);
    for (int m = 1; m <= n; ++m) {
      double rhs = tail_bound_rhs(n, m, Variant::kFromZero, fc.delta, fc.c_delta, fc.r_delta, fc.K);
      CHECK(to_double(d.tail_exact(m)) <= rhs + 1e-12);
    }
  }
  CHECK(overlap_distribution_exact(3, Variant::kFromZero).tail_exact(1) == Rat(1, 2));
  // free-start route with the Stirling K
  double K = fit_stirling_K(50, 0);
  for (int n = 2; n <= 6; ++n) {
    OverlapDist d = overlap_distribution_exact(n, Variant::kAll);
    for (int m = 2; m <= n; ++m) {
      double rhs = tail_bound_rhs(n, m, Variant::kAll, fc.delta, fc.c_delta, fc.r_delta, K);
      CHECK(to_double(d.tail_exact(m)) <= rhs + 1e-12);
    }
  }
}
