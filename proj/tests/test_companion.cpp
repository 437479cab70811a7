#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "tamperlab/companion.hpp"

using namespace tamperlab;
using namespace tamperlab::er;
using namespace tamperlab::lis;

TEST_CASE("er sampling degenerate and binomial mean") {
  RngStream s(1, 0);
  CHECK(er_sample(5, 1.0, s) == ErConfig::complete(5));
  CHECK(er_sample(5, 0.0, s) == ErConfig::empty(5));
  const int samples = 50000, n = 6;
  double total = 0;
  for (uint32_t r = 0; r < samples; ++r) {
    RngStream st(99, stream_id(0, r));
    total += double(er_sample(n, 0.3, st).edge_count());
  }
  double mean = total / samples;
  double expect = 15 * 0.3;
  double se = std::sqrt(15 * 0.3 * 0.7 / samples);
  CHECK(std::abs(mean - expect) < 3 * se);
}

TEST_CASE("ham_tamper plants a full path") {
  RngStream s(5, 1);
  ErConfig empty3 = ErConfig::empty(3);
  ErConfig t = ham_tamper(empty3, s);
  CHECK(t.edge_count() == 2);
  CHECK(ham_count(t) >= 1);
  ErConfig k4 = ErConfig::complete(4);
  RngStream s2(5, 2);
  CHECK(ham_tamper(k4, s2) == k4);
  // uniform over the 3 paths of K3
  const int samples = 60000;
  std::map<std::string, int> freq;
  for (uint32_t r = 0; r < samples; ++r) {
    RngStream st(123, stream_id(1, r));
    auto seq = sample_ham_path(3, st);
    freq[std::to_string(seq[0]) + std::to_string(seq[1]) + std::to_string(seq[2])]++;
  }
  CHECK(freq.size() == 3);
  for (auto& [k, count] : freq) {
    double f = double(count) / samples;
    double se = std::sqrt(f * (1 - f) / samples);
    CHECK(std::abs(f - 1.0 / 3) < 3 * se);
  }
}

TEST_CASE("ham_count on complete graphs is n!/2") {
  for (int n = 2; n <= 8; ++n)
    CHECK(ham_count(ErConfig::complete(n)) == factorial(n) / 2);
  CHECK_THROWS_AS(ham_count(ErConfig::empty(19)), CapError);
}

TEST_CASE("ham_count on a bare path graph is 1") {
  ErConfig path(5);
  for (int v = 0; v + 1 < 5; ++v) path.set_pair(v, v + 1);
  CHECK(ham_count(path) == 1);
}

TEST_CASE("ham DP equals naive enumeration on random configs") {
  for (int n = 4; n <= 8; ++n)
    for (int rep = 0; rep < 50; ++rep) {
      RngStream s(777 + n, rep);
      ErConfig c = er_sample(n, 0.45, s);
      CHECK(ham_count(c) == ham_count_naive(c));
    }
}

TEST_CASE("ham size-bias analogue by full enumeration at n <= 4") {
  // tampered measure = (N^ham / E N^ham) * P, same argument as the hypercube
  for (int n : {3, 4}) {
    const uint64_t slots = uint64_t(n) * (n - 1) / 2;
    const Rat p(1, 3), q(2, 3);
    // all configurations; tampered measure built path by path
    std::vector<Rat> qa(uint64_t(1) << slots, Rat(0));
    std::vector<std::vector<int>> paths;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
      if (perm.front() < perm.back()) paths.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    REQUIRE(paths.size() == uint64_t(factorial(n) / 2));
    ErConfig probe(n);
    auto mask_of = [&](const std::vector<int>& seq) {
      uint64_t m = 0;
      for (size_t i = 0; i + 1 < seq.size(); ++i)
        m |= uint64_t(1) << probe.pair_index(seq[i], seq[i + 1]);
      return m;
    };
    auto prob_of = [&](uint64_t cfg) {
      int edges = std::popcount(cfg);
      return rat_pow(p, edges) * rat_pow(q, int(slots) - edges);
    };
    const Rat p_path = rat_pow(p, n - 1);
    const Rat m_n(paths.size());
    for (const auto& path : paths) {
      uint64_t pm = mask_of(path);
      uint64_t rest = ((uint64_t(1) << slots) - 1) & ~pm;
      uint64_t sub = rest;
      while (true) {
        uint64_t cfg = pm | sub;
        qa[cfg] += prob_of(cfg) / p_path;
        if (sub == 0) break;
        sub = (sub - 1) & rest;
      }
    }
    Rat mean = m_n * p_path;
    for (uint64_t cfg = 0; cfg < (uint64_t(1) << slots); ++cfg) {
      qa[cfg] /= m_n;
      int count = 0;
      for (const auto& path : paths) count += (cfg & mask_of(path)) == mask_of(path);
      Rat qb = Rat(count) / mean * prob_of(cfg);
      CHECK(qa[cfg] == qb);
    }
  }
}

TEST_CASE("edge-count detector formulas") {
  EdgeCountDetector d = edge_count_detector(5, 0.5);
  CHECK(d.delta_exp == doctest::Approx(2.0));
  CHECK(d.sd == doctest::Approx(std::sqrt(2.5)));
  CHECK(d.z == doctest::Approx(2.0 / std::sqrt(2.5)));
  CHECK_FALSE(d.degenerate);
  CHECK(edge_count_detector(5, 1.0).degenerate);
  // z grows like sqrt(n) along p = 1/n
  double z_prev = 0;
  for (int n : {10, 20, 40}) {
    EdgeCountDetector dn = edge_count_detector(n, 1.0 / n);
    CHECK(dn.z > z_prev);
    z_prev = dn.z;
  }
}

TEST_CASE("tampered mean of the edge count matches the closed form") {
  const int n = 8;
  const double p = 0.35;
  const uint64_t slots = uint64_t(n) * (n - 1) / 2;
  const int samples = 40000;
  double total = 0, total_sq = 0;
  for (uint32_t r = 0; r < samples; ++r) {
    RngStream s(31337, stream_id(0, r));
    ErConfig c = ham_tamper(er_sample(n, p, s), s);
    double x = double(c.edge_count());
    total += x;
    total_sq += x * x;
  }
  double mean = total / samples;
  double expect = (double(slots) - (n - 1)) * p + (n - 1);
  double se = std::sqrt((total_sq / samples - mean * mean) / samples);
  CHECK(std::abs(mean - expect) < 3 * se);
}

TEST_CASE("lis tampering basics") {
  RngStream s(2, 0);
  std::vector<int> sigma = {4, 1, 3, 2, 5};
  CHECK(lis_tamper(sigma, 1, s) == sigma);
  std::vector<int> sorted = lis_tamper(sigma, 5, s);
  CHECK(std::is_sorted(sorted.begin(), sorted.end()));
  CHECK_THROWS_AS(lis_tamper(sigma, 0, s), std::invalid_argument);
  CHECK_THROWS_AS(lis_tamper(sigma, 6, s), std::invalid_argument);
}

TEST_CASE("lis length: identity, reversal, handmade") {
  std::vector<int> id(10), rev(10);
  for (int i = 0; i < 10; ++i) {
    id[i] = i + 1;
    rev[i] = 10 - i;
  }
  CHECK(lis_length(id) == 10);
  CHECK(lis_length(rev) == 1);
  CHECK(lis_length({3, 1, 4, 1, 5, 9, 2, 6}) == 4);  // 1,4,5,9 or 3,4,5,9...
}

TEST_CASE("tampered permutations stay permutations and carry a length-k rise") {
  const int n = 40;
  for (int rep = 0; rep < 4000; ++rep) {
    RngStream s(515, rep);
    std::vector<int> sigma = s.permutation(n);
    int k = 1 + int(s.below(n));
    std::vector<int> t = lis_tamper(sigma, k, s);
    CHECK(lis_length(t) >= k);
    std::vector<int> check = t;
    std::sort(check.begin(), check.end());
    bool is_perm = true;
    for (int i = 0; i < n; ++i) is_perm = is_perm && check[i] == i + 1;
    CHECK(is_perm);
  }
}

TEST_CASE("mean LIS over sqrt(n) sits near 2") {
  const int n = 10000;
  const int samples = 20;
  double total = 0;
  for (int rep = 0; rep < samples; ++rep) {
    RngStream s(808, rep);
    total += double(lis_length(s.permutation(n)));
  }
  double ratio = total / samples / std::sqrt(double(n));
  CHECK(ratio > 1.7);
  CHECK(ratio < 2.3);
}
