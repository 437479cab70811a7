#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tamperlab/detection.hpp"

using namespace tamperlab;

TEST_CASE("size-bias identity holds exactly on every enumerable instance") {
  for (Variant v : {Variant::kFromZero, Variant::kAll})
    for (int n = 2; n <= 3; ++n)
      for (Rat p : {Rat(1, 3), Rat(1, 2), Rat(2, 3)}) {
        SizeBiasResult r = size_bias_check(n, p, v);
        CHECK(r.equal);
        CHECK(r.max_discrepancy == 0);
        CHECK(r.total_mass_a == 1);
      }
  SizeBiasResult r = size_bias_check(2, Rat(1), Variant::kFromZero);  // Q = P pointwise
  CHECK(r.equal);
  CHECK_THROWS_AS(size_bias_check(4, Rat(1, 2), Variant::kFromZero), CapError);
  CHECK_THROWS_AS(size_bias_check(2, Rat(0), Variant::kFromZero), std::domain_error);
}

TEST_CASE("exact TV: hand value 9/16 and the two-formula agreement") {
  TvExactResult r = tv_exact(2, Rat(1, 2), Variant::kFromZero);
  CHECK(r.value == Rat(9, 16));
  CHECK(r.half_l1 == Rat(9, 16));
  CHECK(tv_exact(3, Rat(1), Variant::kAll).value == 0);
  for (Variant v : {Variant::kFromZero, Variant::kAll})
    for (int n = 1; n <= 3; ++n)
      for (Rat p : {Rat(1, 3), Rat(1, 2), Rat(2, 3), Rat(1)}) {
        TvExactResult t = tv_exact(n, p, v);
        CHECK(t.formulas_agree());
        CHECK(t.value >= 0);
        CHECK(t.value <= 1);
      }
  TvExactResult degenerate = tv_exact(2, Rat(0), Variant::kFromZero);
  CHECK(degenerate.degenerate);
  CHECK(degenerate.value == 1);
}

TEST_CASE("tv_mc agrees with tv_exact and is deterministic") {
  for (int n = 2; n <= 3; ++n) {
    auto params = ModelParams::from_p_exact(n, Rat(1, 2), Variant::kFromZero, 555);
    TvReport mc = tv_mc(params, 100000);
    double exact = to_double(tv_exact(n, Rat(1, 2), Variant::kFromZero).value);
    CHECK(std::abs(mc.estimate - exact) < 3 * mc.se);
    TvReport again = tv_mc(params, 100000);
    CHECK(mc.estimate == again.estimate);  // same seed, same streams
    TvReport threaded = tv_mc(params, 100000, 4);
    CHECK(threaded.estimate == mc.estimate);  // worker count cannot matter
  }
  auto sure = ModelParams::from_p(3, 1.0, Variant::kAll, 9);
  TvReport full = tv_mc(sure, 2000);
  CHECK(full.estimate == 0.0);
  CHECK(full.se == 0.0);
}

TEST_CASE("variance ratio: exact identity and MC agreement") {
  CHECK(variance_ratio_exact(3, Rat(1, 2), Variant::kFromZero) == Rat(3, 2));
  CHECK(variance_ratio_exact(3, Rat(1), Variant::kFromZero) == 0);
  // n=1 is degenerate with W constant at 1 (the only path is the reference),
  // so N is Bernoulli(p) and the ratio is (1-p)/p, not 0
  CHECK(variance_ratio_exact(1, Rat(1, 2), Variant::kFromZero) == 1);
  for (Variant v : {Variant::kFromZero, Variant::kAll})
    for (int n = 2; n <= 5; ++n) CHECK(variance_ratio_exact(n, Rat(1, 3), v) > 0);
  auto params = ModelParams::from_p_exact(3, Rat(1, 2), Variant::kFromZero, 808);
  MomentEstimate mc = variance_ratio_mc(params, 200000);
  CHECK(std::abs(mc.value - 1.5) < 3 * mc.se);
  CHECK_THROWS_AS(variance_ratio_mc(ModelParams::from_p(3, 0.0, Variant::kFromZero, 1), 10),
                  std::domain_error);
}

TEST_CASE("second-moment identity: enumeration vs (EN)^2 E p^{-W}, both variants") {
  for (Variant v : {Variant::kFromZero, Variant::kAll})
    for (int n = 2; n <= 3; ++n)
      for (Rat p : {Rat(1, 3), Rat(1, 2), Rat(2, 3)}) {
        ModelEnumeration en = enumerate_model(n, p, v);
        Rat second_moment = 0;
        for (uint64_t w = 0; w < en.num_configs(); ++w) {
          Rat nw(en.count_paths(uint32_t(w)));
          second_moment += nw * nw * en.prob(uint32_t(w));
        }
        Rat mean = expected_count_exact(n, p, v);
        CHECK(second_moment == mean * mean * biased_second_moment_exact(n, p, v));
      }
  // the frozen instance: n=3, p=1/2, from-zero gives exactly 45/32
  ModelEnumeration en = enumerate_model(3, Rat(1, 2), Variant::kFromZero);
  Rat second_moment = 0;
  for (uint64_t w = 0; w < en.num_configs(); ++w) {
    Rat nw(en.count_paths(uint32_t(w)));
    second_moment += nw * nw * en.prob(uint32_t(w));
  }
  CHECK(second_moment == Rat(45, 32));
}

TEST_CASE("enumeration mean matches the closed form (internal consistency)") {
  for (Variant v : {Variant::kFromZero, Variant::kAll}) {
    ModelEnumeration en = enumerate_model(3, Rat(1, 3), v);
    Rat mean = 0, mass = 0;
    for (uint64_t w = 0; w < en.num_configs(); ++w) {
      mean += Rat(en.count_paths(uint32_t(w))) * en.prob(uint32_t(w));
      mass += en.prob(uint32_t(w));
    }
    CHECK(mass == 1);
    CHECK(mean == expected_count_exact(3, Rat(1, 3), v));
  }
}

TEST_CASE("lln diagnostic is all-zero at p = 1") {
  auto params = ModelParams::from_p(4, 1.0, Variant::kFromZero, 3);
  auto rows = lln_diagnostic(params, 3000, {0.1, 0.5, 1.0});
  for (const auto& row : rows) CHECK(row.exceedance == 0.0);
}

TEST_CASE("isolated-vertex probe") {
  auto params = ModelParams::from_p_exact(3, Rat(1, 2), Variant::kFromZero, 77);
  IsolatedZeroResult r = isolated_zero_probe(params, 40000);
  CHECK(r.analytic == doctest::Approx(0.125));
  CHECK(r.freq_tampered == 0.0);  // the planted path touches vertex 0
  CHECK(std::abs(r.freq_untampered - r.analytic) < 3 * r.se_untampered);

  auto sure = ModelParams::from_p(3, 1.0, Variant::kFromZero, 78);
  IsolatedZeroResult rs = isolated_zero_probe(sure, 500);
  CHECK(rs.freq_untampered == 0.0);
  CHECK(rs.freq_tampered == 0.0);
}

TEST_CASE("tampered counts stochastically dominate untampered ones") {
  auto params = ModelParams::from_p(6, 0.45, Variant::kFromZero, 6001);
  const uint64_t samples = 20000;
  NormalizedCounts p_side = sample_normalized_counts(params, samples, false);
  NormalizedCounts q_side = sample_normalized_counts(params, samples, true, 1, /*cell=*/7);
  for (double t : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    auto tail = [&](const NormalizedCounts& c) {
      uint64_t hits = 0;
      for (double y : c.y) hits += y >= t;
      return double(hits) / double(c.y.size());
    };
    double fp = tail(p_side), fq = tail(q_side);
    double se = std::sqrt(fp * (1 - fp) / samples) + std::sqrt(fq * (1 - fq) / samples);
    CHECK(fq >= fp - 3 * se);
  }
}
