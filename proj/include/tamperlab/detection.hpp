#pragma once

// Size-bias identity checks, total-variation distance (exact enumeration and
// Monte Carlo), second-moment criteria and the isolated-vertex side channel.
//
// Exact mode enumerates every edge configuration of H_2^n (n <= 3: at most
// 2^12 = 4096 of them) with rational probabilities p^|w| (1-p)^(slots-|w|),
// grouped by edge count. Monte Carlo mode samples configurations under the
// untampered measure with one RNG stream per replicate.

#include <cstdint>
#include <optional>
#include <vector>

#include "tamperlab/hypercube.hpp"
#include "tamperlab/numeric.hpp"
#include "tamperlab/path_count.hpp"

namespace tamperlab {

inline constexpr int kMaxEnumDim = 3;  // 2^(n 2^(n-1)) configurations

// Every configuration of the n-cube with its exact measure and path count.
struct ModelEnumeration {
  int n = 0;
  Variant variant = Variant::kFromZero;
  int slots = 0;                       // edge slots, <= 12
  Rat p;                               // retention probability
  std::vector<uint32_t> path_masks;    // the m_n paths as edge bitmasks
  std::vector<Rat> weight_by_count;    // p^i (1-p)^(slots-i)

  Rat prob(uint32_t config) const;     // P(config)
  int count_paths(uint32_t config) const;  // N(config)
  uint64_t num_configs() const { return uint64_t(1) << slots; }
};

ModelEnumeration enumerate_model(int n, const Rat& p, Variant v);

// Builds the tampered measure twice -- (a) as the average of the m_n
// conditional measures given "path j present", (b) as the size-biased
// measure N/E[N] * P -- and compares configuration by configuration.
struct SizeBiasResult {
  bool equal = false;
  Rat max_discrepancy;
  Rat total_mass_a;  // should be exactly 1
  uint64_t configs = 0;
};
SizeBiasResult size_bias_check(int n, const Rat& p, Variant v);

struct TvExactResult {
  Rat value;          // sum (1 - N/EN)^+ P
  Rat half_l1;        // (1/2) sum |P - Q|, must equal value
  bool degenerate = false;  // EN = 0: TV = 1 by support disjointness
  bool formulas_agree() const { return degenerate || value == half_l1; }
};
TvExactResult tv_exact(int n, const Rat& p, Variant v);

struct TvReport {
  double estimate = 0.0;
  double se = 0.0;
  std::optional<Rat> exact;
  uint64_t samples = 0;
  const char* method = "";
};

// E_P (1 - N/EN)^+ by sampling configurations under P.
TvReport tv_mc(const ModelParams& params, uint64_t samples, int threads = 1);

// Var(N)/(EN)^2. Exact route: E p^{-W} - 1 via the overlap law.
Rat variance_ratio_exact(int n, const Rat& p, Variant v);

struct MomentEstimate {
  double value = 0.0;
  double se = 0.0;
  uint64_t samples = 0;
};
MomentEstimate variance_ratio_mc(const ModelParams& params, uint64_t samples, int threads = 1);

struct LlnRow {
  double eps = 0.0;
  double exceedance = 0.0;  // empirical P(|N/EN - 1| > eps)
  double se = 0.0;
};
std::vector<LlnRow> lln_diagnostic(const ModelParams& params, uint64_t samples,
                                   const std::vector<double>& eps_grid, int threads = 1);

struct IsolatedZeroResult {
  double freq_untampered = 0.0;
  double se_untampered = 0.0;
  double freq_tampered = 0.0;  // exactly 0 for the from-zero tampering
  double se_tampered = 0.0;
  double analytic = 0.0;  // (1-p)^n
  uint64_t samples = 0;
};
IsolatedZeroResult isolated_zero_probe(const ModelParams& params, uint64_t samples,
                                       int threads = 1);

// One Monte Carlo pass: Y_r = N(config_r)/EN for samples under P (or under
// the tampered measure). All MC detectors above post-process this.
struct NormalizedCounts {
  std::vector<double> y;
  double en = 0.0;

  double mean() const;
  double se_of_mean() const;
};
NormalizedCounts sample_normalized_counts(const ModelParams& params, uint64_t samples,
                                          bool tampered, int threads = 1, uint32_t cell = 0);

}  // namespace tamperlab
