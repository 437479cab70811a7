#include "tamperlab/detection.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace tamperlab {

Rat ModelEnumeration::prob(uint32_t config) const {
  return weight_by_count[std::popcount(config)];
}

int ModelEnumeration::count_paths(uint32_t config) const {
  int count = 0;
  for (uint32_t pm : path_masks) count += (config & pm) == pm;
  return count;
}

ModelEnumeration enumerate_model(int n, const Rat& p, Variant v) {
  require_cap("enumerate_model", "n", kMaxEnumDim, n);
  if (n < 1) throw std::invalid_argument("enumerate_model: n must be >= 1");
  if (p < 0 || p > 1) throw std::invalid_argument("enumerate_model: p must lie in [0, 1]");
  ModelEnumeration en;
  en.n = n;
  en.variant = v;
  en.slots = int(edge_slot_count(n));
  en.p = p;

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  DiameterPath path;
  path.n = n;
  const uint32_t vertices = uint32_t(1) << n;
  do {
    path.order = order;
    if (v == Variant::kFromZero) {
      path.start = 0;
      uint32_t mask = 0;
      for (uint64_t e : path_edges(path)) mask |= uint32_t(1) << e;
      en.path_masks.push_back(mask);
    } else {
      for (uint32_t x = 0; x < vertices; ++x) {
        if (x > antipode(n, x)) continue;  // canonical representative only
        path.start = x;
        uint32_t mask = 0;
        for (uint64_t e : path_edges(path)) mask |= uint32_t(1) << e;
        en.path_masks.push_back(mask);
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));

  en.weight_by_count.resize(en.slots + 1);
  Rat q = Rat(1) - p;
  for (int i = 0; i <= en.slots; ++i)
    en.weight_by_count[i] = rat_pow(p, i) * rat_pow(q, en.slots - i);
  return en;
}

SizeBiasResult size_bias_check(int n, const Rat& p, Variant v) {
  if (p <= 0 || p > 1)
    throw std::domain_error("size_bias_check: needs p in (0, 1] (EN = 0 otherwise)");
  ModelEnumeration en = enumerate_model(n, p, v);
  const uint64_t configs = en.num_configs();
  const Rat p_path = rat_pow(p, n);  // P(O_j), equal for every path
  const Rat mean = Rat(en.path_masks.size()) * p_path;

  // (a) average of conditional measures, path by path
  std::vector<Rat> qa(configs, Rat(0));
  for (uint32_t pm : en.path_masks) {
    uint32_t rest = uint32_t(configs - 1) & ~pm;
    uint32_t sub = rest;
    while (true) {  // every superset of pm
      uint32_t config = pm | sub;
      qa[config] += en.prob(config) / p_path;
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
  }
  SizeBiasResult out;
  out.configs = configs;
  out.max_discrepancy = 0;
  out.total_mass_a = 0;
  out.equal = true;
  const Rat m(en.path_masks.size());
  for (uint64_t w = 0; w < configs; ++w) {
    qa[w] /= m;
    out.total_mass_a += qa[w];
    // (b) size-biased measure
    Rat qb = Rat(en.count_paths(uint32_t(w))) / mean * en.prob(uint32_t(w));
    Rat diff = qa[w] > qb ? qa[w] - qb : qb - qa[w];
    if (diff > out.max_discrepancy) out.max_discrepancy = diff;
    if (diff != 0) out.equal = false;
  }
  return out;
}

TvExactResult tv_exact(int n, const Rat& p, Variant v) {
  TvExactResult out;
  if (p == 0) {
    // P is the point mass on the empty configuration, Q lives on N >= 1
    out.value = 1;
    out.half_l1 = 1;
    out.degenerate = true;
    return out;
  }
  ModelEnumeration en = enumerate_model(n, p, v);
  const Rat mean = Rat(en.path_masks.size()) * rat_pow(p, n);
  out.value = 0;
  out.half_l1 = 0;
  for (uint64_t w = 0; w < en.num_configs(); ++w) {
    Rat pw = en.prob(uint32_t(w));
    Rat ratio = Rat(en.count_paths(uint32_t(w))) / mean;
    if (ratio < 1) out.value += (Rat(1) - ratio) * pw;
    Rat qw = ratio * pw;
    out.half_l1 += pw > qw ? pw - qw : qw - pw;
  }
  out.half_l1 /= 2;
  return out;
}

NormalizedCounts sample_normalized_counts(const ModelParams& params, uint64_t samples,
                                          bool tampered, int threads, uint32_t cell) {
  const int n = params.n;
  if (params.variant == Variant::kAll) require_cap("count_all", "n", kMaxAllDim, n);
  else require_cap("count_from_zero", "n", kMaxFromZeroDim, n);
  NormalizedCounts out;
  out.en = expected_count(n, params.p, params.variant);
  out.y.assign(samples, 0.0);
  if (threads <= 1) {
    PathCounter counter(n);
    for (uint32_t r = 0; r < samples; ++r) {
      RngStream stream(params.seed, stream_id(cell, r));
      EdgeConfig config = sample_config(params, stream);
      if (tampered) config = tamper(config, params, stream).first;
      uint64_t count = params.variant == Variant::kAll ? counter.all(config)
                                                       : counter.from_zero(config);
      out.y[r] = double(count) / out.en;
    }
    return out;
  }
  int workers = std::min<int>(threads, int(std::max<uint64_t>(samples, 1)));
  std::vector<std::thread> pool;
  for (int wkr = 0; wkr < workers; ++wkr) {
    pool.emplace_back([&, wkr] {
      PathCounter counter(n);
      for (uint64_t r = wkr; r < samples; r += workers) {
        RngStream stream(params.seed, stream_id(cell, uint32_t(r)));
        EdgeConfig config = sample_config(params, stream);
        if (tampered) config = tamper(config, params, stream).first;
        uint64_t count = params.variant == Variant::kAll ? counter.all(config)
                                                         : counter.from_zero(config);
        out.y[r] = double(count) / out.en;
      }
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

double NormalizedCounts::mean() const {
  double acc = 0;
  for (double v : y) acc += v;
  return y.empty() ? 0.0 : acc / double(y.size());
}

double NormalizedCounts::se_of_mean() const {
  if (y.size() < 2) return 0.0;
  double m = mean(), ss = 0;
  for (double v : y) ss += (v - m) * (v - m);
  return std::sqrt(ss / double(y.size() - 1) / double(y.size()));
}

static double mean_of(const std::vector<double>& xs) {
  double acc = 0;
  for (double x : xs) acc += x;
  return xs.empty() ? 0.0 : acc / double(xs.size());
}

TvReport tv_mc(const ModelParams& params, uint64_t samples, int threads) {
  NormalizedCounts counts = sample_normalized_counts(params, samples, false, threads);
  std::vector<double> g(counts.y.size());
  for (size_t i = 0; i < counts.y.size(); ++i) g[i] = std::max(0.0, 1.0 - counts.y[i]);
  TvReport rep;
  rep.method = "mc";
  rep.samples = samples;
  rep.estimate = mean_of(g);
  double ss = 0;
  for (double v : g) ss += (v - rep.estimate) * (v - rep.estimate);
  rep.se = g.size() > 1 ? std::sqrt(ss / double(g.size() - 1) / double(g.size())) : 0.0;
  return rep;
}

Rat variance_ratio_exact(int n, const Rat& p, Variant v) {
  if (p == 0) throw std::domain_error("variance_ratio: p = 0 refused");
  return biased_second_moment_exact(n, p, v) - 1;
}

MomentEstimate variance_ratio_mc(const ModelParams& params, uint64_t samples, int threads) {
  if (params.p == 0) throw std::domain_error("variance_ratio: p = 0 refused");
  NormalizedCounts counts = sample_normalized_counts(params, samples, false, threads);
  // sample variance of Y = N/EN; SE of the variance via the fourth moment
  double m = counts.mean();
  double m2 = 0, m4 = 0;
  for (double v : counts.y) {
    double d = v - m;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  uint64_t cnt = counts.y.size();
  MomentEstimate est;
  est.samples = samples;
  est.value = cnt > 1 ? m2 / double(cnt - 1) : 0.0;
  if (cnt > 1) {
    m2 /= double(cnt);
    m4 /= double(cnt);
    double var_of_var = (m4 - m2 * m2) / double(cnt);
    est.se = var_of_var > 0 ? std::sqrt(var_of_var) : 0.0;
  }
  return est;
}

std::vector<LlnRow> lln_diagnostic(const ModelParams& params, uint64_t samples,
                                   const std::vector<double>& eps_grid, int threads) {
  NormalizedCounts counts = sample_normalized_counts(params, samples, false, threads);
  std::vector<LlnRow> rows;
  rows.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    uint64_t exceed = 0;
    for (double v : counts.y) exceed += std::abs(v - 1.0) > eps;
    LlnRow row;
    row.eps = eps;
    row.exceedance = double(exceed) / double(samples);
    row.se = std::sqrt(row.exceedance * (1.0 - row.exceedance) / double(samples));
    rows.push_back(row);
  }
  return rows;
}

IsolatedZeroResult isolated_zero_probe(const ModelParams& params, uint64_t samples, int threads) {
  const int n = params.n;
  require_cap("isolated_zero_probe", "n", kMaxConfigDim, n);
  std::vector<uint8_t> isolated_p(samples), isolated_q(samples);
  auto zero_isolated = [n](const EdgeConfig& config) {
    for (int dir = 0; dir < n; ++dir)
      if (config.test(edge_index(n, 0, dir))) return false;
    return true;
  };
  for_each_replicate(params.seed, /*cell=*/1, uint32_t(samples), threads,
                     [&](uint32_t r, RngStream& stream) {
                       EdgeConfig config = sample_config(params, stream);
                       isolated_p[r] = zero_isolated(config);
                       EdgeConfig tampered = tamper(config, params, stream).first;
                       isolated_q[r] = zero_isolated(tampered);
                     });
  IsolatedZeroResult out;
  out.samples = samples;
  uint64_t cp = 0, cq = 0;
  for (uint64_t i = 0; i < samples; ++i) {
    cp += isolated_p[i];
    cq += isolated_q[i];
  }
  out.freq_untampered = double(cp) / double(samples);
  out.freq_tampered = double(cq) / double(samples);
  out.se_untampered =
      std::sqrt(out.freq_untampered * (1 - out.freq_untampered) / double(samples));
  out.se_tampered = std::sqrt(out.freq_tampered * (1 - out.freq_tampered) / double(samples));
  out.analytic = std::pow(1.0 - params.p, n);
  return out;
}

}  // namespace tamperlab
