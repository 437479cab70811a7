#include "tamperlab/hypercube.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace tamperlab {

const char* variant_name(Variant v) { return v == Variant::kAll ? "all" : "zero"; }

std::optional<Variant> variant_from_name(std::string_view name) {
  if (name == "all") return Variant::kAll;
  if (name == "zero" || name == "from-zero" || name == "from_zero") return Variant::kFromZero;
  return std::nullopt;
}

static void check_dim(const char* op, int n) {
  if (n < 1) throw std::invalid_argument(std::string(op) + ": dimension must be >= 1");
  require_cap(op, "n", kMaxConfigDim, n);
}

uint64_t edge_index(int n, uint32_t u, int direction) {
  check_dim("edge_index", n);
  if (direction < 0 || direction >= n) throw std::invalid_argument("edge_index: direction out of range");
  if (u >> n) throw std::invalid_argument("edge_index: vertex out of range");
  uint32_t base = u & ~(uint32_t(1) << direction);
  uint32_t low = base & ((uint32_t(1) << direction) - 1);
  uint32_t high = base >> (direction + 1);
  uint32_t compressed = low | (high << direction);
  return (uint64_t(direction) << (n - 1)) + compressed;
}

int edge_direction(int n, uint64_t id) {
  check_dim("edge_direction", n);
  if (id >= edge_slot_count(n)) throw std::invalid_argument("edge_direction: id out of range");
  return int(id >> (n - 1));
}

std::pair<uint32_t, uint32_t> edge_endpoints(int n, uint64_t id) {
  int dir = edge_direction(n, id);
  uint32_t compressed = uint32_t(id & ((uint64_t(1) << (n - 1)) - 1));
  uint32_t low = compressed & ((uint32_t(1) << dir) - 1);
  uint32_t high = compressed >> dir;
  uint32_t base = low | (high << (dir + 1));
  return {base, base | (uint32_t(1) << dir)};
}

EdgeConfig::EdgeConfig(int n) : n_(n) {
  check_dim("EdgeConfig", n);
  words_.assign((edge_slot_count(n) + 63) / 64, 0);
}

EdgeConfig EdgeConfig::full(int n) {
  EdgeConfig c(n);
  uint64_t slots = c.slots();
  for (size_t i = 0; i < c.words_.size(); ++i) c.words_[i] = ~uint64_t(0);
  uint64_t spare = c.words_.size() * 64 - slots;
  if (spare > 0) c.words_.back() >>= spare;
  return c;
}

uint64_t EdgeConfig::edge_count() const {
  uint64_t total = 0;
  for (uint64_t w : words_) total += std::popcount(w);
  return total;
}

bool EdgeConfig::contains(const EdgeConfig& other) const {
  if (n_ != other.n_) throw std::invalid_argument("EdgeConfig::contains: dimension mismatch");
  for (size_t i = 0; i < words_.size(); ++i)
    if (other.words_[i] & ~words_[i]) return false;
  return true;
}

void EdgeConfig::unite(const EdgeConfig& other) {
  if (n_ != other.n_) throw std::invalid_argument("EdgeConfig::unite: dimension mismatch");
  for (size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
}

EdgeConfig EdgeConfig::translated(uint32_t x) const {
  if (x >> n_) throw std::invalid_argument("EdgeConfig::translated: vertex out of range");
  if (x == 0) return *this;
  EdgeConfig out(n_);
  uint64_t half = uint64_t(1) << (n_ - 1);
  for (int dir = 0; dir < n_; ++dir) {
    uint64_t offset = uint64_t(dir) * half;
    for (uint64_t c = 0; c < half; ++c) {
      uint64_t id = offset + c;
      if (!test(id)) continue;
      // translating by x maps the edge {b, b^bit} to {b^x, b^x^bit}
      uint32_t base = edge_endpoints(n_, id).first;
      out.set(edge_index(n_, base ^ x, dir));
    }
  }
  return out;
}

std::string EdgeConfig::to_hex() const {
  static const char* digits = "0123456789abcdef";
  uint64_t slots = edge_slot_count(n_);
  size_t ndigits = size_t((slots + 3) / 4);
  std::string out(ndigits, '0');
  for (size_t d = 0; d < ndigits; ++d) {
    uint64_t lo = uint64_t(d) * 4;
    int nib = 0;
    for (int b = 0; b < 4; ++b) {
      uint64_t e = lo + b;
      if (e < slots && test(e)) nib |= 1 << b;
    }
    out[ndigits - 1 - d] = digits[nib];  // big-endian digit order
  }
  return out;
}

EdgeConfig EdgeConfig::from_hex(int n, std::string_view hex) {
  EdgeConfig c(n);
  uint64_t slots = c.slots();
  size_t ndigits = size_t((slots + 3) / 4);
  if (hex.size() != ndigits)
    throw std::invalid_argument("EdgeConfig::from_hex: expected " + std::to_string(ndigits) +
                                " hex digits, got " + std::to_string(hex.size()));
  for (size_t d = 0; d < ndigits; ++d) {
    char ch = hex[ndigits - 1 - d];
    int nib;
    if (ch >= '0' && ch <= '9') nib = ch - '0';
    else if (ch >= 'a' && ch <= 'f') nib = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') nib = ch - 'A' + 10;
    else throw std::invalid_argument("EdgeConfig::from_hex: bad hex digit");
    for (int b = 0; b < 4; ++b) {
      uint64_t e = uint64_t(d) * 4 + b;
      if (nib >> b & 1) {
        if (e >= slots) throw std::invalid_argument("EdgeConfig::from_hex: bit beyond edge slots");
        c.set(e);
      }
    }
  }
  return c;
}

bool path_valid(const DiameterPath& p) {
  if (p.n < 1 || p.n > kMaxConfigDim) return false;
  if (p.start >> p.n) return false;
  if (int(p.order.size()) != p.n) return false;
  uint32_t seen = 0;
  for (int c : p.order) {
    if (c < 1 || c > p.n) return false;
    uint32_t bit = uint32_t(1) << (c - 1);
    if (seen & bit) return false;
    seen |= bit;
  }
  return true;
}

static void require_path(const DiameterPath& p) {
  if (!path_valid(p)) throw std::invalid_argument("invalid diameter path");
}

std::vector<uint32_t> path_vertices(const DiameterPath& p) {
  require_path(p);
  std::vector<uint32_t> vs;
  vs.reserve(p.n + 1);
  uint32_t v = p.start;
  vs.push_back(v);
  for (int c : p.order) {
    v ^= uint32_t(1) << (c - 1);
    vs.push_back(v);
  }
  return vs;
}

std::vector<uint64_t> path_edges(const DiameterPath& p) {
  require_path(p);
  std::vector<uint64_t> es;
  es.reserve(p.n);
  uint32_t v = p.start;
  for (int c : p.order) {
    es.push_back(edge_index(p.n, v, c - 1));
    v ^= uint32_t(1) << (c - 1);
  }
  return es;
}

DiameterPath canonicalized(DiameterPath p) {
  require_path(p);
  uint32_t rev_start = p.end();
  if (rev_start < p.start) {
    p.start = rev_start;
    std::reverse(p.order.begin(), p.order.end());
  }
  return p;
}

bool path_in_config(const DiameterPath& p, const EdgeConfig& config) {
  if (p.n != config.dim()) throw std::invalid_argument("path_in_config: dimension mismatch");
  uint32_t v = p.start;
  for (int c : p.order) {
    if (!config.test(edge_index(p.n, v, c - 1))) return false;
    v ^= uint32_t(1) << (c - 1);
  }
  return true;
}

DiameterPath reference_path(int n) {
  DiameterPath p;
  p.n = n;
  p.start = 0;
  p.order.resize(n);
  for (int i = 0; i < n; ++i) p.order[i] = i + 1;
  return p;
}

static void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
}

ModelParams ModelParams::from_p(int n, double p, Variant v, uint64_t seed) {
  check_dim("ModelParams", n);
  check_p(p);
  ModelParams m;
  m.n = n;
  m.p = p;
  m.variant = v;
  m.seed = seed;
  return m;
}

ModelParams ModelParams::from_p_exact(int n, const Rat& p, Variant v, uint64_t seed) {
  if (p < 0 || p > 1) throw std::invalid_argument("edge probability must lie in [0, 1]");
  ModelParams m = from_p(n, to_double(p), v, seed);
  m.p_exact = p;
  return m;
}

ModelParams ModelParams::from_gamma(int n, double gamma, Variant v, uint64_t seed) {
  check_dim("ModelParams", n);
  ModelParams m = from_p(n, gamma / n, v, seed);
  m.gamma = gamma;
  return m;
}

BigInt path_space_size(int n, Variant v) {
  BigInt m = factorial(n);
  if (v == Variant::kAll) m <<= (n - 1);
  return m;
}

BigInt ModelParams::num_paths() const { return path_space_size(n, variant); }

EdgeConfig sample_config(const ModelParams& params, RngStream& stream) {
  EdgeConfig c(params.n);
  uint64_t slots = c.slots();
  if (params.p >= 1.0) return EdgeConfig::full(params.n);
  if (params.p > 0.0)
    for (uint64_t e = 0; e < slots; ++e)
      if (stream.bernoulli(params.p)) c.set(e);
  return c;
}

DiameterPath sample_path(int n, Variant v, RngStream& stream) {
  DiameterPath p;
  p.n = n;
  p.start = v == Variant::kAll ? uint32_t(stream.below(uint64_t(1) << n)) : 0;
  p.order = stream.permutation(n);
  return v == Variant::kAll ? canonicalized(std::move(p)) : p;
}

std::pair<EdgeConfig, DiameterPath> tamper(const EdgeConfig& config, const ModelParams& params,
                                           RngStream& stream) {
  if (config.dim() != params.n) throw std::invalid_argument("tamper: dimension mismatch");
  DiameterPath p = sample_path(params.n, params.variant, stream);
  EdgeConfig out = config;
  for (uint64_t e : path_edges(p)) out.set(e);
  return {std::move(out), std::move(p)};
}

}  // namespace tamperlab
