#pragma once

// The n-dimensional binary hypercube, its edge configurations, diameter
// paths, the product measure with edge-retention probability p, and the two
// tampering operators (plant a uniform diameter path / a uniform diameter
// path from vertex 0).
//
// Conventions (fixed here, used everywhere else):
//  - vertex code: bit j-1 of the code is coordinate x_j, so vertex 0 is the
//    all-zeros corner and its antipode is code 2^n - 1;
//  - edge id: the edge in direction i (flipping bit i) with base vertex b
//    (bit i of b clear) has id  i * 2^(n-1) + compress(b, i), where compress
//    drops bit i and closes the gap. Ids are a bijection onto
//    [0, n * 2^(n-1)). This enumeration order is a convention of ours, not
//    of any external source; nothing downstream may depend on it.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tamperlab/numeric.hpp"
#include "tamperlab/rng.hpp"

namespace tamperlab {

enum class Variant { kAll, kFromZero };

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);

// Hard storage cap: n = 24 is 24 * 2^23 bits (~25 MB) per configuration.
inline constexpr int kMaxConfigDim = 24;

inline uint64_t edge_slot_count(int n) { return uint64_t(n) << (n - 1); }

inline uint32_t antipode(int n, uint32_t v) { return v ^ ((uint32_t(1) << n) - 1); }

uint64_t edge_index(int n, uint32_t u, int direction);
int edge_direction(int n, uint64_t id);
// Returns {base, base ^ (1 << direction)} with bit `direction` of base clear.
std::pair<uint32_t, uint32_t> edge_endpoints(int n, uint64_t id);

// An edge subset of the hypercube as a packed bit vector over edge ids.
class EdgeConfig {
 public:
  explicit EdgeConfig(int n);
  static EdgeConfig empty(int n) { return EdgeConfig(n); }
  static EdgeConfig full(int n);

  int dim() const { return n_; }
  uint64_t slots() const { return edge_slot_count(n_); }

  bool test(uint64_t e) const { return (words_[e >> 6] >> (e & 63)) & 1; }
  void set(uint64_t e) { words_[e >> 6] |= uint64_t(1) << (e & 63); }
  void reset(uint64_t e) { words_[e >> 6] &= ~(uint64_t(1) << (e & 63)); }

  uint64_t edge_count() const;
  bool contains(const EdgeConfig& other) const;  // superset test
  void unite(const EdgeConfig& other);

  // The configuration whose edges are this one's translated by XOR with x
  // (vertex-transitivity of the hypercube).
  EdgeConfig translated(uint32_t x) const;

  // Fixed-width lowercase hex; bit of edge id 0 is the least significant bit
  // of the whole string (i.e. the last hex digit's bit 0).
  std::string to_hex() const;
  static EdgeConfig from_hex(int n, std::string_view hex);

  bool operator==(const EdgeConfig&) const = default;

 private:
  int n_;
  std::vector<uint64_t> words_;
};

// A diameter path: start vertex plus the order in which coordinates flip.
// order[k] is the 1-based coordinate flipped by edge k+1 of the path.
struct DiameterPath {
  int n = 0;
  uint32_t start = 0;
  std::vector<int> order;

  uint32_t end() const { return antipode(n, start); }
};

bool path_valid(const DiameterPath& p);

// The n+1 vertices visited, in order.
std::vector<uint32_t> path_vertices(const DiameterPath& p);

// The n edge ids traversed, in order. Throws on an invalid path.
std::vector<uint64_t> path_edges(const DiameterPath& p);

// Of a path and its reversal (which traverse the same edge set), the
// canonical representative is the one with the numerically smaller start
// code. This turns the 2:1 (start, order) correspondence into a 1:1
// enumeration of the 2^(n-1) n! unoriented diameter paths.
DiameterPath canonicalized(DiameterPath p);

bool path_in_config(const DiameterPath& p, const EdgeConfig& config);

// The distinguished path (vertex 0, identity order); its k-th edge is the
// e_k every overlap statistic is measured against.
DiameterPath reference_path(int n);

struct ModelParams {
  int n = 0;
  double p = 0.0;
  std::optional<Rat> p_exact;    // set when p was given as an exact rational
  std::optional<double> gamma;   // set when p was given as gamma / n
  Variant variant = Variant::kFromZero;
  uint64_t seed = 0;

  static ModelParams from_p(int n, double p, Variant v, uint64_t seed);
  static ModelParams from_p_exact(int n, const Rat& p, Variant v, uint64_t seed);
  static ModelParams from_gamma(int n, double gamma, Variant v, uint64_t seed);

  // Number of planted-path choices m_n: 2^(n-1) n! for kAll, n! for kFromZero.
  BigInt num_paths() const;
};

BigInt path_space_size(int n, Variant v);

// Each edge kept independently with probability p.
EdgeConfig sample_config(const ModelParams& params, RngStream& stream);

// Uniform path of the given variant (canonical representative for kAll).
DiameterPath sample_path(int n, Variant v, RngStream& stream);

// Adjoins a uniform diameter path: returns the union configuration and the
// planted path. Never removes edges.
std::pair<EdgeConfig, DiameterPath> tamper(const EdgeConfig& config, const ModelParams& params,
                                           RngStream& stream);

}  // namespace tamperlab
