// Multi-type Galton-Watson trees, local neighbourhood censuses of Tanner
// graphs, and population dynamics for the spectral atom at zero.
//
// Tree laws. GW_*(mu, nu): the root has mu offspring; below it the laws
// alternate nu', mu', nu', ... by depth (nu' at odd depth, mu' at even depth).
// GW(mu, nu) differs only at the root, which draws from mu' instead of mu.
//
// Recursion. For x_v the mass at zero of the spectral measure of the subtree
// at v,  x_o = (1 + sum_{i in D(o)} (sum_{j in D(i)} x_j)^{-1})^{-1}
// with 1/0 = inf and 1/inf = 0.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lmph/degree_distribution.hpp"
#include "lmph/rng.hpp"
#include "lmph/tanner.hpp"

namespace lmph {

/// Rooted tree stored as child lists; node 0 is the root.
class RootedTree {
 public:
  RootedTree() : children_(1) {}

  std::size_t size() const noexcept { return children_.size(); }
  std::uint32_t root() const noexcept { return 0; }
  std::span<const std::uint32_t> children(std::uint32_t v) const { return children_.at(v); }
  /// Appends a new child of `parent`, returning its id.
  std::uint32_t add_child(std::uint32_t parent);
  /// Length of the longest root-to-leaf path.
  int depth() const;

 private:
  std::vector<std::vector<std::uint32_t>> children_;
};

/// Guard against explosive offspring laws.
inline constexpr std::size_t kMaxTreeNodes = 10'000'000;

RootedTree sample_gw_star(const DegreeDistribution& mu, const DegreeDistribution& nu, int depth, Rng& rng);
RootedTree sample_gw(const DegreeDistribution& mu, const DegreeDistribution& nu, int depth, Rng& rng);
RootedTree sample_gw_star(const DegreeDistribution& mu, const DegreeDistribution& nu, int depth,
                          std::uint64_t seed);
RootedTree sample_gw(const DegreeDistribution& mu, const DegreeDistribution& nu, int depth, std::uint64_t seed);

/// Canonical code "(" + sorted child codes + ")"; equal iff rooted-isomorphic.
std::string tree_key(const RootedTree& tree);
/// Inverse of tree_key (children in key order); throws ParseError.
RootedTree tree_from_key(const std::string& key);

using Census = std::map<std::string, double>;

inline constexpr int kMaxCensusRadius = 6;

/// Frequencies of the isomorphism types of the radius-r balls around the
/// given roots. Tree balls are keyed by tree_key of the BFS tree; balls with
/// cycles get keys beginning with '#' (vertex count, edge count and layer
/// sizes), which are invariant under relabeling but coarser than isomorphism.
Census census(const TannerGraph& g, std::span<const std::uint32_t> roots, int radius);

/// Monte Carlo census of GW_*(mu, nu) trees truncated at depth `radius`.
Census gw_star_census(const DegreeDistribution& mu, const DegreeDistribution& nu, int radius,
                      std::size_t samples, std::uint64_t seed);

/// 1/2 sum |p - q| over the union of keys.
double total_variation(const Census& p, const Census& q);

/// Census entries sorted by decreasing frequency (ties by key).
std::vector<std::pair<std::string, double>> sorted_by_frequency(const Census& c);

enum class PoolInit { Zeros, Ones };

struct PopulationResult {
  double t_est = 0.0;    // fraction of the pool with x > 0 after the last iteration
  double eta_est = 0.0;  // mean root value with root offspring drawn from mu
  std::vector<double> t_trajectory;  // t after each iteration
  std::vector<double> pool;
};

inline constexpr std::size_t kMinPoolSize = 10'000;
inline constexpr int kMinIterations = 100;

/// Pooled iteration of the recursion on GW(mu', nu') with whole-pool
/// resampling each iteration, followed by pool_size root draws (N ~ mu).
PopulationResult population_dynamics(const DegreeDistribution& mu, const DegreeDistribution& nu,
                                     std::size_t pool_size, int iterations, PoolInit init, std::uint64_t seed);

}  // namespace lmph
