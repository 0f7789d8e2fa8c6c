#include "lmph/gw.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lmph/errors.hpp"

namespace lmph {

std::uint32_t RootedTree::add_child(std::uint32_t parent) {
  if (parent >= children_.size()) throw InvalidParameters("RootedTree: unknown parent");
  if (children_.size() >= kMaxTreeNodes) throw OracleScaleError("RootedTree: node limit exceeded");
  const auto id = static_cast<std::uint32_t>(children_.size());
  children_.emplace_back();
  children_[parent].push_back(id);
  return id;
}

int RootedTree::depth() const {
  int best = 0;
  std::vector<std::pair<std::uint32_t, int>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [v, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    for (std::uint32_t c : children_[v]) stack.emplace_back(c, d + 1);
  }
  return best;
}

namespace {

/// Grows a tree breadth-first: the root draws from `root_law`, nodes at odd
/// depth from `odd_law`, nodes at positive even depth from `even_law`.
RootedTree grow(DegreeSampler& root_law, DegreeSampler* odd_law, DegreeSampler* even_law, int depth, Rng& rng) {
  if (depth < 0) throw InvalidParameters("GW tree: depth must be >= 0");
  RootedTree tree;
  std::vector<std::uint32_t> frontier{0};
  for (int d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t v : frontier) {
      DegreeSampler* law = d == 0 ? &root_law : (d % 2 == 1 ? odd_law : even_law);
      const int count = (*law)(rng);
      for (int i = 0; i < count; ++i) next.push_back(tree.add_child(v));
    }
    frontier = std::move(next);
  }
  return tree;
}

/// Size-biased law, or nullopt-like Dirac(0) when the mean vanishes (such a
/// law is never reached because no node of that type is ever born).
DegreeDistribution biased_or_empty(const DegreeDistribution& law) {
  return law.mean() > 0.0 ? law.size_biased() : DegreeDistribution::dirac(0);
}

}  // namespace

RootedTree sample_gw_star(const DegreeDistribution& mu, const DegreeDistribution& nu, int depth, Rng& rng) {
  DegreeSampler root(mu);
  DegreeSampler odd(biased_or_empty(nu));
  DegreeSampler even(biased_or_empty(mu));
  return grow(root, &odd, &even, depth, rng);
}

RootedTree sample_gw(const DegreeDistribution& mu, const DegreeDistribution& nu, int depth, Rng& rng) {
  DegreeSampler root(biased_or_empty(mu));
  DegreeSampler odd(biased_or_empty(nu));
  DegreeSampler even(biased_or_empty(mu));
  return grow(root, &odd, &even, depth, rng);
}

RootedTree sample_gw_star(const DegreeDistribution& mu, const DegreeDistribution& nu, int depth,
                          std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_gw_star(mu, nu, depth, rng);
}

RootedTree sample_gw(const DegreeDistribution& mu, const DegreeDistribution& nu, int depth, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_gw(mu, nu, depth, rng);
}

namespace {

/// Bottom-up canonical codes over an explicit child structure given in BFS
/// order (parents precede children).
std::string canonical_code(const std::vector<std::vector<std::uint32_t>>& children,
                           const std::vector<std::uint32_t>& bfs_order) {
  std::vector<std::string> code(children.size());
  std::vector<std::string> parts;
  for (auto it = bfs_order.rbegin(); it != bfs_order.rend(); ++it) {
    const std::uint32_t v = *it;
    parts.clear();
    for (std::uint32_t c : children[v]) parts.push_back(std::move(code[c]));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const auto& p : parts) s += p;
    s += ')';
    code[v] = std::move(s);
  }
  return code[bfs_order.front()];
}

}  // namespace

std::string tree_key(const RootedTree& tree) {
  std::vector<std::vector<std::uint32_t>> children(tree.size());
  std::vector<std::uint32_t> order{0};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto kids = tree.children(order[i]);
    children[order[i]].assign(kids.begin(), kids.end());
    order.insert(order.end(), kids.begin(), kids.end());
  }
  return canonical_code(children, order);
}

RootedTree tree_from_key(const std::string& key) {
  if (key.empty() || key.front() != '(') throw ParseError("tree key must start with '('");
  RootedTree tree;
  std::vector<std::uint32_t> path{0};
  for (std::size_t i = 1; i < key.size(); ++i) {
    if (path.empty()) throw ParseError("tree key: trailing characters");
    if (key[i] == '(') {
      path.push_back(tree.add_child(path.back()));
    } else if (key[i] == ')') {
      path.pop_back();
    } else {
      throw ParseError("tree key: unexpected character");
    }
  }
  if (!path.empty()) throw ParseError("tree key: unbalanced parentheses");
  return tree;
}

Census census(const TannerGraph& g, std::span<const std::uint32_t> roots, int radius) {
  if (radius < 0 || radius > kMaxCensusRadius) throw InvalidParameters("census: radius must be in [0, 6]");
  if (roots.empty()) throw InvalidParameters("census: empty root set");
  std::map<std::string, std::size_t> counts;
  // Scratch arrays indexed by vertex, reset after each ball.
  std::vector<int> dist(g.vertex_count(), -1);
  std::vector<std::uint32_t> local(g.vertex_count(), 0);
  for (std::uint32_t root : roots) {
    if (root >= g.vertex_count()) throw InvalidParameters("census: root out of range");
    std::vector<std::uint32_t> ball{root};
    dist[root] = 0;
    for (std::size_t i = 0; i < ball.size(); ++i) {
      const std::uint32_t v = ball[i];
      if (dist[v] == radius) continue;
      for (std::uint32_t w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          ball.push_back(w);
        }
      }
    }
    std::size_t twice_edges = 0;
    for (std::uint32_t v : ball)
      for (std::uint32_t w : g.neighbors(v)) twice_edges += dist[w] >= 0 ? 1 : 0;
    const std::size_t edges = twice_edges / 2;

    std::string key;
    if (edges + 1 == ball.size()) {
      // A tree: every non-root vertex has exactly one neighbour one layer up.
      for (std::size_t i = 0; i < ball.size(); ++i) local[ball[i]] = static_cast<std::uint32_t>(i);
      std::vector<std::vector<std::uint32_t>> children(ball.size());
      std::vector<std::uint32_t> order(ball.size());
      for (std::size_t i = 0; i < ball.size(); ++i) {
        order[i] = static_cast<std::uint32_t>(i);
        for (std::uint32_t w : g.neighbors(ball[i]))
          if (dist[w] == dist[ball[i]] + 1) children[i].push_back(local[w]);
      }
      key = canonical_code(children, order);
    } else {
      std::vector<std::size_t> layers(static_cast<std::size_t>(radius) + 1, 0);
      for (std::uint32_t v : ball) ++layers[static_cast<std::size_t>(dist[v])];
      std::ostringstream os;
      os << "#V" << ball.size() << "E" << edges << "L";
      for (std::size_t i = 0; i < layers.size(); ++i) os << (i ? "," : "") << layers[i];
      key = os.str();
    }
    ++counts[key];
    for (std::uint32_t v : ball) dist[v] = -1;
  }
  Census out;
  for (const auto& [key, count] : counts) out[key] = static_cast<double>(count) / static_cast<double>(roots.size());
  return out;
}

Census gw_star_census(const DegreeDistribution& mu, const DegreeDistribution& nu, int radius,
                      std::size_t samples, std::uint64_t seed) {
  if (radius < 0 || radius > kMaxCensusRadius) throw InvalidParameters("gw_star_census: radius must be in [0, 6]");
  if (samples == 0) throw InvalidParameters("gw_star_census: samples must be >= 1");
  Rng rng = make_rng(seed);
  DegreeSampler root(mu);
  DegreeSampler odd(biased_or_empty(nu));
  DegreeSampler even(biased_or_empty(mu));
  std::map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i < samples; ++i) ++counts[tree_key(grow(root, &odd, &even, radius, rng))];
  Census out;
  for (const auto& [key, count] : counts) out[key] = static_cast<double>(count) / static_cast<double>(samples);
  return out;
}

double total_variation(const Census& p, const Census& q) {
  double sum = 0.0;
  auto a = p.begin();
  auto b = q.begin();
  while (a != p.end() || b != q.end()) {
    if (b == q.end() || (a != p.end() && a->first < b->first)) {
      sum += std::abs(a->second);
      ++a;
    } else if (a == p.end() || b->first < a->first) {
      sum += std::abs(b->second);
      ++b;
    } else {
      sum += std::abs(a->second - b->second);
      ++a;
      ++b;
    }
  }
  return 0.5 * sum;
}

std::vector<std::pair<std::string, double>> sorted_by_frequency(const Census& c) {
  std::vector<std::pair<std::string, double>> out(c.begin(), c.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

namespace {

/// One draw of (1 + sum_{i<N} S_i^{-1})^{-1} with S_i sums of K_i ~ nu' pool
/// values. A zero S_i forces the result to 0.
double recursion_draw(int children, DegreeSampler& inner, const std::vector<double>& pool, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  double denom = 1.0;
  bool zero = false;
  for (int i = 0; i < children; ++i) {
    const int grandchildren = inner(rng);
    double s = 0.0;
    for (int j = 0; j < grandchildren; ++j) s += pool[pick(rng)];
    // Keep consuming randomness identically whether or not the result is
    // already decided, so that trajectories stay aligned across inits.
    if (s > 0.0) {
      denom += 1.0 / s;
    } else {
      zero = true;
    }
  }
  return zero ? 0.0 : 1.0 / denom;
}

}  // namespace

PopulationResult population_dynamics(const DegreeDistribution& mu, const DegreeDistribution& nu,
                                     std::size_t pool_size, int iterations, PoolInit init, std::uint64_t seed) {
  if (pool_size < kMinPoolSize) throw InvalidParameters("population_dynamics: pool_size must be >= 10^4");
  if (iterations < kMinIterations) throw InvalidParameters("population_dynamics: iterations must be >= 100");
  PopulationResult result;
  if (!(mu.mean() > 0.0)) {
    // No children anywhere: every subtree is a single vertex, x = 1.
    result.pool.assign(pool_size, 1.0);
    result.t_trajectory.assign(static_cast<std::size_t>(iterations), 1.0);
    result.t_est = 1.0;
    result.eta_est = 1.0;
    return result;
  }
  if (!(nu.mean() > 0.0)) throw DomainError("population_dynamics: nu must have positive mean");

  Rng rng = make_rng(seed);
  DegreeSampler outer(mu.size_biased());
  DegreeSampler inner(nu.size_biased());
  std::vector<double> pool(pool_size, init == PoolInit::Ones ? 1.0 : 0.0);
  std::vector<double> next(pool_size);
  result.t_trajectory.reserve(static_cast<std::size_t>(iterations));
  for (int it = 0; it < iterations; ++it) {
    std::size_t positive = 0;
    for (double& x : next) {
      x = recursion_draw(outer(rng), inner, pool, rng);
      positive += x > 0.0 ? 1 : 0;
    }
    pool.swap(next);
    result.t_trajectory.push_back(static_cast<double>(positive) / static_cast<double>(pool_size));
  }
  DegreeSampler root(mu);
  double eta = 0.0;
  for (std::size_t i = 0; i < pool_size; ++i) eta += recursion_draw(root(rng), inner, pool, rng);
  result.t_est = result.t_trajectory.back();
  result.eta_est = eta / static_cast<double>(pool_size);
  result.pool = std::move(pool);
  return result;
}

}  // namespace lmph
