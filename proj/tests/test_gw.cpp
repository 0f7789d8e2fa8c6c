#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "lmph/errors.hpp"
#include "lmph/gw.hpp"
#include "lmph/limits.hpp"

using namespace lmph;

namespace {

/// Rebuilds `tree` with children of every node in a random order.
RootedTree shuffled_copy(const RootedTree& tree, Rng& rng) {
  RootedTree out;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [src, dst] = stack.back();
    stack.pop_back();
    std::vector<std::uint32_t> kids(tree.children(src).begin(), tree.children(src).end());
    std::shuffle(kids.begin(), kids.end(), rng);
    for (std::uint32_t c : kids) stack.emplace_back(c, out.add_child(dst));
  }
  return out;
}

/// Bipartite graph of a tree: even-depth nodes are columns, odd-depth rows.
/// Returns the graph and the vertex of the root.
std::pair<TannerGraph, std::uint32_t> tree_as_tanner(const RootedTree& tree) {
  std::vector<int> depth(tree.size(), 0);
  std::vector<std::uint32_t> index(tree.size());
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::uint32_t> order{0};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::uint32_t v = order[i];
    index[v] = depth[v] % 2 ? rows++ : cols++;
    for (std::uint32_t c : tree.children(v)) {
      depth[c] = depth[v] + 1;
      order.push_back(c);
    }
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t v : order)
    for (std::uint32_t c : tree.children(v))
      edges.emplace_back(depth[v] % 2 ? index[v] : index[c], depth[v] % 2 ? index[c] : index[v]);
  TannerGraph g(rows, cols, edges);
  return {g, g.col_vertex(index[0])};
}

}  // namespace

TEST_CASE("GW samplers: trivial and Dirac cases") {
  const auto pois = DegreeDistribution::poisson(2.0);
  CHECK(sample_gw_star(pois, DegreeDistribution::binomial(2, 0.5), 0, 7).size() == 1);
  const RootedTree t = sample_gw_star(DegreeDistribution::dirac(2), DegreeDistribution::dirac(3), 3, 1);
  REQUIRE(t.children(0).size() == 2);
  for (std::uint32_t c : t.children(0)) {
    REQUIRE(t.children(c).size() == 2);  // nu' = Dirac(2)
    for (std::uint32_t g : t.children(c)) CHECK(t.children(g).size() == 1);  // mu' = Dirac(1)
  }
  CHECK(t.depth() == 3);
  CHECK(t.size() == 1 + 2 + 4 + 4);
  // GW (not starred) draws the root from mu' = Dirac(1).
  CHECK(sample_gw(DegreeDistribution::dirac(2), DegreeDistribution::dirac(3), 1, 1).children(0).size() == 1);
  CHECK_THROWS_AS(sample_gw_star(pois, pois, -1, 1), InvalidParameters);
}

TEST_CASE("GW root degree follows mu") {
  const auto mu = DegreeDistribution::poisson(2.0);
  const auto nu = DegreeDistribution::binomial(2, 0.5);
  Rng rng = make_rng(11);
  std::vector<double> freq(40, 0.0);
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) freq[sample_gw_star(mu, nu, 1, rng).children(0).size()] += 1.0 / samples;
  double tv = 0.0;
  for (int i = 0; i < 40; ++i) tv += std::abs(freq[static_cast<std::size_t>(i)] - mu.pmf(i));
  CHECK(0.5 * tv < 0.01);
}

TEST_CASE("tree keys: rooted isomorphism classes") {
  // Number of unlabeled rooted trees on m nodes (1, 1, 2, 4, 9, 20, 48, 115).
  const std::vector<std::size_t> expected{1, 1, 2, 4, 9, 20, 48, 115};
  for (std::size_t m = 1; m <= expected.size(); ++m) {
    std::set<std::string> keys;
    std::vector<std::uint32_t> parent(m, 0);  // parent[i] < i for i >= 1
    while (true) {
      RootedTree t;
      for (std::size_t i = 1; i < m; ++i) t.add_child(parent[i]);
      keys.insert(tree_key(t));
      std::size_t i = m;
      while (i > 1) {
        --i;
        if (parent[i] + 1 < i) {
          ++parent[i];
          break;
        }
        parent[i] = 0;
        if (i == 1) i = 0;
      }
      if (i <= 1) break;
    }
    CHECK(keys.size() == expected[m - 1]);
  }
  Rng rng = make_rng(2);
  for (int i = 0; i < 50; ++i) {
    const RootedTree t = sample_gw_star(DegreeDistribution::poisson(1.5), DegreeDistribution::binomial(3, 0.6), 5, rng);
    const std::string key = tree_key(t);
    CHECK(tree_key(shuffled_copy(t, rng)) == key);
    CHECK(tree_key(tree_from_key(key)) == key);
    CHECK(tree_from_key(key).size() == t.size());
  }
  CHECK(tree_key(RootedTree{}) == "()");
  CHECK_THROWS_AS(tree_from_key("(()"), ParseError);
  CHECK_THROWS_AS(tree_from_key("())("), ParseError);
  CHECK_THROWS_AS(tree_from_key("(x)"), ParseError);
}

TEST_CASE("census: worked examples") {
  // Perfect matching: every column sees one row and nothing else.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> matching;
  for (std::uint32_t i = 0; i < 5; ++i) matching.emplace_back(i, (i + 2) % 5);
  const TannerGraph pm(5, 5, matching);
  const auto roots = pm.column_vertices();
  const Census c = census(pm, roots, 2);
  REQUIRE(c.size() == 1);
  CHECK(c.begin()->first == "(())");
  CHECK(c.begin()->second == 1.0);

  // Star K_{1,3} with a row at the centre, rooted at the leaves.
  const TannerGraph star(1, 3, {{0, 0}, {0, 1}, {0, 2}});
  const auto leaves = star.column_vertices();
  const Census s = census(star, leaves, 2);
  REQUIRE(s.size() == 1);
  CHECK(s.begin()->first == "((()()))");
  CHECK(s.begin()->second == 1.0);

  // A 4-cycle is flagged as non-tree.
  const TannerGraph square(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const auto corners = square.column_vertices();
  const Census q = census(square, corners, 2);
  REQUIRE(q.size() == 1);
  CHECK(q.begin()->first.front() == '#');
  CHECK_THROWS_AS(census(square, corners, 7), InvalidParameters);
}

TEST_CASE("census of a tree graph equals the truncated tree key") {
  const auto mu = DegreeDistribution::poisson(2.0);
  const auto nu = DegreeDistribution::binomial(3, 0.5);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RootedTree deep = sample_gw_star(mu, nu, 5, seed);
    for (int radius : {0, 1, 2, 4}) {
      const RootedTree shallow = sample_gw_star(mu, nu, radius, seed);  // same first layers
      const auto [g, root] = tree_as_tanner(deep);
      const std::vector<std::uint32_t> roots{root};
      const Census c = census(g, roots, radius);
      REQUIRE(c.size() == 1);
      CHECK(c.begin()->first == tree_key(shallow));
    }
  }
}

TEST_CASE("census invariants: normalization and relabeling") {
  Rng rng = make_rng(9);
  const std::uint32_t rows = 60;
  const std::uint32_t cols = 50;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::bernoulli_distribution coin(0.04);
  for (std::uint32_t r = 0; r < rows; ++r)
    for (std::uint32_t c = 0; c < cols; ++c)
      if (coin(rng)) edges.emplace_back(r, c);
  std::vector<std::uint32_t> prow(rows);
  std::vector<std::uint32_t> pcol(cols);
  std::iota(prow.begin(), prow.end(), 0U);
  std::iota(pcol.begin(), pcol.end(), 0U);
  std::shuffle(prow.begin(), prow.end(), rng);
  std::shuffle(pcol.begin(), pcol.end(), rng);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> relabeled;
  for (const auto& [r, c] : edges) relabeled.emplace_back(prow[r], pcol[c]);
  const TannerGraph a(rows, cols, edges);
  const TannerGraph b(rows, cols, relabeled);
  for (int radius = 0; radius <= 6; radius += 2) {
    const Census ca = census(a, a.column_vertices(), radius);
    const Census cb = census(b, b.column_vertices(), radius);
    CHECK(ca == cb);
    double total = 0.0;
    for (const auto& [key, f] : ca) total += f;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("total variation") {
  const Census p{{"a", 0.5}, {"b", 0.5}};
  const Census q{{"b", 0.25}, {"c", 0.75}};
  CHECK(total_variation(p, q) == doctest::Approx(0.75));
  CHECK(total_variation(p, p) == 0.0);
  CHECK(total_variation(p, Census{}) == doctest::Approx(0.5));
  const auto sorted = sorted_by_frequency(q);
  CHECK(sorted.front().first == "c");
}

TEST_CASE("GW* census converges to the root-degree law at radius 1") {
  const auto mu = DegreeDistribution::poisson(1.3);
  const Census c = gw_star_census(mu, DegreeDistribution::binomial(2, 0.5), 1, 100000, 4);
  Census exact;
  for (int d = 0; d < 30; ++d) {
    std::string key = "(";
    for (int i = 0; i < d; ++i) key += "()";
    exact[key + ")"] = mu.pmf(d);
  }
  CHECK(total_variation(c, exact) < 0.01);
}

TEST_CASE("population dynamics") {
  SUBCASE("no children: x = 1") {
    const auto r = population_dynamics(DegreeDistribution::poisson(0.0), DegreeDistribution::binomial(2, 1.0),
                                       10000, 100, PoolInit::Zeros, 1);
    CHECK(r.eta_est == 1.0);
    CHECK(r.t_est == 1.0);
  }
  SUBCASE("k=1, q=1, c=4: zeros and ones select the extreme fixed points") {
    const int k = 1;
    const double c = 4.0;
    const auto mu = DegreeDistribution::poisson(c);
    const auto nu = DegreeDistribution::binomial(k + 1, 1.0);
    const auto fp = fixed_points(k, 1.0, c);
    const auto zeros = population_dynamics(mu, nu, 20000, 100, PoolInit::Zeros, 3);
    const auto ones = population_dynamics(mu, nu, 20000, 100, PoolInit::Ones, 3);
    CHECK(std::abs(zeros.t_est - fp.alpha) < 0.01);
    CHECK(std::abs(ones.t_est - fp.alpha_prime) < 0.01);
    CHECK(std::abs(zeros.eta_est - lambda_qc_curve(k, 1.0, c, fp.alpha)) < 0.02);
    for (const auto* run : {&zeros, &ones})
      for (double x : run->pool) CHECK((x >= 0.0 && x <= 1.0));
    for (std::size_t i = 1; i < zeros.t_trajectory.size(); ++i)
      CHECK(zeros.t_trajectory[i] >= zeros.t_trajectory[i - 1] - 0.005);
  }
  SUBCASE("subcritical and q < 1 cases match Lambda at the fixed point") {
    struct Case {
      int k;
      double q;
      double c;
    };
    for (const Case cs : {Case{1, 1.0, 0.5}, Case{2, 0.6, 3.0}, Case{3, 0.8, 1.0}}) {
      const auto fp = fixed_points(cs.k, cs.q, cs.c);
      const auto r = population_dynamics(DegreeDistribution::poisson(cs.c), DegreeDistribution::binomial(cs.k + 1, cs.q),
                                         20000, 150, PoolInit::Zeros, 5);
      CAPTURE(cs.k);
      CHECK(std::abs(r.t_est - fp.alpha) < 0.02);
      CHECK(std::abs(r.eta_est - lambda_qc_curve(cs.k, cs.q, cs.c, fp.alpha)) < 0.02);
    }
  }
  CHECK_THROWS_AS(population_dynamics(DegreeDistribution::poisson(1.0), DegreeDistribution::dirac(2), 100, 100,
                                      PoolInit::Zeros, 1),
                  InvalidParameters);
  CHECK_THROWS_AS(population_dynamics(DegreeDistribution::poisson(1.0), DegreeDistribution::dirac(2), 10000, 10,
                                      PoolInit::Zeros, 1),
                  InvalidParameters);
}
