#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "lmph/errors.hpp"
#include "lmph/experiments.hpp"
#include "lmph/limits.hpp"
#include "lmph/quadrature.hpp"

using namespace lmph;

namespace {

TrialConfig small_config(int n, int k, int trials) {
  TrialConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.trials = trials;
  cfg.seed0 = 7;
  return cfg;
}

/// Ordinary Betti number of Y(s) in degree k-1 via rank-nullity, computed
/// from scratch with the rational oracle.
std::int64_t betti_by_rank_nullity(const Filtration& f, double s) {
  const auto faces = complex_at(f, s);
  const auto lower = static_cast<std::int64_t>(rank_exact_small(lower_boundary_matrix(f, s)));
  const auto upper = static_cast<std::int64_t>(rank_exact_small(coboundary_matrix(f, s)));
  return static_cast<std::int64_t>(faces[static_cast<std::size_t>(f.k() - 1)].size()) - lower - upper;
}

}  // namespace

TEST_CASE("trial configuration validation") {
  TrialConfig cfg = small_config(10, 1, 3);
  CHECK_NOTHROW(cfg.validate());
  CHECK_THROWS_AS(cfg.validate_pairs(), InvalidParameters);
  cfg.r_list = {1.0};
  cfg.s_list = {2.0, 3.0};
  CHECK_THROWS_AS(cfg.validate_pairs(), InvalidParameters);
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidParameters);
  CHECK_THROWS_AS(small_config(2, 2, 1).validate(), InvalidParameters);
  CHECK(small_config(10, 1, 3).trial_seed(0) != small_config(10, 1, 3).trial_seed(1));
}

TEST_CASE("persistent Betti experiment: exact sanity values") {
  TrialConfig cfg = small_config(12, 1, 6);
  cfg.r_list = {0.0, 0.0, 1.0, 2.0, 3.0};
  cfg.s_list = {1.0, 5.0, 2.0, 2.0, 3.0};
  const Report report = mc_persistent_betti(cfg);
  REQUIRE(report.quantities.size() == 5);
  for (double v : report.quantities[0].values) CHECK(v == 0.0);
  for (double v : report.quantities[1].values) CHECK(v == 0.0);
  for (int t = 0; t < cfg.trials; ++t) {
    const Filtration f = Filtration::sample(cfg.n, cfg.k, cfg.trial_seed(t));
    const double scale = static_cast<double>(f.face_count(cfg.k));
    for (std::size_t p = 0; p < cfg.r_list.size(); ++p) {
      CHECK(report.quantities[p].values[static_cast<std::size_t>(t)] * scale ==
            static_cast<double>(persistent_betti(f, cfg.r_list[p], cfg.s_list[p])));
    }
    // r = s: ordinary Betti number of Y(s).
    CHECK(report.quantities[3].values[static_cast<std::size_t>(t)] * scale ==
          static_cast<double>(betti_by_rank_nullity(f, 2.0)));
    CHECK(report.quantities[4].values[static_cast<std::size_t>(t)] * scale ==
          static_cast<double>(betti_by_rank_nullity(f, 3.0)));
  }
  CHECK(*report.quantities[2].theory == doctest::Approx(beta_hat(1, 1.0, 2.0)));
}

TEST_CASE("k = 2 persistent Betti numbers match rank-nullity") {
  TrialConfig cfg = small_config(8, 2, 4);
  cfg.r_list = {1.5, 0.5};
  cfg.s_list = {1.5, 3.0};
  const Report report = mc_persistent_betti(cfg);
  for (int t = 0; t < cfg.trials; ++t) {
    const Filtration f = Filtration::sample(cfg.n, cfg.k, cfg.trial_seed(t));
    const double scale = static_cast<double>(f.face_count(cfg.k));
    CHECK(report.quantities[0].values[static_cast<std::size_t>(t)] * scale ==
          static_cast<double>(betti_by_rank_nullity(f, 1.5)));
  }
}

TEST_CASE("reports are reproducible and independent of the job count") {
  TrialConfig cfg = small_config(30, 1, 8);
  cfg.r_list = {0.5, 1.0};
  cfg.s_list = {1.5, 2.0};
  Report serial = mc_persistent_betti(cfg);
  cfg.jobs = 3;
  Report parallel = mc_persistent_betti(cfg);
  cfg.jobs = 1;
  CHECK(to_json(serial).dump() == to_json(mc_persistent_betti(cfg)).dump());
  for (std::size_t i = 0; i < serial.quantities.size(); ++i)
    CHECK(serial.quantities[i].values == parallel.quantities[i].values);
}

TEST_CASE("rho enumeration and distance") {
  const auto points = rho_points(6);
  REQUIRE(points.size() == 6);
  CHECK((points[0].r == 0.0 && points[0].s == 0.0 && points[0].weight == 0.5));
  CHECK((points[1].r == 0.0 && points[1].s == 0.5 && points[1].weight == 0.25));
  CHECK((points[2].r == 0.5 && points[2].s == 0.0));
  CHECK((points[3].r == 0.0 && points[3].s == 1.0));
  CHECK((points[5].r == 1.0 && points[5].s == 0.0 && points[5].weight == 1.0 / 64));
  double total = 0.0;
  for (const auto& p : rho_points()) total += p.weight;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));

  for (int k = 1; k <= 2; ++k) {
    const auto limit = rho_limit_values(k);
    CHECK(rho_distance([k](double r, double s) { return xi_hat_cdf(k, r, s); }, limit) == 0.0);
    TrialConfig cfg = small_config(20 + 10 * (2 - k), k, 5);
    const Report report = mc_diagram_distance(cfg);
    for (double v : report.quantity("rho").values) {
      CHECK(v >= 0.0);
      CHECK(v <= 2.0);
    }
  }
}

TEST_CASE("diagonal mass experiment") {
  TrialConfig cfg = small_config(10, 1, 400);
  cfg.tolerance = 0.02;
  const Report report = mc_diagonal_mass(cfg);
  const Quantity& q = report.quantity("diagonal_mass");
  CHECK(*q.theory == doctest::Approx(promoting_expectation(10, 1)));
  CHECK(q.pass());
  CHECK(*report.quantity("diagonal_mass_vs_limit").theory == doctest::Approx(0.75));
  TrialConfig cfg2 = small_config(8, 2, 50);
  CHECK_NOTHROW(mc_diagonal_mass(cfg2));
}

TEST_CASE("observable language") {
  CHECK(Observable::parse("2*(s-r)^2 + 1")(1.0, 3.0) == 9.0);
  CHECK(Observable::parse("-r^2")(3.0, 4.0) == -9.0);
  CHECK(Observable::parse("2-1-1")(0.0, 0.0) == 0.0);
  CHECK(Observable::parse("l")(1.25, 4.0) == 2.75);
  CHECK(Observable::parse("exp(-2*s)")(0.0, 1.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(Observable::parse("exp(-(0.5*l))")(1.0, 3.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(Observable::parse("exp(s*-1)")(0.0, 1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(Observable::parse("min(s, 3)")(0.0, 5.0) == 3.0);
  CHECK(Observable::parse(" 1.5e0 * r ")(2.0, 2.0) == 3.0);
  CHECK(Observable::parse("s^3 * r + 1").growth_degree() == 4);
  CHECK(Observable::parse("exp(-s) + 2").growth_degree() == 0);
  for (const char* bad : {"exp(s)", "exp(2*s)", "exp(-s*r)", "sin(r)", "r^-1", "r^1.5", "min(r, s)", "r +", "(r",
                          "", "x", "rs", "2 3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Observable::parse(bad), ParseError);
  }
}

TEST_CASE("observables on empirical diagrams") {
  const VerboseDiagram single = reduce_diagram(Filtration::sample(2, 1, 1));
  CHECK(observable_integral(single, Observable::parse("s - r")) == 0.0);
  const Observable one = Observable::parse("1");
  const Observable bounded = Observable::parse("min(l, 0.5) + exp(-r)");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const VerboseDiagram d = reduce_diagram(Filtration::sample(15, 1 + static_cast<int>(seed % 2), seed));
    CHECK(observable_integral(d, one) == doctest::Approx(1.0).epsilon(1e-14));
    const double v = observable_integral(d, bounded);
    CHECK(v >= 0.0);
    CHECK(v <= 1.5);
  }
}

TEST_CASE("limit observable integrals against one-dimensional oracles") {
  for (int k = 1; k <= 2; ++k) {
    CAPTURE(k);
    const auto lambda1 = [k](double u) { return lambda_qc(k, 1.0, u); };
    const LimitIntegral mass = limit_observable_integral(k, Observable::parse("1"));
    CHECK(mass.converged);
    CHECK(std::abs(mass.value - 1.0) < 1e-4);
    // Births are Exp(1): E r = 1, E e^{-r} = 1/2.
    CHECK(std::abs(limit_observable_integral(k, Observable::parse("r")).value - 1.0) < 1e-4);
    CHECK(std::abs(limit_observable_integral(k, Observable::parse("exp(-r)")).value - 0.5) < 1e-4);
    // Deaths have survival function lambda_{1,u}.
    const double death_mean = piecewise_simpson(lambda1, 0.0, 40.0, 1e-10);
    CHECK(std::abs(limit_observable_integral(k, Observable::parse("s")).value - death_mean) < 1e-4);
    CHECK(std::abs(limit_observable_integral(k, Observable::parse("l")).value - (death_mean - 1.0)) < 1e-4);
    const double laplace = piecewise_simpson([&](double u) { return std::exp(-u) * (1.0 - lambda1(u)); }, 0.0, 40.0, 1e-10);
    CHECK(std::abs(limit_observable_integral(k, Observable::parse("exp(-s)")).value - laplace) < 1e-4);
  }
  // k = 1 lifetime sum: zeta(3) - 1.
  CHECK(std::abs(limit_observable_integral(1, Observable::parse("s - r")).value - 0.2020569031595942) < 1e-4);
}

TEST_CASE("rank experiment") {
  TrialConfig cfg = small_config(14, 1, 5);
  cfg.r_list = {0.0, 0.5, 1.0};
  cfg.s_list = {0.0, 2.0, 4.0};
  const Report report = rank_experiment(cfg);
  REQUIRE(report.quantities.size() == 9);
  for (double v : report.quantities[0].values) CHECK(v == 0.0);  // s = 0: empty matrix
  for (int t = 0; t < cfg.trials; ++t) {
    const Filtration f = Filtration::sample(cfg.n, cfg.k, cfg.trial_seed(t));
    const SparseSignMatrix m = coboundary_matrix(f, 2.0, 0.5);
    CHECK(report.quantities[3].values[static_cast<std::size_t>(t)] * 14.0 ==
          static_cast<double>(rank_exact_small(m)));
    CHECK(report.quantities[5].values[static_cast<std::size_t>(t)] >= 0.0);
  }
  CHECK(*report.quantities[3].theory == doctest::Approx(std::exp(-0.5) * (1.0 - lambda_qc(1, std::exp(-0.5), 1.5))));
  CHECK(*report.quantities[4].theory == doctest::Approx(1.5 / (std::exp(-0.5) * 2.0)));
}

TEST_CASE("tail mass experiment") {
  TrialConfig cfg = small_config(20, 1, 10);
  const std::vector<double> us{0.0, 2.0, 4.0, 20.0};
  const Report report = tail_mass(cfg, us);
  for (double v : report.quantities[0].values) CHECK(v == 1.0);
  for (double v : report.quantities[3].values) CHECK(v == 0.0);
  CHECK(report.quantities[2].mean <= report.quantities[1].mean);
}

TEST_CASE("census comparison plumbing") {
  const CensusComparison cmp = mn_census_comparison(200, 1, 0.7, 2.0, 2, 2000, 3);
  CHECK(cmp.roots > 0);
  CHECK(cmp.tv >= 0.0);
  CHECK(cmp.tv <= 1.0);
  double total = 0.0;
  for (const auto& [key, f] : cmp.graph) total += f;
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("report serialization") {
  TrialConfig cfg = small_config(20, 1, 3);
  cfg.r_list = {1.0};
  cfg.s_list = {2.0};
  const Report report = mc_persistent_betti(cfg);
  const auto json = to_json(report);
  CHECK(json["schema"] == 1);
  CHECK(json["experiment"] == "persistent_betti");
  CHECK(json["quantities"][0]["values"].size() == 3);
  CHECK(json["pass"].is_boolean());
  std::ostringstream text;
  write_text(text, report);
  CHECK(text.str().find("betti[r=1,s=2]") != std::string::npos);
  std::ostringstream csv;
  write_csv(csv, report);
  const std::string rows = csv.str();
  CHECK(rows.rfind("quantity,trial,seed,value\n", 0) == 0);
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 4);
}
