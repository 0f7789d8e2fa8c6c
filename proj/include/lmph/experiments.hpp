// Monte Carlo harness: independent trials (one filtration each) are run in
// parallel, then folded in trial order so that reports do not depend on
// scheduling. Trial t of a configuration uses seed derive_seed(seed0, t).
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lmph/gw.hpp"
#include "lmph/observable.hpp"
#include "lmph/persistence.hpp"

namespace lmph {

struct TrialConfig {
  int n = 0;
  int k = 1;
  int trials = 1;
  std::uint64_t seed0 = 42;
  std::vector<double> r_list;  // paired elementwise with s_list
  std::vector<double> s_list;
  double tolerance = 0.05;
  int jobs = 1;

  /// Throws InvalidParameters unless n >= k + 1 >= 2, trials >= 1, jobs >= 1.
  void validate() const;
  /// Additionally requires nonempty, equally long r/s lists with entries >= 0.
  void validate_pairs() const;
  std::uint64_t trial_seed(int trial) const noexcept;
};

struct Quantity {
  std::string name;
  std::vector<double> values;  // one per trial
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (0 for a single trial)
  std::optional<double> theory;
  std::optional<double> tolerance;

  /// Fills mean and sd from values.
  void summarize();
  bool has_verdict() const noexcept { return theory.has_value() && tolerance.has_value(); }
  /// |mean - theory| <= tolerance; true when there is no verdict to give.
  bool pass() const noexcept;
};

struct Report {
  std::string experiment;
  TrialConfig config;
  std::vector<Quantity> quantities;
  std::vector<std::pair<std::string, double>> notes;  // auxiliary scalars

  bool passed() const noexcept;
  const Quantity& quantity(const std::string& name) const;
};

/// Runs fn(trial index, seed) for every trial on cfg.jobs threads and returns
/// the per-trial vectors in trial order.
std::vector<std::vector<double>> run_trials(const TrialConfig& cfg,
                                            const std::function<std::vector<double>(int, std::uint64_t)>& fn);

/// beta^{r,s} / C(n, k) for each (r, s) pair against beta_hat(k, r, s).
Report mc_persistent_betti(const TrialConfig& cfg);

/// One enumerated corner (r_i, s_i) of the diagram distance with weight 2^{-i}.
struct RhoPoint {
  double r = 0.0;
  double s = 0.0;
  double weight = 0.0;
};

inline constexpr int kRhoTerms = 60;

/// Half-integer corners enumerated diagonal by diagonal: for d = 0, 1, ...
/// and i = 0..d the point (i/2, (d-i)/2); the m-th point (m >= 1) has weight
/// 2^{-m}. Truncated after `terms` points (the omitted tail is <= 2^{-terms}).
std::vector<RhoPoint> rho_points(int terms = kRhoTerms);
/// Limiting CDF values at rho_points.
std::vector<double> rho_limit_values(int k, int terms = kRhoTerms);
/// sum_i 2^{-i} |cdf(r_i, s_i) - limit_i|.
double rho_distance(const std::function<double(double, double)>& cdf, std::span<const double> limit_values);
double rho_distance(const VerboseDiagram& d, std::span<const double> limit_values);

/// Mean diagram distance of empirical verbose diagrams (no theory value).
Report mc_diagram_distance(const TrialConfig& cfg);

/// Diagonal mass per trial, checked to coincide exactly across the diagram,
/// the promoting count and the off-diagonal complement; compared with the
/// exact finite-n expectation (tolerance cfg.tolerance) and with the limit.
Report mc_diagonal_mass(const TrialConfig& cfg);

/// Integral of f against each empirical verbose diagram, compared with the
/// limiting integral.
Report mc_observable(const TrialConfig& cfg, const Observable& f);

/// rank M_n(r, s) / C(n, k) against q (1 - lambda_{q,c}) for each (r, s) pair,
/// plus |R_n| / |C_n| against c / (q (k+1)) and the leaf-removal gap
/// (bound - rank) / C(n, k) (no verdicts for those two).
Report rank_experiment(const TrialConfig& cfg);

/// Empirical mass of atoms with death > u for each u (no theory).
Report tail_mass(const TrialConfig& cfg, std::span<const double> u_list);

/// Census of M_n(r, s)'s Tanner graph at the given radius around its column
/// vertices, and the TV distance to a GW_*(Pois(s-r), Bin(k+1, e^{-r}))
/// census of `gw_samples` trees.
struct CensusComparison {
  Census graph;
  Census tree;
  std::size_t roots = 0;
  double tv = 0.0;
};
CensusComparison mn_census_comparison(int n, int k, double r, double s, int radius, std::size_t gw_samples,
                                      std::uint64_t seed);

/// Report serializations. JSON carries "schema": 1.
nlohmann::json to_json(const Report& report, bool include_values = true);
void write_text(std::ostream& os, const Report& report);
/// Per-trial CSV: quantity,trial,seed,value.
void write_csv(std::ostream& os, const Report& report);

}  // namespace lmph
