#include "lmph/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "lmph/errors.hpp"
#include "lmph/leaf_removal.hpp"
#include "lmph/limits.hpp"
#include "lmph/rng.hpp"

namespace lmph {

void TrialConfig::validate() const {
  if (k < 1) throw InvalidParameters("config: k must be >= 1");
  if (n < k + 1) throw InvalidParameters("config: n must be >= k + 1");
  if (trials < 1) throw InvalidParameters("config: trials must be >= 1");
  if (jobs < 1) throw InvalidParameters("config: jobs must be >= 1");
  if (!(tolerance >= 0.0)) throw InvalidParameters("config: tolerance must be >= 0");
}

void TrialConfig::validate_pairs() const {
  validate();
  if (r_list.empty() || s_list.empty()) throw InvalidParameters("config: r and s lists must be nonempty");
  if (r_list.size() != s_list.size()) throw InvalidParameters("config: r and s lists must have equal length");
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    if (!(r_list[i] >= 0.0 && s_list[i] >= 0.0)) throw InvalidParameters("config: r and s must be >= 0");
  }
}

std::uint64_t TrialConfig::trial_seed(int trial) const noexcept {
  return derive_seed(seed0, static_cast<std::uint64_t>(trial));
}

void Quantity::summarize() {
  const auto count = static_cast<double>(values.size());
  mean = values.empty() ? 0.0 : std::accumulate(values.begin(), values.end(), 0.0) / count;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  sd = values.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
}

bool Quantity::pass() const noexcept {
  if (!has_verdict()) return true;
  return std::abs(mean - *theory) <= *tolerance;
}

bool Report::passed() const noexcept {
  return std::all_of(quantities.begin(), quantities.end(), [](const Quantity& q) { return q.pass(); });
}

const Quantity& Report::quantity(const std::string& name) const {
  for (const auto& q : quantities)
    if (q.name == name) return q;
  throw InvalidParameters("report: no quantity named " + name);
}

std::vector<std::vector<double>> run_trials(const TrialConfig& cfg,
                                            const std::function<std::vector<double>(int, std::uint64_t)>& fn) {
  std::vector<std::vector<double>> results(static_cast<std::size_t>(cfg.trials));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const int t = next.fetch_add(1);
      if (t >= cfg.trials) return;
      try {
        results[static_cast<std::size_t>(t)] = fn(t, cfg.trial_seed(t));
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(cfg.trials);
      }
    }
  };
  const int workers = std::min(cfg.jobs, cfg.trials);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

namespace {

std::string pair_label(const std::string& name, double r, double s) {
  std::ostringstream os;
  os << name << "[r=" << r << ",s=" << s << "]";
  return os.str();
}

/// Transposes per-trial vectors into named quantities.
std::vector<Quantity> collect(const std::vector<std::vector<double>>& per_trial, std::vector<Quantity> shells) {
  for (const auto& row : per_trial) {
    if (row.size() != shells.size()) throw InvariantViolation("experiment: trial returned a wrong number of values");
    for (std::size_t i = 0; i < row.size(); ++i) shells[i].values.push_back(row[i]);
  }
  for (auto& q : shells) q.summarize();
  return shells;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}


}  // namespace

Report mc_persistent_betti(const TrialConfig& cfg) {
  cfg.validate_pairs();
  const std::vector<double> rs = sorted_unique(cfg.r_list);
  const std::vector<double> ss = sorted_unique(cfg.s_list);
  for (double v : rs)
    if (v > cfg.n) throw InvalidParameters("mc_persistent_betti: r must be <= n");
  for (double v : ss)
    if (v > cfg.n) throw InvalidParameters("mc_persistent_betti: s must be <= n");
  std::vector<Quantity> shells;
  for (std::size_t i = 0; i < cfg.r_list.size(); ++i) {
    Quantity q;
    q.name = pair_label("betti", cfg.r_list[i], cfg.s_list[i]);
    q.theory = beta_hat(cfg.k, cfg.r_list[i], cfg.s_list[i]);
    q.tolerance = cfg.tolerance;
    shells.push_back(std::move(q));
  }
  const auto per_trial = run_trials(cfg, [&](int, std::uint64_t seed) {
    const Filtration f = Filtration::sample(cfg.n, cfg.k, seed);
    const BettiGrid grid = betti_grid(f, rs, ss);
    std::map<double, std::int64_t> cycles;
    for (double r : rs) cycles[r] = cycle_space_dim(f, r);
    const double scale = static_cast<double>(f.face_count(cfg.k));
    std::vector<double> out;
    for (std::size_t p = 0; p < cfg.r_list.size(); ++p) {
      const auto i = static_cast<std::size_t>(std::lower_bound(rs.begin(), rs.end(), cfg.r_list[p]) - rs.begin());
      const auto j = static_cast<std::size_t>(std::lower_bound(ss.begin(), ss.end(), cfg.s_list[p]) - ss.begin());
      out.push_back(static_cast<double>(cycles[cfg.r_list[p]] - grid.at(i, j)) / scale);
    }
    return out;
  });
  return Report{"persistent_betti", cfg, collect(per_trial, std::move(shells)), {}};
}

std::vector<RhoPoint> rho_points(int terms) {
  if (terms < 1 || terms > 1000) throw InvalidParameters("rho_points: terms must be in [1, 1000]");
  std::vector<RhoPoint> points;
  double weight = 0.5;
  for (int d = 0; static_cast<int>(points.size()) < terms; ++d) {
    for (int i = 0; i <= d && static_cast<int>(points.size()) < terms; ++i) {
      points.push_back({0.5 * i, 0.5 * (d - i), weight});
      weight *= 0.5;
    }
  }
  return points;
}

std::vector<double> rho_limit_values(int k, int terms) {
  std::vector<double> values;
  for (const RhoPoint& p : rho_points(terms)) values.push_back(xi_hat_cdf(k, p.r, p.s));
  return values;
}

double rho_distance(const std::function<double(double, double)>& cdf, std::span<const double> limit_values) {
  const auto points = rho_points(static_cast<int>(limit_values.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    sum += points[i].weight * std::abs(cdf(points[i].r, points[i].s) - limit_values[i]);
  return sum;
}

double rho_distance(const VerboseDiagram& d, std::span<const double> limit_values) {
  return rho_distance([&d](double r, double s) { return diagram_cdf(d, r, s); }, limit_values);
}

Report mc_diagram_distance(const TrialConfig& cfg) {
  cfg.validate();
  const std::vector<double> limit = rho_limit_values(cfg.k);
  Quantity q;
  q.name = "rho";
  const auto per_trial = run_trials(cfg, [&](int, std::uint64_t seed) {
    const VerboseDiagram d = reduce_diagram(Filtration::sample(cfg.n, cfg.k, seed));
    return std::vector<double>{rho_distance(d, limit)};
  });
  return Report{"diagram_distance", cfg, collect(per_trial, {q}), {}};
}

Report mc_diagonal_mass(const TrialConfig& cfg) {
  cfg.validate();
  Quantity finite;
  finite.name = "diagonal_mass";
  finite.theory = promoting_expectation(cfg.n, cfg.k);
  finite.tolerance = cfg.tolerance;
  Quantity limit;
  limit.name = "diagonal_mass_vs_limit";
  limit.theory = diagonal_total(cfg.k);
  const auto per_trial = run_trials(cfg, [&](int, std::uint64_t seed) {
    const Filtration f = Filtration::sample(cfg.n, cfg.k, seed);
    const VerboseDiagram d = reduce_diagram(f);
    std::uint64_t diagonal = 0;
    for (const Atom& a : d.atoms()) diagonal += a.birth == a.death ? a.multiplicity : 0;
    const std::uint64_t off = off_diagonal_restriction(d).total_multiplicity();
    const std::uint64_t promoting = f.promoting_count();
    if (diagonal != promoting || d.normalizer() - off != promoting) {
      throw InvariantViolation("diagonal mass: diagram (" + std::to_string(diagonal) + "), promoting count (" +
                               std::to_string(promoting) + ") and complement (" +
                               std::to_string(d.normalizer() - off) + ") disagree");
    }
    const double mass = diagram_diagonal_mass(d);
    return std::vector<double>{mass, mass};
  });
  return Report{"diagonal_mass", cfg, collect(per_trial, {finite, limit}), {}};
}

Report mc_observable(const TrialConfig& cfg, const Observable& f) {
  cfg.validate();
  const LimitIntegral limit = limit_observable_integral(cfg.k, f);
  Quantity q;
  q.name = "observable[" + f.text() + "]";
  q.theory = limit.value;
  q.tolerance = cfg.tolerance;
  const auto per_trial = run_trials(cfg, [&](int, std::uint64_t seed) {
    return std::vector<double>{observable_integral(reduce_diagram(Filtration::sample(cfg.n, cfg.k, seed)), f)};
  });
  Report report{"observable", cfg, collect(per_trial, {q}), {}};
  report.notes = {{"limit_step", limit.step},
                  {"limit_cutoff", limit.cutoff},
                  {"limit_tail_bound", limit.tail_bound},
                  {"limit_converged", limit.converged ? 1.0 : 0.0}};
  return report;
}

Report rank_experiment(const TrialConfig& cfg) {
  cfg.validate_pairs();
  std::vector<Quantity> shells;
  for (std::size_t i = 0; i < cfg.r_list.size(); ++i) {
    const double r = cfg.r_list[i];
    const double s = cfg.s_list[i];
    const double q = std::exp(-r);
    const double c = std::max(0.0, s - r);
    Quantity rank;
    rank.name = pair_label("rank", r, s);
    rank.theory = q * (1.0 - lambda_qc(cfg.k, q, c));
    rank.tolerance = cfg.tolerance;
    Quantity shape;
    shape.name = pair_label("rows_per_column", r, s);
    shape.theory = c / (q * (cfg.k + 1));
    Quantity gap;
    gap.name = pair_label("leaf_removal_gap", r, s);
    shells.push_back(std::move(rank));
    shells.push_back(std::move(shape));
    shells.push_back(std::move(gap));
  }
  const auto per_trial = run_trials(cfg, [&](int, std::uint64_t seed) {
    const Filtration f = Filtration::sample(cfg.n, cfg.k, seed);
    const double scale = static_cast<double>(f.face_count(cfg.k));
    std::vector<double> out;
    for (std::size_t i = 0; i < cfg.r_list.size(); ++i) {
      const double r = cfg.r_list[i];
      const double s = cfg.s_list[i];
      if (!(r < s)) {
        // Empty window: no rows, rank 0.
        out.insert(out.end(), {0.0, 0.0, 0.0});
        continue;
      }
      const SparseSignMatrix m = coboundary_matrix(f, s, r);
      const auto rank = static_cast<double>(rank_checked(m));
      const PeelResult peel = leaf_removal(m);
      out.push_back(rank / scale);
      out.push_back(m.cols() ? static_cast<double>(m.rows()) / static_cast<double>(m.cols()) : 0.0);
      out.push_back((static_cast<double>(peel.rank_upper_bound()) - rank) / scale);
    }
    return out;
  });
  return Report{"rank", cfg, collect(per_trial, std::move(shells)), {}};
}

Report tail_mass(const TrialConfig& cfg, std::span<const double> u_list) {
  cfg.validate();
  if (u_list.empty()) throw InvalidParameters("tail_mass: u list must be nonempty");
  std::vector<Quantity> shells;
  for (double u : u_list) {
    if (!(u >= 0.0)) throw InvalidParameters("tail_mass: u must be >= 0");
    std::ostringstream os;
    os << "tail[u=" << u << "]";
    Quantity q;
    q.name = os.str();
    shells.push_back(std::move(q));
  }
  const auto per_trial = run_trials(cfg, [&](int, std::uint64_t seed) {
    const VerboseDiagram d = reduce_diagram(Filtration::sample(cfg.n, cfg.k, seed));
    std::vector<double> out;
    for (double u : u_list) out.push_back(diagram_tail_mass(d, u));
    return out;
  });
  return Report{"tail_mass", cfg, collect(per_trial, std::move(shells)), {}};
}

CensusComparison mn_census_comparison(int n, int k, double r, double s, int radius, std::size_t gw_samples,
                                      std::uint64_t seed) {
  if (!(r >= 0.0 && r < s)) throw InvalidParameters("census: requires 0 <= r < s");
  const Filtration f = Filtration::sample(n, k, derive_seed(seed, 0));
  const TannerGraph g = tanner(coboundary_matrix(f, s, r));
  const std::vector<std::uint32_t> roots = g.column_vertices();
  if (roots.empty()) throw InvalidParameters("census: M_n(r, s) has no columns");
  CensusComparison out;
  out.roots = roots.size();
  out.graph = census(g, roots, radius);
  out.tree = gw_star_census(DegreeDistribution::poisson(s - r), DegreeDistribution::binomial(k + 1, std::exp(-r)),
                            radius, gw_samples, derive_seed(seed, 1));
  out.tv = total_variation(out.graph, out.tree);
  return out;
}

nlohmann::json to_json(const Report& report, bool include_values) {
  using nlohmann::json;
  const TrialConfig& c = report.config;
  json out;
  out["schema"] = 1;
  out["experiment"] = report.experiment;
  out["config"] = {{"n", c.n},           {"k", c.k},           {"trials", c.trials},
                   {"seed0", c.seed0},   {"r_list", c.r_list}, {"s_list", c.s_list},
                   {"tolerance", c.tolerance}};
  json quantities = json::array();
  for (const Quantity& q : report.quantities) {
    json item{{"name", q.name}, {"mean", q.mean}, {"sd", q.sd}};
    item["theory"] = q.theory ? json(*q.theory) : json(nullptr);
    item["tolerance"] = q.tolerance ? json(*q.tolerance) : json(nullptr);
    item["pass"] = q.has_verdict() ? json(q.pass()) : json(nullptr);
    if (include_values) item["values"] = q.values;
    quantities.push_back(std::move(item));
  }
  out["quantities"] = std::move(quantities);
  json notes = json::object();
  for (const auto& [key, value] : report.notes) notes[key] = value;
  out["notes"] = std::move(notes);
  out["pass"] = report.passed();
  return out;
}

void write_text(std::ostream& os, const Report& report) {
  const TrialConfig& c = report.config;
  os << report.experiment << "  n=" << c.n << " k=" << c.k << " trials=" << c.trials << " seed0=" << c.seed0 << '\n';
  std::size_t width = 8;
  for (const Quantity& q : report.quantities) width = std::max(width, q.name.size());
  const auto flags = os.flags();
  os << std::left << std::setw(static_cast<int>(width)) << "quantity" << std::right << std::setw(12) << "mean"
     << std::setw(12) << "sd" << std::setw(12) << "theory" << std::setw(10) << "tol" << std::setw(7) << "pass"
     << '\n';
  os << std::fixed << std::setprecision(6);
  for (const Quantity& q : report.quantities) {
    os << std::left << std::setw(static_cast<int>(width)) << q.name << std::right << std::setw(12) << q.mean
       << std::setw(12) << q.sd;
    if (q.theory) {
      os << std::setw(12) << *q.theory;
    } else {
      os << std::setw(12) << "-";
    }
    if (q.tolerance) {
      os << std::setw(10) << std::setprecision(4) << *q.tolerance << std::setprecision(6);
    } else {
      os << std::setw(10) << "-";
    }
    os << std::setw(7) << (q.has_verdict() ? (q.pass() ? "yes" : "NO") : "-") << '\n';
  }
  for (const auto& [key, value] : report.notes) os << key << " = " << value << '\n';
  os.flags(flags);
}

void write_csv(std::ostream& os, const Report& report) {
  os << "quantity,trial,seed,value\n";
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::setprecision(17);
  for (const Quantity& q : report.quantities) {
    for (std::size_t t = 0; t < q.values.size(); ++t) {
      os << '"' << q.name << "\"," << t << ',' << report.config.trial_seed(static_cast<int>(t)) << ',' << q.values[t]
         << '\n';
    }
  }
  os.flags(flags);
  os.precision(precision);
}

}  // namespace lmph
