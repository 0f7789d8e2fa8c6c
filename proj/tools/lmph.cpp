// Command-line front end: simulate, limit, compare, rank, gw, census.
//
// Exit status: 0 on success, 2 on usage errors (bad flags or parameters
// outside an operation's domain), 1 on internal invariant violations.
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lmph/errors.hpp"
#include "lmph/experiments.hpp"
#include "lmph/gw.hpp"
#include "lmph/leaf_removal.hpp"
#include "lmph/limits.hpp"
#include "lmph/observable.hpp"
#include "lmph/persistence.hpp"
#include "lmph/rank.hpp"

using namespace lmph;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

/// Opens `path` for writing or throws InvalidParameters.
std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidParameters("cannot open " + path + " for writing");
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameters("cannot open " + path + " for reading");
  return in;
}

void emit_json(const json& j) { std::cout << j.dump(2) << '\n'; }

json diagram_json(const VerboseDiagram& d) {
  json atoms = json::array();
  for (const Atom& a : d.atoms()) atoms.push_back({a.birth, a.death, a.multiplicity});
  return {{"schema", 1}, {"n", d.n()}, {"k", d.k()}, {"seed", d.seed()}, {"normalizer", d.normalizer()},
          {"atoms", atoms}};
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  int n = 0;
  int k = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string filtration_path;
  std::string diagram_path;
  std::string format = "json";
};

int run_simulate(const SimulateArgs& a) {
  const Filtration f = Filtration::sample(a.n, a.k, a.seed);
  if (!a.filtration_path.empty()) {
    auto out = open_output(a.filtration_path);
    write_filtration(out, f);
  }
  const VerboseDiagram d = reduce_diagram(f);
  if (!a.diagram_path.empty()) {
    auto out = open_output(a.diagram_path);
    write_diagram(out, d);
  }
  if (a.format == "json") {
    emit_json(diagram_json(d));
  } else if (a.format == "csv") {
    std::cout << "birth,death,multiplicity\n" << std::setprecision(17);
    for (const Atom& atom : d.atoms()) std::cout << atom.birth << ',' << atom.death << ',' << atom.multiplicity << '\n';
  } else {
    write_diagram(std::cout, d);
  }
  return 0;
}

// ------------------------------------------------------------------- limit

struct LimitArgs {
  int k = 1;
  std::optional<double> r;
  std::optional<double> s;
  std::optional<double> q;
  std::optional<double> c;
  std::string observable;
  double grid_max = 0.0;
  double grid_step = 0.25;
  std::string format = "json";
};

int run_limit(const LimitArgs& a) {
  if (a.grid_max > 0.0) {
    if (!(a.grid_step > 0.0)) throw InvalidParameters("--grid-step must be > 0");
    const auto points = static_cast<int>(std::floor(a.grid_max / a.grid_step + 1e-9));
    json rows = json::array();
    if (a.format == "csv") std::cout << "r,s,beta_hat,xi_hat_cdf\n" << std::setprecision(17);
    for (int i = 0; i <= points; ++i) {
      for (int j = 0; j <= points; ++j) {
        const double r = i * a.grid_step;
        const double s = j * a.grid_step;
        const double b = beta_hat(a.k, r, s);
        const double f = xi_hat_cdf(a.k, r, s);
        if (a.format == "csv") {
          std::cout << r << ',' << s << ',' << b << ',' << f << '\n';
        } else {
          rows.push_back({{"r", r}, {"s", s}, {"beta_hat", b}, {"xi_hat_cdf", f}});
        }
      }
    }
    if (a.format != "csv") emit_json({{"schema", 1}, {"k", a.k}, {"grid", rows}});
    return 0;
  }
  json out{{"schema", 1}, {"k", a.k}};
  out["diagonal_total"] = diagonal_total(a.k);
  out["lp_critical"] = lp_critical(a.k);
  if (a.r.has_value() != a.s.has_value()) throw InvalidParameters("--r and --s must be given together");
  if (a.r) {
    out["r"] = *a.r;
    out["s"] = *a.s;
    out["beta_hat"] = beta_hat(a.k, *a.r, *a.s);
    out["xi_hat_cdf"] = xi_hat_cdf(a.k, *a.r, *a.s);
  }
  if (a.q.has_value() != a.c.has_value()) throw InvalidParameters("--q and --c must be given together");
  if (a.q) {
    const auto report = fixed_points(a.k, *a.q, *a.c);
    out["q"] = *a.q;
    out["c"] = *a.c;
    out["fixed_points"] = report.roots;
    out["residuals"] = report.residuals;
    out["lambda"] = lambda_from_report(a.k, *a.q, *a.c, report);
    out["lambda_at_alpha"] = lambda_qc_curve(a.k, *a.q, *a.c, report.alpha);
    out["lambda_at_alpha_prime"] = lambda_qc_curve(a.k, *a.q, *a.c, report.alpha_prime);
    if (*a.q == 1.0) out["lp_betti_limit"] = lp_betti_limit(a.k, *a.c);
  }
  if (!a.observable.empty()) {
    const LimitIntegral integral = limit_observable_integral(a.k, Observable::parse(a.observable));
    out["observable"] = {{"expression", a.observable}, {"value", integral.value}, {"step", integral.step},
                         {"cutoff", integral.cutoff}, {"converged", integral.converged}};
  }
  if (a.format == "text") {
    for (const auto& [key, value] : out.items()) std::cout << key << " = " << value.dump() << '\n';
  } else {
    emit_json(out);
  }
  return 0;
}

// ----------------------------------------------------------------- compare

struct CompareArgs {
  std::string experiment = "betti";
  TrialConfig cfg;
  std::string observable = "s - r";
  std::vector<double> u_list{0.0, 1.0, 2.0, 4.0, 8.0};
  std::string format = "json";
  std::string csv_path;
};

int run_compare(CompareArgs a) {
  Report report;
  if (a.experiment == "betti") {
    report = mc_persistent_betti(a.cfg);
  } else if (a.experiment == "rho") {
    report = mc_diagram_distance(a.cfg);
  } else if (a.experiment == "diagonal") {
    report = mc_diagonal_mass(a.cfg);
  } else if (a.experiment == "observable") {
    report = mc_observable(a.cfg, Observable::parse(a.observable));
  } else if (a.experiment == "rank") {
    report = rank_experiment(a.cfg);
  } else if (a.experiment == "tail") {
    report = tail_mass(a.cfg, a.u_list);
  } else {
    throw InvalidParameters("unknown experiment " + a.experiment);
  }
  if (!a.csv_path.empty()) {
    auto out = open_output(a.csv_path);
    write_csv(out, report);
  }
  if (a.format == "text") {
    write_text(std::cout, report);
  } else if (a.format == "csv") {
    write_csv(std::cout, report);
  } else {
    emit_json(to_json(report));
  }
  return 0;
}

// -------------------------------------------------------------------- rank

struct RankArgs {
  std::string input;
  int n = 0;
  int k = 1;
  double r = 0.0;
  double s = 1.0;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
};

SparseSignMatrix generated_matrix(int n, int k, double r, double s, std::uint64_t seed) {
  if (n <= 0) throw InvalidParameters("either --input or --n is required");
  const Filtration f = Filtration::sample(n, k, seed);
  return r > 0.0 ? coboundary_matrix(f, s, r) : coboundary_matrix(f, s);
}

int run_rank(const RankArgs& a) {
  SparseSignMatrix m;
  if (!a.input.empty()) {
    auto in = open_input(a.input);
    m = read_matrix(in);
  } else {
    m = generated_matrix(a.n, a.k, a.r, a.s, a.seed);
  }
  const std::size_t rank = rank_checked(m);
  const PeelResult peel = leaf_removal(m);
  const std::size_t residual_rank = rank_mod_p(peel.residual);
  if (peel.removed_rank + residual_rank != rank) {
    throw InvariantViolation("leaf-removal certificate failed: " + std::to_string(peel.removed_rank) + " + " +
                             std::to_string(residual_rank) + " != " + std::to_string(rank));
  }
  json out{{"schema", 1},
           {"rows", m.rows()},
           {"cols", m.cols()},
           {"nnz", m.nnz()},
           {"rank", rank},
           {"primes", {kPrimaryPrime, kConfirmPrime}},
           {"peel",
            {{"rounds", peel.rounds},
             {"removed_rank", peel.removed_rank},
             {"removed_columns", peel.removed_columns},
             {"residual_rows", peel.residual.rows()},
             {"residual_cols", peel.residual.cols()},
             {"residual_rank", residual_rank},
             {"rank_upper_bound", peel.rank_upper_bound()}}}};
  if (a.format == "text") {
    std::cout << "rows " << m.rows() << "\ncols " << m.cols() << "\nrank " << rank << "\nremoved_rank "
              << peel.removed_rank << "\nresidual_rank " << residual_rank << "\nrank_upper_bound "
              << peel.rank_upper_bound() << '\n';
  } else {
    emit_json(out);
  }
  return 0;
}

// ---------------------------------------------------------------------- gw

struct GwArgs {
  int k = 1;
  double q = 1.0;
  double c = 1.0;
  std::size_t pool = 100000;
  int iters = 200;
  std::string init = "zeros";
  std::uint64_t seed = kDefaultSeed;
  int tree_depth = -1;
  std::string format = "json";
};

int run_gw(const GwArgs& a) {
  if (a.init != "zeros" && a.init != "ones") throw InvalidParameters("--init must be zeros or ones");
  const auto mu = DegreeDistribution::poisson(a.c);
  const auto nu = DegreeDistribution::binomial(a.k + 1, a.q);
  const PopulationResult pd =
      population_dynamics(mu, nu, a.pool, a.iters, a.init == "ones" ? PoolInit::Ones : PoolInit::Zeros, a.seed);
  const auto fp = fixed_points(a.k, a.q, a.c);
  json out{{"schema", 1},
           {"k", a.k},
           {"q", a.q},
           {"c", a.c},
           {"pool", a.pool},
           {"iterations", a.iters},
           {"init", a.init},
           {"seed", a.seed},
           {"t_est", pd.t_est},
           {"eta_est", pd.eta_est},
           {"t_trajectory", pd.t_trajectory},
           {"alpha", fp.alpha},
           {"alpha_prime", fp.alpha_prime},
           {"lambda_at_alpha", lambda_qc_curve(a.k, a.q, a.c, fp.alpha)},
           {"lambda_at_alpha_prime", lambda_qc_curve(a.k, a.q, a.c, fp.alpha_prime)},
           {"lambda", lambda_from_report(a.k, a.q, a.c, fp)}};
  if (a.tree_depth >= 0) out["gw_star_tree"] = tree_key(sample_gw_star(mu, nu, a.tree_depth, derive_seed(a.seed, 1)));
  if (a.format == "text") {
    for (const auto& [key, value] : out.items())
      if (key != "t_trajectory") std::cout << key << " = " << value.dump() << '\n';
  } else {
    emit_json(out);
  }
  return 0;
}

// ------------------------------------------------------------------ census

struct CensusArgs {
  std::string input;
  int n = 0;
  int k = 1;
  double r = 0.7;
  double s = 2.0;
  int radius = 2;
  std::size_t gw_samples = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
};

int run_census(const CensusArgs& a) {
  if (a.radius % 2 != 0) throw InvalidParameters("--radius must be even");
  Census graph;
  std::optional<Census> tree;
  double tv = 0.0;
  std::size_t roots = 0;
  if (!a.input.empty()) {
    auto in = open_input(a.input);
    const TannerGraph g = tanner(read_matrix(in));
    const auto cols = g.column_vertices();
    roots = cols.size();
    graph = census(g, cols, a.radius);
  } else {
    if (a.n <= 0) throw InvalidParameters("either --input or --n is required");
    const std::size_t samples = a.gw_samples > 0 ? a.gw_samples : 1;
    CensusComparison cmp = mn_census_comparison(a.n, a.k, a.r, a.s, a.radius, samples, a.seed);
    graph = std::move(cmp.graph);
    roots = cmp.roots;
    if (a.gw_samples > 0) {
      tree = std::move(cmp.tree);
      tv = cmp.tv;
    }
  }
  const auto sorted = sorted_by_frequency(graph);
  if (a.format == "json") {
    json patterns = json::array();
    for (const auto& [key, f] : sorted) patterns.push_back({{"key", key}, {"frequency", f}});
    json out{{"schema", 1}, {"radius", a.radius}, {"roots", roots}, {"patterns", patterns}};
    if (tree) out["tv_to_gw_star"] = tv;
    emit_json(out);
  } else {
    std::cout << std::setprecision(10);
    for (const auto& [key, f] : sorted) std::cout << key << ' ' << f << '\n';
    if (tree) std::cout << "# tv_to_gw_star " << tv << '\n';
  }
  return 0;
}

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent homology of the Linial-Meshulam filtration: simulation, limits and experiments"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Sample a filtration and compute its verbose diagram");
  simulate->add_option("--n", sim.n, "Number of vertices")->required();
  simulate->add_option("--k", sim.k, "Top dimension")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  simulate->add_option("--filtration", sim.filtration_path, "Write the filtration to this file");
  simulate->add_option("--diagram", sim.diagram_path, "Write the diagram to this file");
  add_format(simulate, sim.format);

  LimitArgs lim;
  auto* limit = app.add_subcommand("limit", "Evaluate limiting quantities");
  limit->add_option("--k", lim.k, "Top dimension")->capture_default_str();
  limit->add_option("--r", lim.r, "Birth threshold r");
  limit->add_option("--s", lim.s, "Death threshold s");
  limit->add_option("--q", lim.q, "q in (0, 1] for lambda_{q,c}");
  limit->add_option("--c", lim.c, "c >= 0 for lambda_{q,c}");
  limit->add_option("--observable", lim.observable, "Observable f(r, s) to integrate against the limit");
  limit->add_option("--grid-max", lim.grid_max, "Emit a (r, s) grid on [0, max]^2 instead");
  limit->add_option("--grid-step", lim.grid_step, "Grid step")->capture_default_str();
  add_format(limit, lim.format);

  CompareArgs cmp;
  cmp.cfg.seed0 = kDefaultSeed;
  cmp.cfg.trials = 10;
  auto* compare = app.add_subcommand("compare", "Monte Carlo experiment against the limit");
  compare->add_option("--experiment", cmp.experiment, "Experiment")
      ->check(CLI::IsMember({"betti", "rho", "diagonal", "observable", "rank", "tail"}))
      ->capture_default_str();
  compare->add_option("--n", cmp.cfg.n, "Number of vertices")->required();
  compare->add_option("--k", cmp.cfg.k, "Top dimension")->capture_default_str();
  compare->add_option("--trials", cmp.cfg.trials, "Number of trials")->capture_default_str();
  compare->add_option("--seed", cmp.cfg.seed0, "Master seed")->capture_default_str();
  compare->add_option("--r", cmp.cfg.r_list, "r values (paired with --s)")->delimiter(',');
  compare->add_option("--s", cmp.cfg.s_list, "s values (paired with --r)")->delimiter(',');
  compare->add_option("--tolerance", cmp.cfg.tolerance, "Pass tolerance")->capture_default_str();
  compare->add_option("--jobs", cmp.cfg.jobs, "Worker threads")->capture_default_str();
  compare->add_option("--observable", cmp.observable, "Observable for --experiment observable")->capture_default_str();
  compare->add_option("--u", cmp.u_list, "Tail thresholds for --experiment tail")->delimiter(',');
  compare->add_option("--csv", cmp.csv_path, "Also write per-trial CSV to this file");
  add_format(compare, cmp.format);

  RankArgs rk;
  auto* rank = app.add_subcommand("rank", "Rank and leaf-removal certificate of a matrix");
  rank->add_option("--input", rk.input, "Matrix file");
  rank->add_option("--n", rk.n, "Generate M_n(r, s) with n vertices instead");
  rank->add_option("--k", rk.k, "Top dimension")->capture_default_str();
  rank->add_option("--r", rk.r, "Window start (0 gives K_n(s))")->capture_default_str();
  rank->add_option("--s", rk.s, "Window end")->capture_default_str();
  rank->add_option("--seed", rk.seed, "Master seed")->capture_default_str();
  add_format(rank, rk.format);

  GwArgs gwa;
  auto* gw = app.add_subcommand("gw", "Population dynamics for GW_*(Pois(c), Bin(k+1, q))");
  gw->add_option("--k", gwa.k, "Top dimension")->capture_default_str();
  gw->add_option("--q", gwa.q, "Binomial success probability")->capture_default_str();
  gw->add_option("--c", gwa.c, "Poisson mean")->capture_default_str();
  gw->add_option("--pool", gwa.pool, "Pool size (>= 10^4)")->capture_default_str();
  gw->add_option("--iters", gwa.iters, "Iterations (>= 100)")->capture_default_str();
  gw->add_option("--init", gwa.init, "Initial pool")->check(CLI::IsMember({"zeros", "ones"}))->capture_default_str();
  gw->add_option("--seed", gwa.seed, "Master seed")->capture_default_str();
  gw->add_option("--tree-depth", gwa.tree_depth, "Also sample one GW_* tree of this depth");
  add_format(gw, gwa.format);

  CensusArgs cen;
  auto* cens = app.add_subcommand("census", "Neighbourhood census of a Tanner graph");
  cens->add_option("--input", cen.input, "Matrix file");
  cens->add_option("--n", cen.n, "Generate M_n(r, s) with n vertices instead");
  cens->add_option("--k", cen.k, "Top dimension")->capture_default_str();
  cens->add_option("--r", cen.r, "Window start")->capture_default_str();
  cens->add_option("--s", cen.s, "Window end")->capture_default_str();
  cens->add_option("--radius", cen.radius, "Even radius <= 6")->capture_default_str();
  cens->add_option("--gw-samples", cen.gw_samples, "Compare with this many GW_* trees");
  cens->add_option("--seed", cen.seed, "Master seed")->capture_default_str();
  add_format(cens, cen.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*limit) return run_limit(lim);
    if (*compare) return run_compare(cmp);
    if (*rank) return run_rank(rk);
    if (*gw) return run_gw(gwa);
    if (*cens) return run_census(cen);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const OracleScaleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
