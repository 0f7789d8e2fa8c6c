#include "lmph/limits.hpp"

#include <cmath>
#include <string>

#include "lmph/quadrature.hpp"

namespace lmph {

namespace {

void check_k(int k) {
  if (k < 1) throw InvalidParameters("k must be >= 1");
}

}  // namespace

double beta_hat(int k, double r, double s) {
  check_k(k);
  if (!(r >= 0.0 && s >= 0.0)) throw InvalidParameters("beta_hat: r and s must be >= 0");
  const double lambda_s = lambda_qc(k, 1.0, s);
  const double q = std::exp(-r);
  if (r < s) return lambda_s - q * lambda_qc(k, q, s - r);
  return lambda_s - q;
}

double xi_hat_cdf(int k, double r, double s) {
  const double value = 1.0 - std::exp(-r) - beta_hat(k, r, s);
  if (value < -1e-9 || value > 1.0 + 1e-9) {
    throw InvariantViolation("xi_hat_cdf: value " + std::to_string(value) + " outside [0, 1] at (r, s) = (" +
                             std::to_string(r) + ", " + std::to_string(s) + ")");
  }
  return std::clamp(value, 0.0, 1.0);
}

double diagonal_density(int k, double x) {
  check_k(k);
  // 1 - (1 - e^{-x})^{k+1} computed without cancellation for large x.
  if (!(x >= 0.0)) throw InvalidParameters("diagonal_density: x must be >= 0");
  return -std::expm1((k + 1) * std::log1p(-std::exp(-x))) / (k + 1);
}

double diagonal_mass(int k, double a, double b) {
  check_k(k);
  if (!(a >= 0.0 && a <= b)) throw InvalidParameters("diagonal_mass: requires 0 <= a <= b");
  // density <= e^{-x}; beyond x = 34 the remaining mass is below 1e-14.
  constexpr double kCutoff = 34.0;
  const double upper = std::min(b, std::max(a, kCutoff));
  return piecewise_simpson([k](double x) { return diagonal_density(k, x); }, a, upper, 1e-12);
}

double diagonal_total(int k) {
  check_k(k);
  double harmonic = 0.0;
  for (int j = 1; j <= k + 1; ++j) harmonic += 1.0 / j;
  return harmonic / (k + 1);
}

double promoting_expectation(int n, int k) {
  check_k(k);
  if (n < k + 1) throw InvalidParameters("promoting_expectation: requires n >= k+1");
  const int e = n - k - 1;
  auto integrand = [n, k, e](double x) {
    const double inner = std::pow(1.0 - x / n, e);  // pow(., 0) == 1
    return 1.0 - std::pow(1.0 - inner, k + 1);
  };
  // integrand <= (k+1) exp(-x e / n); truncate where that bound is negligible.
  double upper = n;
  if (e > 0) upper = std::min<double>(n, static_cast<double>(n) / e * std::log((k + 1) / 1e-16));
  return piecewise_simpson(integrand, 0.0, upper, 1e-11) / (k + 1);
}

double lp_maximand(int k, double c, double t) {
  check_k(k);
  const double u = 1.0 - t;
  const double uk = std::pow(u, k);
  return c * t * uk + c / (k + 1) * u * uk - u;
}

double lp_betti_limit(int k, double c) {
  check_k(k);
  if (!(c >= 0.0)) throw InvalidParameters("lp_betti_limit: c must be >= 0");
  const FixedPointReport<double> report = fixed_points(k, 1.0, c);
  double best = -std::numeric_limits<double>::infinity();
  for (double t : report.roots) best = std::max(best, lp_maximand(k, c, t));
  return best;
}

double lp_critical(int k) {
  check_k(k);
  // Along the branch of smallest fixed points, parametrize by u = 1 - t:
  // c = Psi(u) = -log(1-u) / u^k, and the maximand at (c, t) becomes
  //   h(u) = L (1 - a u) - u,  L = -log(1-u),  a = k/(k+1),
  // whose series sum_{m>=2} u^m (1/m - a/(m-1)) avoids cancellation near u=0.
  const double a = static_cast<double>(k) / (k + 1);
  auto psi = [k](double u) { return -std::log1p(-u) / std::pow(u, k); };
  auto h = [a](double u) {
    if (u < 0.5) {
      double sum = 0.0;
      double power = u;
      for (int m = 2; m < 400; ++m) {
        power *= u;
        const double term = power * (1.0 / m - a / (m - 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) || power < 1e-300) break;
      }
      return sum;
    }
    const double L = -std::log1p(-u);
    return L * (1.0 - a * u) - u;
  };
  // Minimizer of Psi: the branch starts there (c = min Psi is the smallest c
  // with a fixed point below 1).
  constexpr double kLo = 1e-12;
  constexpr double kHi = 1.0 - 1e-12;
  const GridMax<double> min_psi = dense_grid_max([&](double u) { return -psi(u); }, kLo, kHi, 20001);
  const double u_min = min_psi.argmax;
  if (h(u_min) >= 0.0) return psi(u_min);
  double lo = u_min;  // h < 0
  double hi = kHi;    // h > 0 (h -> infinity as u -> 1)
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return psi(0.5 * (lo + hi));
}

double lambda_general(const DegreeDistribution& mu, const DegreeDistribution& nu, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("lambda_general: t must lie in [0, 1]");
  const double nu_bar = nu.mean();
  if (!(nu_bar > 0.0)) throw DomainError("lambda_general: mean of nu must be positive");
  const DegreeDistribution nu_prime = nu.size_biased();
  const double f_nu_prime = nu_prime.pgf(1.0 - t);
  return mu.pgf(1.0 - f_nu_prime) - mu.mean() / nu_bar * (1.0 - nu.pgf(1.0 - t) - nu_bar * t * f_nu_prime);
}

FixedPointReport<double> fixed_points_general(const DegreeDistribution& mu, const DegreeDistribution& nu) {
  if (!(mu.mean() > 0.0) || !(nu.mean() > 0.0)) {
    throw DomainError("fixed_points_general: both laws need positive mean");
  }
  const DegreeDistribution mu_prime = mu.size_biased();
  const DegreeDistribution nu_prime = nu.size_biased();
  auto phi = [&](double t) { return mu_prime.pgf(1.0 - nu_prime.pgf(1.0 - t)) - t; };
  const std::vector<double> grid = bracketing_grid<double>();
  std::vector<int> signs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) signs[i] = detail::sign_of(phi(grid[i]));
  std::vector<double> roots =
      detail::grid_roots(grid, signs, [&](double t) { return detail::sign_of(phi(t)); });
  // Roots within rounding of an endpoint (e.g. phi(1) = 1e-17) are snapped.
  for (double endpoint : {0.0, 1.0}) {
    if (std::abs(phi(endpoint)) <= 1e-14) roots.push_back(endpoint);
  }
  return detail::finish_report(std::move(roots), phi);
}

RankLimit rank_limit(const DegreeDistribution& mu, const DegreeDistribution& nu) {
  if (!(nu.mean() > 0.0)) throw DomainError("rank_limit: mean of nu must be positive");
  RankLimit result;
  if (mu.mean() == 0.0) return result;  // no edges: rank 0, Lambda == 1
  const FixedPointReport<double> report = fixed_points_general(mu, nu);
  result.alpha = report.alpha;
  result.alpha_prime = report.alpha_prime;
  result.lambda_at_fixed_points =
      std::max(lambda_general(mu, nu, report.alpha), lambda_general(mu, nu, report.alpha_prime));
  result.grid_max =
      dense_grid_max([&](double t) { return lambda_general(mu, nu, t); }, 0.0, 1.0, 10001).value;
  result.hypothesis_holds = result.grid_max <= result.lambda_at_fixed_points + 1e-9;
  result.value = 1.0 - result.lambda_at_fixed_points;
  return result;
}

}  // namespace lmph
