// Closed-form limits for the Linial-Meshulam persistence diagram and for the
// rank of sparse random matrices with Galton-Watson local structure.
//
// Central objects, for q in (0, 1], c >= 0, t in [0, 1] and u = 1 - q t:
//   Lambda_{q,c}(t) = exp(-c u^k) - c / (q (k+1)) * (1 - u^{k+1} - q (k+1) t u^k)
//   phi_{q,c}(t)    = exp(-c u^k) - t          (fixed-point residual)
//   Psi_q(t)        = -log(t) / u^k            (phi > 0  <=>  c < Psi_q(t))
//   lambda_{q,c}    = max_{[0,1]} Lambda_{q,c} = max(Lambda(alpha), Lambda(alpha'))
// where alpha <= alpha' are the extreme roots of phi.
//
// The scalar type is a template parameter so the same code runs in double and
// in extended precision (boost::multiprecision) for cross-checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "lmph/degree_distribution.hpp"
#include "lmph/errors.hpp"

namespace lmph {

template <class Real>
Real int_pow(Real x, int e) {
  Real result = 1;
  for (int i = 0; i < e; ++i) result *= x;
  return result;
}

template <class Real>
Real lambda_qc_curve(int k, Real q, Real c, Real t) {
  using std::exp;
  const Real u = Real(1) - q * t;
  const Real uk = int_pow(u, k);
  return exp(-c * uk) - c / (q * Real(k + 1)) * (Real(1) - u * uk - q * Real(k + 1) * t * uk);
}

template <class Real>
Real phi_qc(int k, Real q, Real c, Real t) {
  using std::exp;
  return exp(-c * int_pow(Real(1) - q * t, k)) - t;
}

/// Psi_q(t) = -log t / (1 - q t)^k on (0, 1] (infinite at t = 0 and where u = 0).
template <class Real>
Real psi_qc(int k, Real q, Real t) {
  using std::log;
  const Real uk = int_pow(Real(1) - q * t, k);
  if (t <= 0 || uk <= 0) return std::numeric_limits<Real>::infinity();
  return -log(t) / uk;
}

/// First-order proxy Phi_{q,c}(t) = 1 - c u^k - c/(q(k+1)) (1 - u^{k+1} - q(k+1) t u^k).
template <class Real>
Real phi_approx_qc(int k, Real q, Real c, Real t) {
  const Real u = Real(1) - q * t;
  const Real uk = int_pow(u, k);
  return Real(1) - c * uk - c / (q * Real(k + 1)) * (Real(1) - u * uk - q * Real(k + 1) * t * uk);
}

template <class Real>
struct FixedPointReport {
  std::vector<Real> roots;      // sorted, deduplicated
  std::vector<Real> residuals;  // |phi(root)|
  Real alpha = 0;               // smallest root
  Real alpha_prime = 0;         // largest root
};

/// Bracketing grid on [0, 1]: 10^4 uniform steps plus geometric refinement
/// towards both endpoints (down to the type's resolution).
template <class Real>
std::vector<Real> bracketing_grid(int uniform_points = 10000) {
  std::vector<Real> grid;
  grid.reserve(static_cast<std::size_t>(uniform_points) + 200);
  for (int i = 0; i <= uniform_points; ++i) grid.push_back(Real(i) / Real(uniform_points));
  const Real h = Real(1) / Real(uniform_points);
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (Real delta = h / 10; delta > eps * 4; delta /= 10) {
    grid.push_back(delta);
    grid.push_back(Real(1) - delta);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

namespace detail {

/// Roots of a function on [0, 1] given by its sign pattern `sign(t)` on the
/// grid; each sign change is refined by bisection on `sign` until the
/// bracket cannot shrink. Exact zeros on the grid are kept as roots.
template <class Real, class SignFn>
std::vector<Real> grid_roots(const std::vector<Real>& grid, const std::vector<int>& signs, SignFn&& sign) {
  std::vector<Real> roots;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (signs[i] == 0) roots.push_back(grid[i]);
    if (i + 1 < grid.size() && signs[i] * signs[i + 1] < 0) {
      Real lo = grid[i];
      Real hi = grid[i + 1];
      const int lo_sign = signs[i];
      for (int iter = 0; iter < 400; ++iter) {
        const Real mid = (lo + hi) / 2;
        if (!(mid > lo && mid < hi)) break;
        const int s = sign(mid);
        if (s == 0) {
          lo = hi = mid;
          break;
        }
        (s == lo_sign ? lo : hi) = mid;
      }
      roots.push_back((lo + hi) / 2);
    }
  }
  return roots;
}

template <class Real>
int sign_of(const Real& x) {
  return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

/// Sorts, deduplicates at 1e-9 keeping the smallest residual, and fills the report.
template <class Real, class Residual>
FixedPointReport<Real> finish_report(std::vector<Real> roots, Residual&& residual) {
  using std::abs;
  std::sort(roots.begin(), roots.end());
  FixedPointReport<Real> report;
  for (const Real& r : roots) {
    const Real res = abs(residual(r));
    if (!report.roots.empty() && r - report.roots.back() <= Real(1e-9)) {
      if (res < report.residuals.back()) {
        report.roots.back() = r;
        report.residuals.back() = res;
      }
      continue;
    }
    report.roots.push_back(r);
    report.residuals.push_back(res);
  }
  if (report.roots.empty()) throw InvariantViolation("fixed_points: no root found in [0, 1]");
  report.alpha = report.roots.front();
  report.alpha_prime = report.roots.back();
  return report;
}

}  // namespace detail

/// Fixed points of t = exp(-c (1 - q t)^k), with the per-(k, q) grid data
/// cached so that many values of c can be solved cheaply. Sign tests use the
/// equivalent form  phi > 0  <=>  -c (1 - q t)^k - log t > 0.
template <class Real>
class QcFixedPointSolver {
 public:
  /// `uniform_points` sets the bracketing grid resolution; coarser grids are
  /// faster but may merge two roots closer than the grid spacing.
  QcFixedPointSolver(int k, Real q, int uniform_points = 10000)
      : k_(k), q_(q), grid_(bracketing_grid<Real>(uniform_points)) {
    using std::log;
    if (k < 1) throw InvalidParameters("fixed_points: k must be >= 1");
    if (!(q > 0 && q <= 1)) throw InvalidParameters("fixed_points: q must lie in (0, 1]");
    weight_.reserve(grid_.size());
    log_t_.reserve(grid_.size());
    for (const Real& t : grid_) {
      weight_.push_back(int_pow(Real(1) - q * t, k));
      log_t_.push_back(t > 0 ? Real(log(t)) : -std::numeric_limits<Real>::infinity());
    }
  }

  FixedPointReport<Real> solve(Real c) const {
    if (!(c >= 0)) throw InvalidParameters("fixed_points: c must be >= 0");
    std::vector<int> signs(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      signs[i] = detail::sign_of(Real(-c * weight_[i] - log_t_[i]));
    }
    auto sign = [&](const Real& t) {
      using std::log;
      return detail::sign_of(Real(-c * int_pow(Real(1) - q_ * t, k_) - log(t)));
    };
    std::vector<Real> roots = detail::grid_roots(grid_, signs, sign);
    if (q_ == 1) roots.push_back(Real(1));  // phi(1) = 0 exactly
    return detail::finish_report(std::move(roots), [&](const Real& t) { return phi_qc(k_, q_, c, t); });
  }

  int k() const noexcept { return k_; }
  Real q() const { return q_; }

 private:
  int k_;
  Real q_;
  std::vector<Real> grid_;
  std::vector<Real> weight_;
  std::vector<Real> log_t_;
};

template <class Real>
FixedPointReport<Real> fixed_points(int k, Real q, Real c) {
  return QcFixedPointSolver<Real>(k, q).solve(c);
}

/// lambda_{q,c} = max(Lambda(alpha), Lambda(alpha')) from a solved report.
template <class Real>
Real lambda_from_report(int k, Real q, Real c, const FixedPointReport<Real>& report) {
  using std::max;
  if (c == 0) return Real(1);
  return max(lambda_qc_curve(k, q, c, report.alpha), lambda_qc_curve(k, q, c, report.alpha_prime));
}

template <class Real>
Real lambda_qc(int k, Real q, Real c) {
  if (c == 0) return Real(1);
  return lambda_from_report(k, q, c, fixed_points(k, q, c));
}

template <class Real>
struct GridMax {
  Real argmax = 0;
  Real value = 0;
};

/// Maximum of f on [lo, hi]: dense uniform grid, then golden-section
/// refinement inside the bracket of every discrete local maximum.
template <class Real, class F>
GridMax<Real> dense_grid_max(F&& f, Real lo, Real hi, int points = 10001) {
  using std::abs;
  std::vector<Real> xs(static_cast<std::size_t>(points));
  std::vector<Real> ys(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * Real(i) / Real(points - 1);
    ys[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
  }
  GridMax<Real> best{xs[0], ys[0]};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ys[i] > best.value) best = {xs[i], ys[i]};
  }
  const Real inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const bool left_ok = i == 0 || ys[i] >= ys[i - 1];
    const bool right_ok = i + 1 == xs.size() || ys[i] >= ys[i + 1];
    if (!(left_ok && right_ok)) continue;
    Real a = i == 0 ? xs[i] : xs[i - 1];
    Real b = i + 1 == xs.size() ? xs[i] : xs[i + 1];
    Real c = b - inv_phi * (b - a);
    Real d = a + inv_phi * (b - a);
    Real fc = f(c);
    Real fd = f(d);
    for (int iter = 0; iter < 200 && abs(b - a) > Real(1e-15) * (Real(1) + abs(a)); ++iter) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = f(d);
      }
    }
    for (const auto& [x, y] : {std::pair{c, fc}, std::pair{d, fd}}) {
      if (y > best.value) best = {x, y};
    }
  }
  return best;
}

// ---- double-precision conveniences -------------------------------------

/// beta-hat^{r,s}: lambda_{1,s} - e^{-r} lambda_{e^{-r}, s-r} for r < s, and
/// lambda_{1,s} - e^{-r} for r >= s.
double beta_hat(int k, double r, double s);
/// Limiting verbose-diagram CDF f(r, s) = 1 - e^{-r} - beta-hat^{r,s}.
/// Values within 1e-9 outside [0, 1] are clamped; larger excursions throw.
double xi_hat_cdf(int k, double r, double s);

/// (1 - (1 - e^{-x})^{k+1}) / (k+1): density of the limiting diagonal mass.
double diagonal_density(int k, double x);
/// Integral of diagonal_density over [a, b] (b may be +infinity).
double diagonal_mass(int k, double a, double b);
/// (1/(k+1)) sum_{j=1}^{k+1} 1/j: total limiting diagonal mass.
double diagonal_total(int k);
/// Expected promoting count divided by C(n-1, k) at finite n:
/// (1/(k+1)) int_0^n [1 - (1 - (1 - x/n)^{n-k-1})^{k+1}] dx.
double promoting_expectation(int n, int k);

/// c t (1-t)^k + c/(k+1) (1-t)^{k+1} - (1-t): the Betti-number functional of
/// the complex with complete (k-1)-skeleton, evaluated at a fixed point t.
double lp_maximand(int k, double c, double t);
/// Normalized limiting Betti number: max of lp_maximand over the fixed points of
/// t = exp(-c (1-t)^k).
double lp_betti_limit(int k, double c);
/// Threshold c* above which lp_betti_limit becomes positive.
double lp_critical(int k);

/// Lambda(t) = f(mu, 1 - f(nu', 1-t)) - (mean mu / mean nu)(1 - f(nu, 1-t) - mean(nu) t f(nu', 1-t)).
double lambda_general(const DegreeDistribution& mu, const DegreeDistribution& nu, double t);
/// Roots of t = f(mu', 1 - f(nu', 1 - t)) in [0, 1].
FixedPointReport<double> fixed_points_general(const DegreeDistribution& mu, const DegreeDistribution& nu);

struct RankLimit {
  double value = 0.0;       // 1 - max(Lambda(alpha), Lambda(alpha'))
  double alpha = 0.0;
  double alpha_prime = 0.0;
  double lambda_at_fixed_points = 1.0;
  double grid_max = 1.0;    // max of Lambda on a dense grid
  bool hypothesis_holds = true;  // grid_max <= lambda_at_fixed_points + 1e-9
};

/// Limiting rank / #columns for matrices whose Tanner graph converges locally
/// to GW_*(mu, nu) (mu: column degrees, nu: row degrees).
RankLimit rank_limit(const DegreeDistribution& mu, const DegreeDistribution& nu);

}  // namespace lmph
