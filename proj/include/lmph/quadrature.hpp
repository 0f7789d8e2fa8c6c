// Adaptive Simpson quadrature with Richardson correction.
#pragma once

#include <cmath>

namespace lmph {

namespace detail {

template <class F>
double simpson_step(F& f, double a, double fa, double b, double fb, double m, double fm, double whole,
                    double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Integral of f over [a, b] to absolute tolerance tol (adaptive Simpson).
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-10, int max_depth = 50) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

/// Adaptive Simpson applied on consecutive unit-length pieces of [a, b], which
/// guards against the coarse initial sampling missing localized mass.
template <class F>
double piecewise_simpson(F&& f, double a, double b, double tol = 1e-10) {
  double total = 0.0;
  const double pieces = std::ceil(b - a);
  const double per_piece_tol = tol / (pieces > 1.0 ? pieces : 1.0);
  for (double lo = a; lo < b; lo += 1.0) {
    total += adaptive_simpson(f, lo, std::fmin(lo + 1.0, b), per_piece_tol);
  }
  return total;
}

}  // namespace lmph
