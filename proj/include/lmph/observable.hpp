// Observables f(r, s) on the closed half-plane {0 <= r <= s}, written in a
// small expression language, and their integrals against verbose diagrams
// and against the limiting measure.
//
// Grammar (whitespace ignored):
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' integer)?
//   primary := number | 'r' | 's' | 'l' | '(' expr ')'
//            | 'exp' '(' expr ')' | 'min' '(' expr ',' number ')'
// where l = s - r. The argument of exp must be -a * v for a constant a >= 0
// and a variable v (so the primitive is bounded); min caps an expression by a
// constant. Every accepted observable is continuous and polynomially bounded.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lmph/persistence.hpp"

namespace lmph {

class Observable {
 public:
  /// Throws ParseError for text outside the language.
  static Observable parse(std::string_view text);

  double operator()(double r, double s) const;
  const std::string& text() const noexcept { return text_; }
  /// Exponent d with |f(r, s)| = O(1 + s^d) on the half-plane.
  int growth_degree() const noexcept { return degree_; }

  enum class Op { Number, VarR, VarS, VarL, Add, Sub, Mul, Neg, Pow, Exp, Min };
  struct Node {
    Op op = Op::Number;
    double value = 0.0;  // Number constant, Min cap
    int power = 0;       // Pow exponent
    int left = -1;
    int right = -1;
  };

 private:
  double eval(int node, double r, double s) const;

  std::string text_;
  std::vector<Node> nodes_;
  int root_ = -1;
  int degree_ = 0;
  friend class ObservableParser;
};

/// Exact weighted sum over the atoms: sum mult * f(b, d) / normalizer.
double observable_integral(const VerboseDiagram& d, const Observable& f);

struct LimitIntegral {
  double value = 0.0;
  double step = 0.0;     // finest grid step used
  double cutoff = 0.0;   // integration box [0, cutoff]^2
  double tail_bound = 0.0;  // lambda_{1,U} (1 + U)^d: crude bound on the neglected part
  bool converged = false;
};

/// Integral of f against the limiting verbose diagram of degree k-1.
/// Cell masses come from second differences of the limiting CDF on dyadic
/// grids (the diagonal line mass is split off and integrated separately);
/// successive Richardson-extrapolated estimates are compared until they
/// differ by less than `tol`.
LimitIntegral limit_observable_integral(int k, const Observable& f, double tol = 1e-4);

}  // namespace lmph
