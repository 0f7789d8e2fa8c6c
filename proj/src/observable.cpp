#include "lmph/observable.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "lmph/errors.hpp"
#include "lmph/limits.hpp"

namespace lmph {

class ObservableParser {
 public:
  explicit ObservableParser(std::string_view text) : text_(text) {}

  Observable run() {
    Observable out;
    out.text_ = std::string(text_);
    obs_ = &out;
    out.root_ = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    out.degree_ = degree(out.root_);
    return out;
  }

 private:
  using Op = Observable::Op;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("observable: " + what + " at position " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool accept_word(std::string_view word) {
    skip();
    if (text_.substr(pos_, word.size()) != word) return false;
    const std::size_t end = pos_ + word.size();
    if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
    pos_ = end;
    return true;
  }

  int add(Observable::Node node) {
    obs_->nodes_.push_back(node);
    return static_cast<int>(obs_->nodes_.size()) - 1;
  }

  double number() {
    skip();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected a number");
    if (!std::isfinite(value)) fail("number out of range");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  int expr() {
    int node = term();
    while (true) {
      if (accept('+')) {
        node = add({Op::Add, 0.0, 0, node, term()});
      } else if (accept('-')) {
        node = add({Op::Sub, 0.0, 0, node, term()});
      } else {
        return node;
      }
    }
  }

  int term() {
    int node = unary();
    while (accept('*')) node = add({Op::Mul, 0.0, 0, node, unary()});
    return node;
  }

  int unary() {
    if (accept('-')) return add({Op::Neg, 0.0, 0, unary(), -1});
    return power();
  }

  int power() {
    const int base = primary();
    if (!accept('^')) return base;
    const double e = number();
    if (e < 0 || e != std::floor(e) || e > 64) fail("exponent must be an integer in [0, 64]");
    return add({Op::Pow, 0.0, static_cast<int>(e), base, -1});
  }

  int primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      const int node = expr();
      expect(')');
      return node;
    }
    if (accept_word("exp")) {
      expect('(');
      const int arg = expr();
      expect(')');
      if (!bounded_exponent(arg)) fail("exp argument must have the form -a*v with a >= 0 and v in {r, s, l}");
      return add({Op::Exp, 0.0, 0, arg, -1});
    }
    if (accept_word("min")) {
      expect('(');
      const int arg = expr();
      expect(',');
      const double cap = number();
      expect(')');
      return add({Op::Min, cap, 0, arg, -1});
    }
    if (accept_word("r")) return add({Op::VarR});
    if (accept_word("s")) return add({Op::VarS});
    if (accept_word("l")) return add({Op::VarL});
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return add({Op::Number, number()});
    fail("unexpected character");
  }

  bool is_var(int node) const {
    const Op op = obs_->nodes_[static_cast<std::size_t>(node)].op;
    return op == Op::VarR || op == Op::VarS || op == Op::VarL;
  }

  /// Sign-tracked match of c * v (c constant) against the forms
  /// -v, -(a*v), -a*v, (-a)*v, a*(-v), v*(-a), ... ; returns the coefficient.
  bool linear_monomial(int node, double& coefficient) const {
    const auto& n = obs_->nodes_[static_cast<std::size_t>(node)];
    if (is_var(node)) {
      coefficient = 1.0;
      return true;
    }
    if (n.op == Op::Neg) {
      double inner = 0.0;
      if (!linear_monomial(n.left, inner)) return false;
      coefficient = -inner;
      return true;
    }
    if (n.op == Op::Mul) {
      double constant = 0.0;
      double inner = 0.0;
      if (constant_value(n.left, constant) && linear_monomial(n.right, inner)) {
        coefficient = constant * inner;
        return true;
      }
      if (constant_value(n.right, constant) && linear_monomial(n.left, inner)) {
        coefficient = constant * inner;
        return true;
      }
    }
    return false;
  }

  bool constant_value(int node, double& value) const {
    const auto& n = obs_->nodes_[static_cast<std::size_t>(node)];
    if (n.op == Op::Number) {
      value = n.value;
      return true;
    }
    if (n.op == Op::Neg && constant_value(n.left, value)) {
      value = -value;
      return true;
    }
    return false;
  }

  bool bounded_exponent(int node) const {
    double coefficient = 0.0;
    return linear_monomial(node, coefficient) && coefficient <= 0.0;
  }

  int degree(int node) const {
    const auto& n = obs_->nodes_[static_cast<std::size_t>(node)];
    switch (n.op) {
      case Op::Number: return 0;
      case Op::VarR:
      case Op::VarS:
      case Op::VarL: return 1;
      case Op::Add:
      case Op::Sub: return std::max(degree(n.left), degree(n.right));
      case Op::Mul: return degree(n.left) + degree(n.right);
      case Op::Neg: return degree(n.left);
      case Op::Pow: return degree(n.left) * n.power;
      case Op::Exp: return 0;
      case Op::Min: return degree(n.left);
    }
    return 0;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Observable* obs_ = nullptr;
};

Observable Observable::parse(std::string_view text) { return ObservableParser(text).run(); }

double Observable::operator()(double r, double s) const { return eval(root_, r, s); }

double Observable::eval(int node, double r, double s) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  switch (n.op) {
    case Op::Number: return n.value;
    case Op::VarR: return r;
    case Op::VarS: return s;
    case Op::VarL: return s - r;
    case Op::Add: return eval(n.left, r, s) + eval(n.right, r, s);
    case Op::Sub: return eval(n.left, r, s) - eval(n.right, r, s);
    case Op::Mul: return eval(n.left, r, s) * eval(n.right, r, s);
    case Op::Neg: return -eval(n.left, r, s);
    case Op::Pow: return int_pow(eval(n.left, r, s), n.power);
    case Op::Exp: return std::exp(eval(n.left, r, s));
    case Op::Min: return std::min(eval(n.left, r, s), n.value);
  }
  return 0.0;
}

double observable_integral(const VerboseDiagram& d, const Observable& f) {
  double sum = 0.0;
  for (const Atom& a : d.atoms()) sum += static_cast<double>(a.multiplicity) * f(a.birth, a.death);
  return sum / static_cast<double>(d.normalizer());
}

namespace {

/// Grid resolution for the fixed-point solves inside the integrator; only
/// the extreme roots matter for lambda, so a coarse bracketing grid suffices.
constexpr int kIntegratorGrid = 1000;
constexpr int kFirstLevel = 2;  // h = 1/4
constexpr int kLastLevel = 7;   // h = 1/128

/// Midpoint-type estimate of the integral on the grid x_i = i h, i <= N.
///
/// With q = e^{-r}, the CDF splits as F(r, s) = a(r) + b(s) + G(r, s) with
/// G(r, s) = q * lambda_{q, s-r} for r <= s, so second differences of F over
/// cells above the diagonal are second differences of G alone, and the
/// mass of a diagonal cell [x_i, x_{i+1}]^2 is e^{-x_i} - G(x_i, x_{i+1}).
double grid_estimate(int k, const Observable& f, double h, std::size_t cells) {
  std::vector<double> prev;  // G(x_i, x_j) for j >= i of the previous row
  std::vector<double> row;
  double total = 0.0;
  for (std::size_t i = 0; i <= cells; ++i) {
    const double r = static_cast<double>(i) * h;
    const double q = std::exp(-r);
    const QcFixedPointSolver<double> solver(k, q, kIntegratorGrid);
    row.assign(cells + 1 - i, 0.0);
    row[0] = q;
    for (std::size_t j = 1; j < row.size(); ++j) {
      const double c = static_cast<double>(j) * h;
      row[j] = q * lambda_from_report(k, q, c, solver.solve(c));
    }
    if (i > 0) {
      // Row of cells [x_{i-1}, x_i] x [x_j, x_{j+1}]; prev is indexed from i-1.
      const double r0 = r - h;
      const double diag = diagonal_mass(k, r0, r);
      const double cell = prev[0] - prev[1];
      total += diag * f(r0 + h / 2, r0 + h / 2);
      total += (cell - diag) * f(r0 + h / 3, r0 + 2 * h / 3);
      for (std::size_t j = i; j < cells; ++j) {
        const std::size_t a = j - (i - 1);  // offset in prev
        const std::size_t b = j - i;        // offset in row
        const double mass = row[b + 1] - prev[a + 1] - row[b] + prev[a];
        total += mass * f(r0 + h / 2, static_cast<double>(j) * h + h / 2);
      }
    }
    prev.swap(row);
  }
  return total;
}

}  // namespace

LimitIntegral limit_observable_integral(int k, const Observable& f, double tol) {
  if (k < 1) throw InvalidParameters("limit_observable_integral: k must be >= 1");
  if (!(tol > 0.0)) throw InvalidParameters("limit_observable_integral: tol must be > 0");
  LimitIntegral out;
  // Mass outside [0, U]^2 is 1 - F(U, U) = lambda_{1,U}; pick U so that this
  // mass times the growth of f is far below the tolerance.
  const int d = f.growth_degree();
  double cutoff = 4.0;
  double tail = 1.0;
  while (true) {
    tail = lambda_qc(k, 1.0, cutoff) * std::pow(1.0 + cutoff, d);
    if (tail <= tol * 1e-2 || cutoff >= 200.0) break;
    cutoff += 1.0;
  }
  out.cutoff = cutoff;
  out.tail_bound = tail;
  double previous_estimate = 0.0;
  double previous_richardson = 0.0;
  for (int level = kFirstLevel; level <= kLastLevel; ++level) {
    const double h = std::ldexp(1.0, -level);
    const auto cells = static_cast<std::size_t>(std::ceil(cutoff / h));
    const double estimate = grid_estimate(k, f, h, cells);
    out.step = h;
    if (level > kFirstLevel) {
      const double richardson = (4.0 * estimate - previous_estimate) / 3.0;
      out.value = richardson;
      if (level > kFirstLevel + 1 && std::abs(richardson - previous_richardson) < tol) {
        out.converged = true;
        return out;
      }
      previous_richardson = richardson;
    } else {
      out.value = estimate;
    }
    previous_estimate = estimate;
  }
  return out;
}

}  // namespace lmph
