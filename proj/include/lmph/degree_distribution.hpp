// Offspring / degree laws on the nonnegative integers, with probability
// generating functions f(nu, t) = sum_i nu_i t^i and size-biasing
// nu'_i = (i + 1) nu_{i+1} / mean(nu).
#pragma once

#include <random>
#include <string>
#include <variant>
#include <vector>

#include "lmph/rng.hpp"

namespace lmph {

class DegreeDistribution {
 public:
  enum class Kind { Poisson, Binomial, Dirac, Explicit };

  static DegreeDistribution poisson(double lambda);
  static DegreeDistribution binomial(int m, double q);
  static DegreeDistribution dirac(int m);
  /// Finitely supported pmf; must be nonnegative and sum to 1 within 1e-12.
  static DegreeDistribution explicit_pmf(std::vector<double> pmf);

  Kind kind() const noexcept { return kind_; }
  double lambda() const noexcept { return lambda_; }  // Poisson parameter
  int trials() const noexcept { return m_; }          // Binomial / Dirac m
  double success() const noexcept { return q_; }      // Binomial q
  const std::vector<double>& table() const noexcept { return pmf_; }  // Explicit

  double mean() const noexcept;
  double pmf(int i) const noexcept;
  /// f(nu, t); throws DomainError outside [0, 1].
  double pgf(double t) const;
  /// nu'; throws DomainError when the mean is zero.
  DegreeDistribution size_biased() const;
  std::string describe() const;

 private:
  Kind kind_ = Kind::Dirac;
  double lambda_ = 0.0;
  int m_ = 0;
  double q_ = 0.0;
  std::vector<double> pmf_;
};

/// Stateful sampler bound to one distribution (not thread-safe; one per thread).
class DegreeSampler {
 public:
  explicit DegreeSampler(const DegreeDistribution& law);
  int operator()(Rng& rng);

 private:
  std::variant<int, std::poisson_distribution<int>, std::binomial_distribution<int>,
               std::discrete_distribution<int>>
      impl_;
};

}  // namespace lmph
