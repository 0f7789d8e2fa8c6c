#include "lmph/degree_distribution.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "lmph/errors.hpp"

namespace lmph {

DegreeDistribution DegreeDistribution::poisson(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidParameters("Poisson: lambda must be >= 0");
  DegreeDistribution d;
  d.kind_ = Kind::Poisson;
  d.lambda_ = lambda;
  return d;
}

DegreeDistribution DegreeDistribution::binomial(int m, double q) {
  if (m < 0) throw InvalidParameters("Binomial: m must be >= 0");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidParameters("Binomial: q must lie in [0, 1]");
  DegreeDistribution d;
  d.kind_ = Kind::Binomial;
  d.m_ = m;
  d.q_ = q;
  return d;
}

DegreeDistribution DegreeDistribution::dirac(int m) {
  if (m < 0) throw InvalidParameters("Dirac: m must be >= 0");
  DegreeDistribution d;
  d.kind_ = Kind::Dirac;
  d.m_ = m;
  return d;
}

DegreeDistribution DegreeDistribution::explicit_pmf(std::vector<double> pmf) {
  if (pmf.empty()) throw InvalidParameters("Explicit: pmf must be nonempty");
  double total = 0.0;
  for (double p : pmf) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidParameters("Explicit: probabilities must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidParameters("Explicit: probabilities must sum to 1");
  while (pmf.size() > 1 && pmf.back() == 0.0) pmf.pop_back();
  DegreeDistribution d;
  d.kind_ = Kind::Explicit;
  d.pmf_ = std::move(pmf);
  return d;
}

double DegreeDistribution::mean() const noexcept {
  switch (kind_) {
    case Kind::Poisson: return lambda_;
    case Kind::Binomial: return m_ * q_;
    case Kind::Dirac: return m_;
    case Kind::Explicit: {
      double m = 0.0;
      for (std::size_t i = 0; i < pmf_.size(); ++i) m += static_cast<double>(i) * pmf_[i];
      return m;
    }
  }
  return 0.0;
}

double DegreeDistribution::pmf(int i) const noexcept {
  if (i < 0) return 0.0;
  switch (kind_) {
    case Kind::Poisson:
      if (lambda_ == 0.0) return i == 0 ? 1.0 : 0.0;
      return std::exp(i * std::log(lambda_) - lambda_ - std::lgamma(i + 1.0));
    case Kind::Binomial: {
      if (i > m_) return 0.0;
      if (q_ == 0.0) return i == 0 ? 1.0 : 0.0;
      if (q_ == 1.0) return i == m_ ? 1.0 : 0.0;
      const double log_choose = std::lgamma(m_ + 1.0) - std::lgamma(i + 1.0) - std::lgamma(m_ - i + 1.0);
      return std::exp(log_choose + i * std::log(q_) + (m_ - i) * std::log1p(-q_));
    }
    case Kind::Dirac: return i == m_ ? 1.0 : 0.0;
    case Kind::Explicit: return static_cast<std::size_t>(i) < pmf_.size() ? pmf_[static_cast<std::size_t>(i)] : 0.0;
  }
  return 0.0;
}

double DegreeDistribution::pgf(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("pgf: argument must lie in [0, 1]");
  switch (kind_) {
    case Kind::Poisson: return std::exp(-lambda_ * (1.0 - t));
    case Kind::Binomial: return std::pow(1.0 - q_ + q_ * t, m_);
    case Kind::Dirac: return std::pow(t, m_);
    case Kind::Explicit: {
      double value = 0.0;
      for (auto it = pmf_.rbegin(); it != pmf_.rend(); ++it) value = value * t + *it;
      return value;
    }
  }
  return 0.0;
}

DegreeDistribution DegreeDistribution::size_biased() const {
  const double mu = mean();
  if (!(mu > 0.0)) throw DomainError("size_bias: undefined for a law with mean 0");
  switch (kind_) {
    case Kind::Poisson: return *this;
    case Kind::Binomial: return binomial(m_ - 1, q_);
    case Kind::Dirac: return dirac(m_ - 1);
    case Kind::Explicit: {
      std::vector<double> biased(pmf_.size() - 1);
      for (std::size_t i = 0; i + 1 < pmf_.size(); ++i) biased[i] = static_cast<double>(i + 1) * pmf_[i + 1] / mu;
      // Renormalize away rounding so the result passes validation.
      const double total = std::accumulate(biased.begin(), biased.end(), 0.0);
      for (double& p : biased) p /= total;
      return explicit_pmf(std::move(biased));
    }
  }
  return *this;
}

std::string DegreeDistribution::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Poisson: os << "Pois(" << lambda_ << ")"; break;
    case Kind::Binomial: os << "Bin(" << m_ << "," << q_ << ")"; break;
    case Kind::Dirac: os << "Dirac(" << m_ << ")"; break;
    case Kind::Explicit:
      os << "Explicit(";
      for (std::size_t i = 0; i < pmf_.size(); ++i) os << (i ? "," : "") << pmf_[i];
      os << ")";
      break;
  }
  return os.str();
}

DegreeSampler::DegreeSampler(const DegreeDistribution& law) {
  using Kind = DegreeDistribution::Kind;
  switch (law.kind()) {
    case Kind::Poisson:
      if (law.lambda() == 0.0) {
        impl_ = 0;
      } else {
        impl_ = std::poisson_distribution<int>(law.lambda());
      }
      break;
    case Kind::Binomial: impl_ = std::binomial_distribution<int>(law.trials(), law.success()); break;
    case Kind::Dirac: impl_ = law.trials(); break;
    case Kind::Explicit: impl_ = std::discrete_distribution<int>(law.table().begin(), law.table().end()); break;
  }
}

int DegreeSampler::operator()(Rng& rng) {
  return std::visit(
      [&rng](auto& impl) -> int {
        if constexpr (std::is_same_v<std::decay_t<decltype(impl)>, int>) {
          return impl;
        } else {
          return impl(rng);
        }
      },
      impl_);
}

}  // namespace lmph
