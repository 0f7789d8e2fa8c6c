// Exact rank over prime fields F_p (p < 2^62) and over the rationals.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lmph/combinatorics.hpp"
#include "lmph/sparse_matrix.hpp"

namespace lmph {

inline constexpr std::uint64_t kPrimaryPrime = (std::uint64_t{1} << 61) - 1;
inline constexpr std::uint64_t kConfirmPrime = (std::uint64_t{1} << 31) - 1;
/// Largest short side accepted by rank_exact_small.
inline constexpr std::size_t kRationalOracleLimit = 60;

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime(std::uint64_t p) noexcept;

/// Arithmetic in Z/pZ for an odd prime p < 2^62.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);
  std::uint64_t prime() const noexcept { return p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return static_cast<std::uint64_t>(static_cast<UInt128>(a) * b % p_);
  }
  std::uint64_t inv(std::uint64_t a) const;  // throws on a == 0
  /// Image of a signed small integer.
  std::uint64_t from_int(std::int64_t v) const noexcept;

 private:
  std::uint64_t p_;
};

/// Sparse vector over F_p: (coordinate, nonzero value), sorted by coordinate.
using SparseVec = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

/// a - factor * b for sparse vectors sorted by coordinate.
SparseVec sparse_axpy(const PrimeField& field, const SparseVec& a, std::uint64_t factor,
                      const SparseVec& b);

/// Incrementally built row-echelon basis. Each stored vector has a distinct
/// leading (smallest) coordinate and is normalized to leading value 1.
class EchelonBasis {
 public:
  EchelonBasis(std::uint64_t p, std::size_t dimension);

  /// Reduces v against the basis until its leading coordinate is not a pivot
  /// (or v vanishes). The result is v minus an element of the span.
  SparseVec reduce(SparseVec v) const;
  /// Fully reduced form: no coordinate of the result is a pivot.
  SparseVec reduce_fully(SparseVec v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  /// Inserts v; returns true if it was independent of the span.
  bool insert(SparseVec v);

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t dimension() const noexcept { return pivot_of_.size(); }
  const PrimeField& field() const noexcept { return field_; }
  /// Stored (normalized) basis vectors in insertion order.
  const std::vector<SparseVec>& vectors() const noexcept { return rows_; }

 private:
  PrimeField field_;
  std::vector<std::int64_t> pivot_of_;  // coordinate -> index into rows_, or -1
  std::vector<SparseVec> rows_;
};

/// Sparse vector over F_p with the given sign entries.
SparseVec to_field_vector(const SignLine& line, const PrimeField& field);

/// Rank over F_p by singleton peeling followed by sparse elimination with
/// minimum-degree ordering.
std::size_t rank_mod_p(const SparseSignMatrix& m, std::uint64_t p = kPrimaryPrime);

/// Rank over the rationals by fraction-exact elimination. Throws
/// OracleScaleError when min(rows, cols) exceeds kRationalOracleLimit.
std::size_t rank_exact_small(const SparseSignMatrix& m);

/// Rank computed modulo both kPrimaryPrime and kConfirmPrime; throws
/// InvariantViolation if they disagree.
std::size_t rank_checked(const SparseSignMatrix& m);

}  // namespace lmph
