// Binomial coefficients and colexicographic ranking of fixed-size subsets.
//
// A j-subset {v_0 < v_1 < ... < v_{j-1}} of {0, ..., n-1} has colex rank
//   sum_i C(v_i, i + 1),
// which enumerates all j-subsets of {0..n-1} as 0..C(n,j)-1 and, crucially,
// does not depend on n: the j-subsets of {0..m-1} are exactly the ranks
// below C(m, j).
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lmph {

using Index = std::uint64_t;
/// 128-bit unsigned integer for overflow-free products of 64-bit values.
__extension__ using UInt128 = unsigned __int128;

/// Exact binomial coefficient; throws InvalidParameters on 64-bit overflow.
Index binomial(int n, int k);

/// Table of C(i, j) for 0 <= i <= max_n, 0 <= j <= max_k.
class BinomialTable {
 public:
  BinomialTable() = default;
  BinomialTable(int max_n, int max_k);

  Index operator()(int i, int j) const noexcept {
    if (j < 0 || i < 0 || j > i) return 0;
    return table_[static_cast<std::size_t>(i) * stride_ + static_cast<std::size_t>(j)];
  }
  int max_n() const noexcept { return max_n_; }
  int max_k() const noexcept { return max_k_; }

 private:
  int max_n_ = 0;
  int max_k_ = 0;
  std::size_t stride_ = 1;
  std::vector<Index> table_;
};

/// Colex rank of a strictly increasing, 0-based vertex list.
Index colex_rank(std::span<const int> vertices, const BinomialTable& binom) noexcept;

/// Inverse of colex_rank: writes the out.size() vertices (0-based, increasing)
/// of the subset with the given rank. Vertices are bounded by binom.max_n().
void colex_unrank(Index rank, std::span<int> out, const BinomialTable& binom);

/// Advance a 0-based increasing vertex list to its colex successor among
/// subsets of {0..n-1}. Returns false (leaving the list unspecified) when the
/// list was the last subset.
bool colex_next(std::span<int> vertices, int n) noexcept;

/// Colex ranks of the facets of a simplex, in the order "omit vertex i" for
/// i = 0..size-1 (so facet i carries boundary sign (-1)^i).
void facet_ranks(std::span<const int> vertices, const BinomialTable& binom,
                 std::span<Index> out) noexcept;

}  // namespace lmph
