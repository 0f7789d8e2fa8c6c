// Karp-Sipser style leaf removal on the Tanner graph of a sparse matrix.
//
// With K_0 = {} the procedure alternates
//   L_i = columns with at most one neighbouring row outside K_{i-1},
//   K_i = rows adjacent to some column of L_i,
// until the sets stabilize. Every row of K_final has a witness column in L
// on which it is the last remaining row, which yields the exact identity
//   rank(M) = |K_final| + rank(M with K_final rows and L_final columns removed).
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lmph/sparse_matrix.hpp"

namespace lmph {

struct PeelResult {
  /// column_level[c] = first i with c in L_i, or 0 if c never enters L.
  std::vector<int> column_level;
  /// row_level[r] = first i with r in K_i, or 0 if r never enters K.
  std::vector<int> row_level;
  /// Number of rounds performed (the last index i at which L or K grew).
  int rounds = 0;
  /// M with K_final rows and L_final columns deleted.
  SparseSignMatrix residual;
  /// |K_final|.
  std::size_t removed_rank = 0;
  /// |L_final|.
  std::size_t removed_columns = 0;

  /// Columns of L_i (positions, increasing). i is clamped to `rounds`.
  std::vector<std::uint32_t> columns_at(int i) const;
  /// Rows of K_i (positions, increasing). i is clamped to `rounds`.
  std::vector<std::uint32_t> rows_at(int i) const;
  /// rank(M) <= |K_final| + (#columns - |L_final|).
  std::size_t rank_upper_bound() const noexcept {
    return removed_rank + (column_level.size() - removed_columns);
  }
};

/// Runs leaf removal for at most max_rounds rounds (unbounded when empty).
PeelResult leaf_removal(const SparseSignMatrix& m, std::optional<int> max_rounds = std::nullopt);

/// Pairs (row, witness column) for every row of K_final, in level order: the
/// witness is a column of L whose only neighbour outside the earlier-level
/// rows is this row. Witnesses are pairwise distinct.
std::vector<std::pair<std::uint32_t, std::uint32_t>> peel_witnesses(const SparseSignMatrix& m,
                                                                     const PeelResult& peel);

/// min(rank bound from peeling M, rank bound from peeling M^T).
std::size_t leaf_removal_transpose_bound(const SparseSignMatrix& m);

}  // namespace lmph
