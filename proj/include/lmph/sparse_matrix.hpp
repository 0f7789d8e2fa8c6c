// Sparse matrices with entries in {-1, 0, +1}, stored as triplets with
// positional row/column indices plus opaque 64-bit labels for each row and
// column (e.g. colex ranks of the faces they stand for).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace lmph {

using Label = std::uint64_t;

struct SignEntry {
  std::uint32_t row;
  std::uint32_t col;
  std::int8_t value;  // -1 or +1
};

/// One sparse line (row or column): (position, value) pairs.
using SignLine = std::vector<std::pair<std::uint32_t, std::int8_t>>;

class SparseSignMatrix {
 public:
  SparseSignMatrix() = default;
  /// Validates: entry indices in range, values in {-1,+1}, no duplicates.
  SparseSignMatrix(std::vector<Label> row_ids, std::vector<Label> col_ids,
                   std::vector<SignEntry> entries);
  /// Convenience: labels 0..rows-1 and 0..cols-1.
  SparseSignMatrix(std::size_t rows, std::size_t cols, std::vector<SignEntry> entries);
  /// Dense constructor for tests and small examples; zero entries dropped.
  static SparseSignMatrix from_dense(const std::vector<std::vector<int>>& dense);

  std::size_t rows() const noexcept { return row_ids_.size(); }
  std::size_t cols() const noexcept { return col_ids_.size(); }
  std::size_t nnz() const noexcept { return entries_.size(); }
  std::span<const Label> row_ids() const noexcept { return row_ids_; }
  std::span<const Label> col_ids() const noexcept { return col_ids_; }
  std::span<const SignEntry> entries() const noexcept { return entries_; }

  /// Per-row lists of (col, value), each sorted by column.
  std::vector<SignLine> row_lines() const;
  /// Per-column lists of (row, value), each sorted by row.
  std::vector<SignLine> col_lines() const;

  SparseSignMatrix transpose() const;
  /// Keeps rows/columns whose flag is true; positions are renumbered densely.
  SparseSignMatrix submatrix(const std::vector<bool>& keep_rows, const std::vector<bool>& keep_cols) const;
  std::vector<std::vector<int>> to_dense() const;

 private:
  std::vector<Label> row_ids_;
  std::vector<Label> col_ids_;
  std::vector<SignEntry> entries_;  // sorted by (row, col)
};

/// Text format: "rows cols" then one "r c v" line per entry (0-based, v = +-1).
void write_matrix(std::ostream& os, const SparseSignMatrix& m);
SparseSignMatrix read_matrix(std::istream& is);

}  // namespace lmph
