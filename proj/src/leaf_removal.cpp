#include "lmph/leaf_removal.hpp"

#include <algorithm>

#include "lmph/errors.hpp"

namespace lmph {

std::vector<std::uint32_t> PeelResult::columns_at(int i) const {
  std::vector<std::uint32_t> out;
  for (std::size_t c = 0; c < column_level.size(); ++c) {
    if (column_level[c] > 0 && column_level[c] <= i) out.push_back(static_cast<std::uint32_t>(c));
  }
  return out;
}

std::vector<std::uint32_t> PeelResult::rows_at(int i) const {
  std::vector<std::uint32_t> out;
  for (std::size_t r = 0; r < row_level.size(); ++r) {
    if (row_level[r] > 0 && row_level[r] <= i) out.push_back(static_cast<std::uint32_t>(r));
  }
  return out;
}

PeelResult leaf_removal(const SparseSignMatrix& m, std::optional<int> max_rounds) {
  if (max_rounds && *max_rounds < 0) throw InvalidParameters("leaf_removal: max_rounds must be >= 0");
  const std::vector<SignLine> col_lines = m.col_lines();
  const std::vector<SignLine> row_lines = m.row_lines();
  PeelResult result;
  result.column_level.assign(m.cols(), 0);
  result.row_level.assign(m.rows(), 0);
  // outside[c] = number of neighbours of column c not yet in K.
  std::vector<std::size_t> outside(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) outside[c] = col_lines[c].size();

  for (int round = 1; !max_rounds || round <= *max_rounds; ++round) {
    std::vector<std::uint32_t> new_columns;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (result.column_level[c] == 0 && outside[c] <= 1) new_columns.push_back(static_cast<std::uint32_t>(c));
    }
    if (new_columns.empty()) break;
    for (std::uint32_t c : new_columns) result.column_level[c] = round;
    result.removed_columns += new_columns.size();
    std::vector<std::uint32_t> new_rows;
    for (std::uint32_t c : new_columns) {
      for (const auto& [r, v] : col_lines[c]) {
        if (result.row_level[r] == 0) {
          result.row_level[r] = round;
          new_rows.push_back(r);
        }
      }
    }
    for (std::uint32_t r : new_rows) {
      for (const auto& [c, v] : row_lines[r]) --outside[c];
    }
    result.removed_rank += new_rows.size();
    result.rounds = round;
  }

  std::vector<bool> keep_rows(m.rows());
  std::vector<bool> keep_cols(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) keep_rows[r] = result.row_level[r] == 0;
  for (std::size_t c = 0; c < m.cols(); ++c) keep_cols[c] = result.column_level[c] == 0;
  result.residual = m.submatrix(keep_rows, keep_cols);
  return result;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> peel_witnesses(const SparseSignMatrix& m,
                                                                     const PeelResult& peel) {
  const std::vector<SignLine> col_lines = m.col_lines();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> witnesses;
  std::vector<bool> claimed(m.rows(), false);
  // A row r entering K at level i is adjacent to a column c of L_i whose
  // neighbours outside K_{i-1} are exactly {r}. Scan columns by level.
  std::vector<std::uint32_t> order;
  for (std::size_t c = 0; c < m.cols(); ++c) if (peel.column_level[c] > 0) order.push_back(static_cast<std::uint32_t>(c));
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return peel.column_level[a] < peel.column_level[b];
  });
  for (std::uint32_t c : order) {
    const int level = peel.column_level[c];
    std::uint32_t candidate = UINT32_MAX;
    for (const auto& [r, v] : col_lines[c]) {
      const int rl = peel.row_level[r];
      if (rl == 0 || rl >= level) candidate = r;  // neighbour outside K_{level-1}
    }
    if (candidate != UINT32_MAX && !claimed[candidate]) {
      claimed[candidate] = true;
      witnesses.emplace_back(candidate, c);
    }
  }
  std::stable_sort(witnesses.begin(), witnesses.end(), [&](const auto& a, const auto& b) {
    return peel.row_level[a.first] < peel.row_level[b.first];
  });
  return witnesses;
}

std::size_t leaf_removal_transpose_bound(const SparseSignMatrix& m) {
  const std::size_t direct = leaf_removal(m).rank_upper_bound();
  const std::size_t transposed = leaf_removal(m.transpose()).rank_upper_bound();
  return std::min(direct, transposed);
}

}  // namespace lmph
