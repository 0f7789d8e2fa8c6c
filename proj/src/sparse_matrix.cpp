#include "lmph/sparse_matrix.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "lmph/errors.hpp"

namespace lmph {

namespace {

std::vector<Label> iota_labels(std::size_t count) {
  std::vector<Label> labels(count);
  std::iota(labels.begin(), labels.end(), Label{0});
  return labels;
}

}  // namespace

SparseSignMatrix::SparseSignMatrix(std::vector<Label> row_ids, std::vector<Label> col_ids,
                                   std::vector<SignEntry> entries)
    : row_ids_(std::move(row_ids)), col_ids_(std::move(col_ids)), entries_(std::move(entries)) {
  if (row_ids_.size() > UINT32_MAX || col_ids_.size() > UINT32_MAX) {
    throw InvalidParameters("SparseSignMatrix: dimension exceeds 32-bit index range");
  }
  for (const SignEntry& e : entries_) {
    if (e.row >= row_ids_.size() || e.col >= col_ids_.size()) {
      throw InvalidParameters("SparseSignMatrix: entry index out of range");
    }
    if (e.value != 1 && e.value != -1) {
      throw InvalidParameters("SparseSignMatrix: entries must be -1 or +1");
    }
  }
  std::sort(entries_.begin(), entries_.end(), [](const SignEntry& a, const SignEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].row == entries_[i - 1].row && entries_[i].col == entries_[i - 1].col) {
      throw InvalidParameters("SparseSignMatrix: duplicate entry (" +
                              std::to_string(entries_[i].row) + ", " +
                              std::to_string(entries_[i].col) + ")");
    }
  }
}

SparseSignMatrix::SparseSignMatrix(std::size_t rows, std::size_t cols,
                                   std::vector<SignEntry> entries)
    : SparseSignMatrix(iota_labels(rows), iota_labels(cols), std::move(entries)) {}

SparseSignMatrix SparseSignMatrix::from_dense(const std::vector<std::vector<int>>& dense) {
  const std::size_t rows = dense.size();
  const std::size_t cols = rows ? dense.front().size() : 0;
  std::vector<SignEntry> entries;
  for (std::size_t r = 0; r < rows; ++r) {
    if (dense[r].size() != cols) throw InvalidParameters("from_dense: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (dense[r][c] != 0) {
        entries.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c),
                           static_cast<std::int8_t>(dense[r][c])});
      }
    }
  }
  return SparseSignMatrix(rows, cols, std::move(entries));
}

std::vector<SignLine> SparseSignMatrix::row_lines() const {
  std::vector<SignLine> lines(rows());
  for (const SignEntry& e : entries_) lines[e.row].emplace_back(e.col, e.value);
  return lines;
}

std::vector<SignLine> SparseSignMatrix::col_lines() const {
  std::vector<SignLine> lines(cols());
  for (const SignEntry& e : entries_) lines[e.col].emplace_back(e.row, e.value);
  return lines;
}

SparseSignMatrix SparseSignMatrix::transpose() const {
  std::vector<SignEntry> entries;
  entries.reserve(entries_.size());
  for (const SignEntry& e : entries_) entries.push_back({e.col, e.row, e.value});
  return SparseSignMatrix(col_ids_, row_ids_, std::move(entries));
}

SparseSignMatrix SparseSignMatrix::submatrix(const std::vector<bool>& keep_rows,
                                             const std::vector<bool>& keep_cols) const {
  if (keep_rows.size() != rows() || keep_cols.size() != cols()) {
    throw InvalidParameters("submatrix: mask size mismatch");
  }
  constexpr std::uint32_t kDropped = UINT32_MAX;
  std::vector<std::uint32_t> row_map(rows(), kDropped);
  std::vector<std::uint32_t> col_map(cols(), kDropped);
  std::vector<Label> row_ids;
  std::vector<Label> col_ids;
  for (std::size_t r = 0; r < rows(); ++r) {
    if (keep_rows[r]) {
      row_map[r] = static_cast<std::uint32_t>(row_ids.size());
      row_ids.push_back(row_ids_[r]);
    }
  }
  for (std::size_t c = 0; c < cols(); ++c) {
    if (keep_cols[c]) {
      col_map[c] = static_cast<std::uint32_t>(col_ids.size());
      col_ids.push_back(col_ids_[c]);
    }
  }
  std::vector<SignEntry> entries;
  for (const SignEntry& e : entries_) {
    if (row_map[e.row] != kDropped && col_map[e.col] != kDropped) {
      entries.push_back({row_map[e.row], col_map[e.col], e.value});
    }
  }
  return SparseSignMatrix(std::move(row_ids), std::move(col_ids), std::move(entries));
}

std::vector<std::vector<int>> SparseSignMatrix::to_dense() const {
  std::vector<std::vector<int>> dense(rows(), std::vector<int>(cols(), 0));
  for (const SignEntry& e : entries_) dense[e.row][e.col] = e.value;
  return dense;
}

void write_matrix(std::ostream& os, const SparseSignMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (const SignEntry& e : m.entries()) {
    os << e.row << ' ' << e.col << ' ' << static_cast<int>(e.value) << '\n';
  }
}

SparseSignMatrix read_matrix(std::istream& is) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(is, out)) {
      const auto first = out.find_first_not_of(" \t\r");
      if (first != std::string::npos && out[first] != '#') return true;
    }
    return false;
  };
  if (!next_line(line)) throw ParseError("matrix file: missing header");
  long long rows = -1;
  long long cols = -1;
  {
    std::istringstream header(line);
    if (!(header >> rows >> cols) || rows < 0 || cols < 0) {
      throw ParseError("matrix file: header must be 'rows cols'");
    }
  }
  std::vector<SignEntry> entries;
  std::size_t line_no = 1;
  while (next_line(line)) {
    ++line_no;
    std::istringstream fields(line);
    long long r = -1;
    long long c = -1;
    long long v = 0;
    std::string extra;
    if (!(fields >> r >> c >> v) || (fields >> extra)) {
      throw ParseError("matrix file: bad triplet on data line " + std::to_string(line_no));
    }
    if (r < 0 || r >= rows || c < 0 || c >= cols) {
      throw ParseError("matrix file: index out of range on data line " + std::to_string(line_no));
    }
    if (v != 1 && v != -1) {
      throw ParseError("matrix file: value must be -1 or 1 on data line " + std::to_string(line_no));
    }
    entries.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c),
                       static_cast<std::int8_t>(v)});
  }
  try {
    return SparseSignMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                            std::move(entries));
  } catch (const InvalidParameters& e) {
    throw ParseError(std::string("matrix file: ") + e.what());
  }
}

}  // namespace lmph
