// Bipartite support graph of a sparse matrix: row vertices 0..R-1, column
// vertices R..R+C-1, with r ~ c iff M(r, c) != 0.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lmph/sparse_matrix.hpp"

namespace lmph {

class TannerGraph {
 public:
  TannerGraph() = default;
  explicit TannerGraph(const SparseSignMatrix& m);
  /// Builds a graph from an explicit bipartite edge list (row, col).
  TannerGraph(std::size_t rows, std::size_t cols,
              const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

  std::size_t row_count() const noexcept { return rows_; }
  std::size_t col_count() const noexcept { return cols_; }
  std::size_t vertex_count() const noexcept { return rows_ + cols_; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }
  bool is_row(std::uint32_t v) const noexcept { return v < rows_; }
  std::uint32_t row_vertex(std::uint32_t r) const noexcept { return r; }
  std::uint32_t col_vertex(std::uint32_t c) const noexcept { return static_cast<std::uint32_t>(rows_) + c; }
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(std::uint32_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  /// All column vertices.
  std::vector<std::uint32_t> column_vertices() const;

 private:
  void build(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> adjacency_;
};

TannerGraph tanner(const SparseSignMatrix& m);

}  // namespace lmph
