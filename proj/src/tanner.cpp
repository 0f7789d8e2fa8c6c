#include "lmph/tanner.hpp"

#include <algorithm>

#include "lmph/errors.hpp"

namespace lmph {

TannerGraph::TannerGraph(const SparseSignMatrix& m) : rows_(m.rows()), cols_(m.cols()) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(m.nnz());
  for (const SignEntry& e : m.entries()) edges.emplace_back(e.row, e.col);
  build(edges);
}

TannerGraph::TannerGraph(std::size_t rows, std::size_t cols,
                         const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges)
    : rows_(rows), cols_(cols) {
  for (const auto& [r, c] : edges) {
    if (r >= rows || c >= cols) throw InvalidParameters("TannerGraph: edge endpoint out of range");
  }
  build(edges);
}

void TannerGraph::build(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  const std::size_t n = rows_ + cols_;
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [r, c] : edges) {
    ++degree[r];
    ++degree[rows_ + c];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.assign(offsets_[n], 0);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [r, c] : edges) {
    const auto cv = static_cast<std::uint32_t>(rows_ + c);
    adjacency_[fill[r]++] = cv;
    adjacency_[fill[cv]++] = r;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }
}

std::vector<std::uint32_t> TannerGraph::column_vertices() const {
  std::vector<std::uint32_t> out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = static_cast<std::uint32_t>(rows_ + c);
  return out;
}

TannerGraph tanner(const SparseSignMatrix& m) { return TannerGraph(m); }

}  // namespace lmph
