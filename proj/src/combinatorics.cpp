#include "lmph/combinatorics.hpp"

#include <limits>
#include <string>

#include "lmph/errors.hpp"

namespace lmph {

Index binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  UInt128 value = 1;
  for (int i = 1; i <= k; ++i) {
    value = value * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (value > std::numeric_limits<Index>::max()) {
      throw InvalidParameters("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                              ") overflows 64 bits");
    }
  }
  return static_cast<Index>(value);
}

BinomialTable::BinomialTable(int max_n, int max_k)
    : max_n_(max_n), max_k_(max_k), stride_(static_cast<std::size_t>(max_k) + 1) {
  if (max_n < 0 || max_k < 0) throw InvalidParameters("BinomialTable: negative size");
  table_.assign((static_cast<std::size_t>(max_n) + 1) * stride_, 0);
  for (int i = 0; i <= max_n; ++i) {
    table_[static_cast<std::size_t>(i) * stride_] = 1;
    for (int j = 1; j <= std::min(i, max_k); ++j) {
      const Index a = table_[static_cast<std::size_t>(i - 1) * stride_ + static_cast<std::size_t>(j - 1)];
      const Index b = j <= i - 1 ? table_[static_cast<std::size_t>(i - 1) * stride_ + static_cast<std::size_t>(j)] : 0;
      if (a > std::numeric_limits<Index>::max() - b) {
        throw InvalidParameters("BinomialTable: overflow at C(" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
      }
      table_[static_cast<std::size_t>(i) * stride_ + static_cast<std::size_t>(j)] = a + b;
    }
  }
}

Index colex_rank(std::span<const int> vertices, const BinomialTable& binom) noexcept {
  Index rank = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    rank += binom(vertices[i], static_cast<int>(i) + 1);
  }
  return rank;
}

void colex_unrank(Index rank, std::span<int> out, const BinomialTable& binom) {
  const int size = static_cast<int>(out.size());
  if (size == 0) return;
  if (rank >= binom(binom.max_n(), size)) {
    throw InvalidParameters("colex_unrank: rank out of range");
  }
  int upper = binom.max_n();  // exclusive upper bound on the next vertex
  for (int i = size; i >= 1; --i) {
    // Largest v in [i-1, upper) with C(v, i) <= rank, by binary search.
    int lo = i - 1;
    int hi = upper - 1;
    while (lo < hi) {
      const int mid = lo + (hi - lo + 1) / 2;
      if (binom(mid, i) <= rank) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    out[static_cast<std::size_t>(i - 1)] = lo;
    rank -= binom(lo, i);
    upper = lo;
  }
}

bool colex_next(std::span<int> vertices, int n) noexcept {
  const std::size_t size = vertices.size();
  for (std::size_t i = 0; i < size; ++i) {
    const int limit = i + 1 < size ? vertices[i + 1] : n;
    if (vertices[i] + 1 < limit) {
      ++vertices[i];
      for (std::size_t j = 0; j < i; ++j) vertices[j] = static_cast<int>(j);
      return true;
    }
  }
  return false;
}

void facet_ranks(std::span<const int> vertices, const BinomialTable& binom,
                 std::span<Index> out) noexcept {
  const std::size_t size = vertices.size();
  // prefix[i] = sum_{j<i} C(v_j, j+1), suffix shifted: sum_{j>i} C(v_j, j)
  Index suffix = 0;
  for (std::size_t j = 1; j < size; ++j) suffix += binom(vertices[j], static_cast<int>(j));
  Index prefix = 0;
  for (std::size_t i = 0; i < size; ++i) {
    out[i] = prefix + suffix;
    prefix += binom(vertices[i], static_cast<int>(i) + 1);
    if (i + 1 < size) suffix -= binom(vertices[i + 1], static_cast<int>(i) + 1);
  }
}

}  // namespace lmph
