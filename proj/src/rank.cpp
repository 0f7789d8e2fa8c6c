#include "lmph/rank.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <string>

#include "lmph/errors.hpp"

namespace lmph {

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) noexcept {
  UInt128 result = 1;
  UInt128 b = base % mod;
  while (exp) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace

bool is_prime(std::uint64_t p) noexcept {
  if (p < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (p % small == 0) return p == small;
  }
  std::uint64_t d = p - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set for all 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, p);
    if (x == 1 || x == p - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<std::uint64_t>(static_cast<UInt128>(x) * x % p);
      if (x == p - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p <= 2 || p >= (std::uint64_t{1} << 62) || !is_prime(p)) {
    throw InvalidParameters("PrimeField: modulus must be an odd prime below 2^62");
  }
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw DomainError("PrimeField: inverse of zero");
  return pow_mod(a, p_ - 2, p_);
}

std::uint64_t PrimeField::from_int(std::int64_t v) const noexcept {
  const auto m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

EchelonBasis::EchelonBasis(std::uint64_t p, std::size_t dimension)
    : field_(p), pivot_of_(dimension, -1) {}

SparseVec sparse_axpy(const PrimeField& field, const SparseVec& a, std::uint64_t factor,
                      const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, field.neg(field.mul(factor, b[j].second)));
      ++j;
    } else {
      const std::uint64_t v = field.sub(a[i].second, field.mul(factor, b[j].second));
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec EchelonBasis::reduce(SparseVec v) const {
  while (!v.empty()) {
    const std::int64_t pivot = pivot_of_[v.front().first];
    if (pivot < 0) break;
    v = sparse_axpy(field_, v, v.front().second, rows_[static_cast<std::size_t>(pivot)]);
  }
  return v;
}

SparseVec EchelonBasis::reduce_fully(SparseVec v) const {
  SparseVec done;
  while (!v.empty()) {
    v = reduce(std::move(v));
    if (v.empty()) break;
    done.push_back(v.front());
    v.erase(v.begin());
  }
  return done;
}

bool EchelonBasis::insert(SparseVec v) {
  for (const auto& [coord, value] : v) {
    if (coord >= pivot_of_.size()) throw InvalidParameters("EchelonBasis: coordinate out of range");
    (void)value;
  }
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const std::uint64_t scale = field_.inv(v.front().second);
  for (auto& entry : v) entry.second = field_.mul(entry.second, scale);
  pivot_of_[v.front().first] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

SparseVec to_field_vector(const SignLine& line, const PrimeField& field) {
  SparseVec v;
  v.reserve(line.size());
  for (const auto& [pos, value] : line) v.emplace_back(pos, field.from_int(value));
  return v;
}

std::size_t rank_mod_p(const SparseSignMatrix& m, std::uint64_t p) {
  const PrimeField field(p);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0 || m.nnz() == 0) return 0;

  // Phase 1: singleton peeling. A column with exactly one live entry (or a
  // row with exactly one live entry) contributes one to the rank, and its row
  // and column can be deleted without touching any other value.
  const std::vector<SignLine> row_lines = m.row_lines();
  const std::vector<SignLine> col_lines = m.col_lines();
  std::vector<bool> row_alive(rows, true);
  std::vector<bool> col_alive(cols, true);
  std::vector<std::size_t> row_deg(rows);
  std::vector<std::size_t> col_deg(cols);
  for (std::size_t r = 0; r < rows; ++r) row_deg[r] = row_lines[r].size();
  for (std::size_t c = 0; c < cols; ++c) col_deg[c] = col_lines[c].size();

  std::size_t rank = 0;
  std::vector<std::uint32_t> col_stack;
  std::vector<std::uint32_t> row_stack;
  for (std::size_t c = 0; c < cols; ++c) if (col_deg[c] == 1) col_stack.push_back(static_cast<std::uint32_t>(c));
  for (std::size_t r = 0; r < rows; ++r) if (row_deg[r] == 1) row_stack.push_back(static_cast<std::uint32_t>(r));

  auto kill_row = [&](std::uint32_t r) {
    row_alive[r] = false;
    for (const auto& [c, v] : row_lines[r]) {
      if (col_alive[c] && --col_deg[c] == 1) col_stack.push_back(c);
    }
  };
  auto kill_col = [&](std::uint32_t c) {
    col_alive[c] = false;
    for (const auto& [r, v] : col_lines[c]) {
      if (row_alive[r] && --row_deg[r] == 1) row_stack.push_back(r);
    }
  };
  while (!col_stack.empty() || !row_stack.empty()) {
    if (!col_stack.empty()) {
      const std::uint32_t c = col_stack.back();
      col_stack.pop_back();
      if (!col_alive[c] || col_deg[c] != 1) continue;
      std::uint32_t partner = UINT32_MAX;
      for (const auto& [r, v] : col_lines[c]) if (row_alive[r]) partner = r;
      ++rank;
      kill_col(c);
      kill_row(partner);
    } else {
      const std::uint32_t r = row_stack.back();
      row_stack.pop_back();
      if (!row_alive[r] || row_deg[r] != 1) continue;
      std::uint32_t partner = UINT32_MAX;
      for (const auto& [c, v] : row_lines[r]) if (col_alive[c]) partner = c;
      ++rank;
      kill_row(r);
      kill_col(partner);
    }
  }

  // Phase 2: sparse elimination on the remaining core. Columns are relabeled
  // in order of increasing degree so that leading coordinates favour sparse
  // columns; rows are inserted sparsest first.
  std::vector<std::uint32_t> live_cols;
  for (std::size_t c = 0; c < cols; ++c) if (col_alive[c] && col_deg[c] > 0) live_cols.push_back(static_cast<std::uint32_t>(c));
  if (live_cols.empty()) return rank;
  std::stable_sort(live_cols.begin(), live_cols.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return col_deg[a] < col_deg[b]; });
  std::vector<std::uint32_t> relabel(cols, UINT32_MAX);
  for (std::size_t i = 0; i < live_cols.size(); ++i) relabel[live_cols[i]] = static_cast<std::uint32_t>(i);

  std::vector<std::uint32_t> live_rows;
  for (std::size_t r = 0; r < rows; ++r) if (row_alive[r] && row_deg[r] > 0) live_rows.push_back(static_cast<std::uint32_t>(r));
  std::stable_sort(live_rows.begin(), live_rows.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return row_deg[a] < row_deg[b]; });

  EchelonBasis basis(p, live_cols.size());
  for (std::uint32_t r : live_rows) {
    SparseVec v;
    for (const auto& [c, value] : row_lines[r]) {
      if (relabel[c] != UINT32_MAX) v.emplace_back(relabel[c], field.from_int(value));
    }
    std::sort(v.begin(), v.end());
    if (basis.insert(std::move(v))) ++rank;
    if (basis.rank() == live_cols.size()) break;
  }
  return rank;
}

std::size_t rank_exact_small(const SparseSignMatrix& m) {
  using boost::multiprecision::cpp_rational;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (std::min(rows, cols) > kRationalOracleLimit) {
    throw OracleScaleError("rank_exact_small: min(rows, cols) = " +
                           std::to_string(std::min(rows, cols)) + " exceeds oracle limit " +
                           std::to_string(kRationalOracleLimit));
  }
  // Eliminate along the short side to bound the work.
  const bool transpose = rows > cols;
  const std::size_t R = transpose ? cols : rows;
  const std::size_t C = transpose ? rows : cols;
  std::vector<std::vector<cpp_rational>> a(R, std::vector<cpp_rational>(C, 0));
  for (const SignEntry& e : m.entries()) {
    if (transpose) {
      a[e.col][e.row] = e.value;
    } else {
      a[e.row][e.col] = e.value;
    }
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < C && rank < R; ++col) {
    std::size_t pivot = rank;
    while (pivot < R && a[pivot][col] == 0) ++pivot;
    if (pivot == R) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < R; ++r) {
      if (a[r][col] == 0) continue;
      const cpp_rational factor = a[r][col] / a[rank][col];
      for (std::size_t c = col; c < C; ++c) {
        if (a[rank][c] != 0) a[r][c] -= factor * a[rank][c];
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_checked(const SparseSignMatrix& m) {
  const std::size_t primary = rank_mod_p(m, kPrimaryPrime);
  const std::size_t confirm = rank_mod_p(m, kConfirmPrime);
  if (primary != confirm) {
    throw InvariantViolation("rank disagreement between primes: " + std::to_string(primary) +
                             " (mod 2^61-1) vs " + std::to_string(confirm) + " (mod 2^31-1) on a " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  }
  return primary;
}

}  // namespace lmph
