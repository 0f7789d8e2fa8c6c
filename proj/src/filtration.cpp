#include "lmph/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "lmph/errors.hpp"
#include "lmph/rng.hpp"

namespace lmph {

namespace {

void check_shape(int n, int k) {
  if (k < 1) throw InvalidParameters("k must be >= 1");
  if (n < k + 1) {
    throw InvalidParameters("n must be >= k+1 (got n=" + std::to_string(n) +
                            ", k=" + std::to_string(k) + ")");
  }
}

/// Calls fn(vertices) for every `size`-subset of {0..n-1} in colex order.
template <class Fn>
void for_each_subset(int n, int size, Fn&& fn) {
  std::vector<int> vertices(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) vertices[static_cast<std::size_t>(i)] = i;
  if (size > n) return;
  do {
    fn(std::span<const int>(vertices));
  } while (colex_next(vertices, n));
}

}  // namespace

Filtration::Filtration(int n, int k, std::uint64_t seed, std::vector<double> times)
    : n_(n), k_(k), seed_(seed), binom_(n, k + 1), top_times_(std::move(times)) {}

Filtration Filtration::sample(int n, int k, std::uint64_t seed) {
  check_shape(n, k);
  const Index count = binomial(n, k + 1);
  Rng rng = make_rng(seed, 0);
  std::vector<double> times(count);
  for (double& t : times) t = uniform_open01(rng) * n;
  // Ties have probability zero but are possible in floating point; redraw
  // every member of a tied group until all times are distinct.
  for (;;) {
    std::vector<std::pair<double, Index>> order(count);
    for (Index i = 0; i < count; ++i) order[i] = {times[i], i};
    std::sort(order.begin(), order.end());
    bool redrawn = false;
    for (Index i = 1; i < count; ++i) {
      if (order[i].first == order[i - 1].first) {
        times[order[i].second] = uniform_open01(rng) * n;
        redrawn = true;
      }
    }
    if (!redrawn) break;
  }
  return Filtration(n, k, seed, std::move(times));
}

Filtration Filtration::from_times(int n, int k, std::uint64_t seed, std::vector<double> top_times) {
  check_shape(n, k);
  if (top_times.size() != binomial(n, k + 1)) {
    throw InvalidParameters("from_times: expected C(n, k+1) times");
  }
  for (double t : top_times) {
    if (!(t >= 0.0 && t <= n)) throw InvalidParameters("from_times: times must lie in [0, n]");
  }
  std::vector<double> sorted(top_times);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidParameters("from_times: times must be pairwise distinct");
  }
  return Filtration(n, k, seed, std::move(top_times));
}

Face Filtration::face(int size, Index rank) const {
  if (size < 1 || size > k_ + 1) throw InvalidFace("face size out of range");
  if (rank >= binom_(n_, size)) throw InvalidFace("face rank out of range");
  std::vector<int> vertices(static_cast<std::size_t>(size));
  colex_unrank(rank, vertices, binom_);
  return Face::from_zero_based(vertices);
}

Index Filtration::rank_of(const Face& f) const {
  if (f.empty() || static_cast<int>(f.size()) > k_ + 1) {
    throw InvalidFace("face must have between 1 and k+1 vertices");
  }
  if (f.vertices().back() > n_) throw InvalidFace("face vertex exceeds n");
  const std::vector<int> zero = f.zero_based();
  return colex_rank(zero, binom_);
}

double Filtration::face_time(const Face& f) const {
  const Index rank = rank_of(f);  // validates
  const int size = static_cast<int>(f.size());
  if (size == k_ + 1) return top_times_[rank];
  // Enumerate the containing top faces: choose k+1-size extra vertices
  // from the complement and merge.
  std::vector<int> base = f.zero_based();
  std::vector<int> complement;
  for (int v = 0, j = 0; v < n_; ++v) {
    if (j < size && base[static_cast<std::size_t>(j)] == v) {
      ++j;
    } else {
      complement.push_back(v);
    }
  }
  const int extra = k_ + 1 - size;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> merged(static_cast<std::size_t>(k_ + 1));
  for_each_subset(static_cast<int>(complement.size()), extra, [&](std::span<const int> pick) {
    std::size_t a = 0;
    std::size_t b = 0;
    for (std::size_t out = 0; out < merged.size(); ++out) {
      const bool take_base =
          b >= pick.size() || (a < base.size() && base[a] < complement[static_cast<std::size_t>(pick[b])]);
      merged[out] = take_base ? base[a++] : complement[static_cast<std::size_t>(pick[b++])];
    }
    best = std::min(best, top_times_[colex_rank(merged, binom_)]);
  });
  return best;
}

std::vector<double> Filtration::face_times(int size) const {
  if (size < 1 || size > k_ + 1) throw InvalidParameters("face_times: size out of range");
  if (size == k_ + 1) return top_times_;
  std::vector<double> times(binom_(n_, size), std::numeric_limits<double>::infinity());
  std::vector<int> sub(static_cast<std::size_t>(size));
  Index top = 0;
  for_each_subset(n_, k_ + 1, [&](std::span<const int> vertices) {
    const double t = top_times_[top++];
    // Every size-subset of the top face, via index subsets of {0..k}.
    for_each_subset(k_ + 1, size, [&](std::span<const int> idx) {
      for (std::size_t i = 0; i < idx.size(); ++i) sub[i] = vertices[static_cast<std::size_t>(idx[i])];
      double& slot = times[colex_rank(sub, binom_)];
      slot = std::min(slot, t);
    });
  });
  return times;
}

Index Filtration::promoting_count() const {
  const std::vector<double> ridge_times = face_times(k_);
  std::vector<Index> facets(static_cast<std::size_t>(k_ + 1));
  Index count = 0;
  Index top = 0;
  for_each_subset(n_, k_ + 1, [&](std::span<const int> vertices) {
    const double t = top_times_[top++];
    facet_ranks(vertices, binom_, facets);
    // Times are distinct, so a facet is new exactly when this top face is
    // its earliest container.
    for (Index facet : facets) {
      if (ridge_times[facet] == t) {
        ++count;
        break;
      }
    }
  });
  return count;
}

std::vector<std::vector<Face>> complex_at(const Filtration& f, double t) {
  std::vector<std::vector<Face>> result(static_cast<std::size_t>(f.k() + 1));
  for (int size = 1; size <= f.k() + 1; ++size) {
    const std::vector<double> times = f.face_times(size);
    for (Index rank = 0; rank < times.size(); ++rank) {
      if (times[rank] <= t) result[static_cast<std::size_t>(size - 1)].push_back(f.face(size, rank));
    }
  }
  return result;
}

SparseSignMatrix coboundary_matrix(const Filtration& f, double s, std::optional<double> r) {
  if (r && !(*r < s)) throw InvalidWindow("coboundary_matrix: requires r < s");
  const int k = f.k();
  const BinomialTable& binom = f.binomials();
  const Index ridge_count = f.face_count(k);

  // Column selection: all (k-1)-faces, minus those present at time r.
  std::vector<std::uint32_t> col_pos(ridge_count);
  std::vector<Label> col_ids;
  {
    std::vector<double> ridge_times;
    if (r) ridge_times = f.face_times(k);
    for (Index c = 0; c < ridge_count; ++c) {
      if (r && ridge_times[c] <= *r) {
        col_pos[c] = UINT32_MAX;
      } else {
        col_pos[c] = static_cast<std::uint32_t>(col_ids.size());
        col_ids.push_back(c);
      }
    }
  }

  std::vector<Label> row_ids;
  std::vector<SignEntry> entries;
  std::vector<int> vertices(static_cast<std::size_t>(k + 1));
  for (int i = 0; i <= k; ++i) vertices[static_cast<std::size_t>(i)] = i;
  std::vector<Index> facets(static_cast<std::size_t>(k + 1));
  Index top = 0;
  do {
    const double t = f.top_times()[top];
    if (t <= s && !(r && t <= *r)) {
      const auto row = static_cast<std::uint32_t>(row_ids.size());
      row_ids.push_back(top);
      facet_ranks(vertices, binom, facets);
      for (int i = 0; i <= k; ++i) {
        const std::uint32_t col = col_pos[facets[static_cast<std::size_t>(i)]];
        if (col != UINT32_MAX) {
          entries.push_back({row, col, static_cast<std::int8_t>(i % 2 == 0 ? 1 : -1)});
        }
      }
    }
    ++top;
  } while (colex_next(vertices, f.n()));
  return SparseSignMatrix(std::move(row_ids), std::move(col_ids), std::move(entries));
}

SparseSignMatrix lower_boundary_matrix(const Filtration& f, double r) {
  const int k = f.k();
  const BinomialTable& binom = f.binomials();
  const std::vector<double> ridge_times = f.face_times(k);
  std::vector<Label> row_ids;
  std::vector<SignEntry> entries;
  const Index target_count = k == 1 ? 1 : f.face_count(k - 1);
  std::vector<Label> col_ids(target_count);
  for (Index c = 0; c < target_count; ++c) col_ids[c] = c;

  std::vector<int> vertices(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) vertices[static_cast<std::size_t>(i)] = i;
  std::vector<Index> facets(static_cast<std::size_t>(k));
  Index rank = 0;
  do {
    if (ridge_times[rank] <= r) {
      const auto row = static_cast<std::uint32_t>(row_ids.size());
      row_ids.push_back(rank);
      if (k == 1) {
        entries.push_back({row, 0, 1});
      } else {
        facet_ranks(vertices, binom, facets);
        for (int i = 0; i < k; ++i) {
          entries.push_back({row, static_cast<std::uint32_t>(facets[static_cast<std::size_t>(i)]),
                             static_cast<std::int8_t>(i % 2 == 0 ? 1 : -1)});
        }
      }
    }
    ++rank;
  } while (colex_next(vertices, f.n()));
  return SparseSignMatrix(std::move(row_ids), std::move(col_ids), std::move(entries));
}

void write_filtration(std::ostream& os, const Filtration& f) {
  os << f.n() << ' ' << f.k() << ' ' << f.seed() << '\n';
  std::vector<int> vertices(static_cast<std::size_t>(f.k() + 1));
  for (int i = 0; i <= f.k(); ++i) vertices[static_cast<std::size_t>(i)] = i;
  Index top = 0;
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  do {
    for (int v : vertices) os << v + 1 << ' ';
    os << f.top_times()[top++] << '\n';
  } while (colex_next(vertices, f.n()));
  os.precision(old_precision);
}

Filtration read_filtration(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("filtration file: missing header");
  std::istringstream header(line);
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  if (!(header >> n >> k >> seed)) throw ParseError("filtration file: header must be 'n k seed'");
  try {
    check_shape(n, k);
  } catch (const InvalidParameters& e) {
    throw ParseError(std::string("filtration file: ") + e.what());
  }
  const BinomialTable binom(n, k + 1);
  const Index count = binom(n, k + 1);
  std::vector<double> times(count, std::numeric_limits<double>::quiet_NaN());
  std::vector<bool> seen(count, false);
  std::vector<int> vertices(static_cast<std::size_t>(k + 1));
  Index read = 0;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    for (int& v : vertices) {
      if (!(fields >> v)) throw ParseError("filtration file: bad vertex list");
      if (v < 1 || v > n) throw ParseError("filtration file: vertex out of range");
      --v;
    }
    double t = 0;
    if (!(fields >> t)) throw ParseError("filtration file: missing time");
    if (!std::is_sorted(vertices.begin(), vertices.end()) ||
        std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
      throw ParseError("filtration file: vertices must be strictly increasing");
    }
    const Index rank = colex_rank(vertices, binom);
    if (seen[rank]) throw ParseError("filtration file: duplicate top face");
    seen[rank] = true;
    times[rank] = t;
    ++read;
  }
  if (read != count) throw ParseError("filtration file: expected C(n, k+1) top faces");
  try {
    return Filtration::from_times(n, k, seed, std::move(times));
  } catch (const InvalidParameters& e) {
    throw ParseError(std::string("filtration file: ") + e.what());
  }
}

}  // namespace lmph
